#ifndef EITGAP_CONSTANTS_HPP
#define EITGAP_CONSTANTS_HPP

namespace eitgap {

// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double eps0 = 8.8541878128e-12;    // F/m
inline constexpr double c_light = 2.99792458e8;     // m/s
inline constexpr double pi = 3.14159265358979323846;

} // namespace eitgap

#endif
