#ifndef EITGAP_DESIGN_HPP
#define EITGAP_DESIGN_HPP

#include <string>
#include <vector>

#include "eitgap/cme.hpp"
#include "eitgap/exec.hpp"

namespace eitgap {

struct DesignPoint {
    double T0;     // s
    double nu;
    double N_s;
    double z0;     // m
    double P_in;   // W
    bool feasible;
};

struct Constraints {
    double P_c;                  // coupling-laser power, W
    double L;                    // sample length, m
    double power_margin = 10.0;  // P_in <= P_c / power_margin
    double min_T_factor = 10.0;  // T_FWHM >= min_T_factor / Delta_nu
    void validate() const;
};

inline constexpr double fwhm_factor = 1.76;  // T_FWHM = 1.76 T0

double soliton_order(const CmeCoefficients& coeffs, double T0, double nu, double P0,
                     SolitonVariant variant = default_soliton_variant);
double soliton_period(const CmeCoefficients& coeffs, double T0, double nu);
double input_power(const CmeCoefficients& coeffs, double T0, double nu);

struct NuInterval {
    double lo, hi;
    std::string binding_lo, binding_hi;  // constraint active at each endpoint
};

// Maximal feasible nu intervals in (1e-5, 0.99) under the power and length
// constraints, with bisection-refined endpoints (1e-3 relative).
// An empty result is a valid outcome (no feasible region).
std::vector<NuInterval> workable_region(const CmeCoefficients& coeffs, double T0,
                                        const Constraints& cons);

// Dense (nu, P_in, z0, feasible) samples for export.
std::vector<DesignPoint> design_map(const CmeCoefficients& coeffs, double T0,
                                    const Constraints& cons, int points_per_decade = 200,
                                    ExecutionPolicy policy = ExecutionPolicy::parallel);

} // namespace eitgap

#endif
