#ifndef EITGAP_GRATING_HPP
#define EITGAP_GRATING_HPP

#include <complex>

#include "eitgap/atomic.hpp"

namespace eitgap {

// Spatially periodic complex index profile induced by the standing-wave
// control field:  n^2(z) = 1 + chi_bar + delta_chi cos(2 k_B z) + chi3 |E_p|^2.
struct GratingSpec {
    cd chi_bar{};    // mean susceptibility at the build detuning
    cd delta_chi{};  // modulation amplitude
    cd chi3{};       // Kerr coefficient, (V/m)^-2
    double k_B = 0.0;  // Bragg wavevector, 1/m
    double L = 0.0;    // sample length, m
    int slabs_per_period = 64;

    // When true chi_bar/delta_chi are re-evaluated from (atomic, fields) at
    // every probe detuning; synthetic gratings keep the stored constants.
    bool frequency_dependent = true;
    AtomicParams atomic{};
    FieldParams fields{};

    double period() const { return pi / k_B; }
    double n_bar() const { return std::sqrt(cd(1.0) + chi_bar).real(); }

    cd chi_bar_at(double Delta1) const;
    cd delta_chi_at(double Delta1) const;
    cd chi3_at(double Delta1) const;
};

// Build the grating from the medium.  k_B <= 0 requests Bragg matching
// k_B = n_bar * omega_p0 / c.  fields.Omega_1 is the standing-wave peak.
GratingSpec build_grating(const AtomicParams& atomic, const FieldParams& fields,
                          double L, double k_B = 0.0);

// Frequency-independent grating for synthetic tests and benchmarks.
GratingSpec synthetic_grating(cd chi_bar, cd delta_chi, double k_B, double L,
                              int slabs_per_period = 64);

// Angle between the standing wave and the probe satisfying k_s cos(phi) = k_B.
double bragg_angle(double k_s, double k_B);

} // namespace eitgap

#endif
