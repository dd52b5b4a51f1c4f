#ifndef EITGAP_CME_HPP
#define EITGAP_CME_HPP

#include <utility>

#include "eitgap/grating.hpp"

namespace eitgap {

// Everything the coupled-mode envelope equations need.
struct CmeCoefficients {
    double v_g = 0.0;       // group velocity without the grating, m/s
    cd kappa{};             // coupling constant, 1/m (Im part = coupling loss)
    cd gamma_field{};       // nonlinear coefficient, (V/m)^-2 m^-1
    cd gamma_nl{};          // power convention, 1/(W m), via A_eff
    double delta_k = 0.0;   // k_p - k_B, 1/m
    double n_bar = 1.0;
    double A_eff = 0.0;     // m^2
    double omega_p = 0.0;   // rad/s
    double gamma_a = 0.0;   // rad/s, carried for unit conversions

    // Ordering assumptions behind the coupled-mode reduction, evaluated at
    // derivation time: |dchi| >> gamma_a d(chi_bar)/domega >> gamma_a d(dchi)/domega,
    // and chi3 >> gamma_a d(chi3)/domega.
    bool ordering_chi_bar_ok = false;
    bool ordering_delta_chi_ok = false;
    bool ordering_chi3_ok = false;
};

CmeCoefficients derive_coefficients(const AtomicParams& atomic, const FieldParams& fields,
                                    const GratingSpec& grating, double A_eff);

// Scalar k0_scale making Re(kappa) equal to target_re_kappa for this medium.
double calibrate_k0_scale(AtomicParams atomic, const FieldParams& fields,
                          double L, double target_re_kappa);

struct SolitonParams {
    double nu;   // velocity parameter, -1 < nu < 1
    double psi;  // shape parameter, 0 < psi < pi
    void validate() const;
};

// The (3 - nu^2) amplitude prefactor satisfies the coupled-mode equations;
// the (2 - nu^2) one is kept selectable for the residual-oracle comparison.
enum class SolitonVariant { two_minus_nu_sq, three_minus_nu_sq };
inline constexpr SolitonVariant default_soliton_variant = SolitonVariant::three_minus_nu_sq;

// Closed-form two-parameter Bragg-soliton family, power-convention envelopes
// (sqrt(W)).  Loss parts of kappa/gamma are ignored (lossless solution).
std::pair<cd, cd> analytic_soliton(const CmeCoefficients& coeffs, const SolitonParams& sp,
                                   double z, double t,
                                   SolitonVariant variant = default_soliton_variant);

struct LinearDispersion {
    double V_g;    // m/s
    double beta2;  // s^2/m
};

// Out-of-gap group velocity and GVD; delta_omega = (omega - omega_p)/v_g, 1/m.
LinearDispersion linear_dispersion(const CmeCoefficients& coeffs, double delta_omega);

// Band-gap width 2 |v_g Re(kappa)|, rad/s.
double gap_width_cme(const CmeCoefficients& coeffs);

} // namespace eitgap

#endif
