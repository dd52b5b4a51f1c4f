#ifndef EITGAP_ATOMIC_HPP
#define EITGAP_ATOMIC_HPP

#include <complex>

#include "eitgap/constants.hpp"
#include "eitgap/errors.hpp"

namespace eitgap {

using cd = std::complex<double>;

// Atomic constants of the five-level medium.  All decay rates are stored as
// multiples of the reference rate gamma_a; dipole moments, density and
// wavelength are SI.
struct AtomicParams {
    double gamma_a = 2.0 * pi * 6.0e6; // reference rate, rad/s
    double Gamma2 = 0.01;              // ground-coherence relaxation, gamma_a units
    double Gamma3 = 1.0;
    double Gamma4 = 1.0;
    double Gamma5 = 1.0;
    double mu13 = 2.5e-29;             // C m
    double mu24 = 2.5e-29;             // C m
    double rho = 1.0e18;               // atoms / m^3
    double lambda_p = 795.0e-9;        // probe vacuum wavelength, m
    double k0_scale = 1.0;             // calibration factor on K0 and K1

    // Coupling constants, recomputed on every call.
    double K0() const { return k0_scale * rho * mu13 * mu13 / (hbar * eps0); } // rad/s
    double K1() const { return K0() * (mu24 / hbar) * (mu24 / hbar); }         // rad/s (V/m)^-2 * (rad/s)^2

    double omega_p0() const { return 2.0 * pi * c_light / lambda_p; } // carrier at Delta1 = 0

    void validate() const;
};

// Laser detunings and Rabi frequencies, in gamma_a units (angular).
struct FieldParams {
    double Delta1 = 0.0;
    double Delta2 = 0.0;
    double Delta4 = 5.0;
    double Delta5 = 20.0;
    double Omega_c = 10.0;
    double Omega_1 = 10.0;        // standing-wave peak Rabi frequency
    double Omega_p_prime = 0.0;
    double Omega_s_sq = 0.0;      // local |Omega_s|^2, gamma_a^2 units

    bool weak_probe(const AtomicParams& a) const;
    void validate() const;
};

enum class ChiKind { full, chi_a, chi3_self };

struct ComplexChi {
    cd value{};       // dimensionless, except chi3_self: (V/m)^-2
    ChiKind kind = ChiKind::full;
};

// Complex tilded detunings (gamma_a units), each with +i Gamma/2.
struct TildedDetunings {
    cd delta;    // Delta1 - Delta2 + i Gamma2/2
    cd Delta;    // Delta1 + i Gamma3/2
    cd Delta42;  // Delta1 - Delta2 + Delta4 + i Gamma4/2
    cd Delta52;  // Delta1 - Delta2 + Delta5 + i Gamma5/2
};

TildedDetunings tilded_detunings(const AtomicParams& a, const FieldParams& f);

// Magnitude floor below which a susceptibility denominator is rejected.
inline constexpr double denominator_floor = 1.0e-30;

ComplexChi susceptibility_full(const AtomicParams& a, const FieldParams& f);
ComplexChi chi_a(const AtomicParams& a, const FieldParams& f);
ComplexChi chi3_self(const AtomicParams& a, const FieldParams& f);

// EIT transparency-window width, rad/s.  Omega_c_units in gamma_a units,
// L in metres.
double transparency_window(const AtomicParams& a, double Omega_c_units, double L);

} // namespace eitgap

#endif
