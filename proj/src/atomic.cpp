#include "eitgap/atomic.hpp"

#include <algorithm>
#include <cmath>

namespace eitgap {

void AtomicParams::validate() const {
    if (gamma_a <= 0.0) throw InvalidParams("gamma_a must be > 0");
    if (Gamma2 < 0.0 || Gamma3 < 0.0 || Gamma4 < 0.0 || Gamma5 < 0.0)
        throw InvalidParams("decay rates must be >= 0");
    if (Gamma2 + Gamma3 + Gamma4 + Gamma5 == 0.0)
        throw InvalidParams("all decay rates zero");
    if (mu13 <= 0.0) throw InvalidParams("mu13 must be > 0");
    if (mu24 < 0.0) throw InvalidParams("mu24 must be >= 0");
    if (rho <= 0.0) throw InvalidParams("atomic density must be > 0");
    if (lambda_p <= 0.0) throw InvalidParams("probe wavelength must be > 0");
    if (k0_scale <= 0.0) throw InvalidParams("k0_scale must be > 0");
}

bool FieldParams::weak_probe(const AtomicParams& a) const {
    return Omega_p_prime < 0.1 * std::min(a.Gamma3, Omega_c);
}

void FieldParams::validate() const {
    if (Omega_c <= 0.0) throw InvalidParams("Omega_c must be > 0");
    if (Omega_1 < 0.0) throw InvalidParams("Omega_1 must be >= 0");
    if (Omega_p_prime < 0.0) throw InvalidParams("Omega_p_prime must be >= 0");
    if (Omega_s_sq < 0.0) throw InvalidParams("Omega_s_sq must be >= 0");
}

TildedDetunings tilded_detunings(const AtomicParams& a, const FieldParams& f) {
    const cd ih(0.0, 0.5);
    TildedDetunings t;
    t.delta = f.Delta1 - f.Delta2 + ih * a.Gamma2;
    t.Delta = f.Delta1 + ih * a.Gamma3;
    t.Delta42 = f.Delta1 - f.Delta2 + f.Delta4 + ih * a.Gamma4;
    t.Delta52 = f.Delta1 - f.Delta2 + f.Delta5 + ih * a.Gamma5;
    return t;
}

static void check_denominator(const cd& den) {
    if (std::abs(den) < denominator_floor)
        throw DenominatorUnderflow("susceptibility denominator below floor");
}

ComplexChi susceptibility_full(const AtomicParams& a, const FieldParams& f) {
    a.validate();
    f.validate();
    const auto t = tilded_detunings(a, f);
    const double Oc2 = f.Omega_c * f.Omega_c;
    const double Op2 = f.Omega_p_prime * f.Omega_p_prime;
    const double Os2 = f.Omega_s_sq;
    const cd num = -4.0 * t.delta * t.Delta42 * t.Delta52 + t.Delta42 * Os2 + t.Delta52 * Op2;
    const cd den = 4.0 * t.delta * t.Delta * t.Delta42 * t.Delta52 - t.Delta * t.Delta52 * Op2 -
                   t.Delta * t.Delta42 * Os2 - t.Delta42 * t.Delta52 * Oc2;
    check_denominator(den);
    return {(a.K0() / a.gamma_a) * 0.5 * num / den, ChiKind::full};
}

ComplexChi chi_a(const AtomicParams& a, const FieldParams& f) {
    a.validate();
    f.validate();
    const auto t = tilded_detunings(a, f);
    const double Oc2 = f.Omega_c * f.Omega_c;
    const cd num = -4.0 * t.delta * t.Delta52 + f.Omega_s_sq;
    const cd den = 4.0 * t.delta * t.Delta * t.Delta52 - t.Delta52 * Oc2;
    check_denominator(den);
    return {(a.K0() / a.gamma_a) * 0.5 * num / den, ChiKind::chi_a};
}

ComplexChi chi3_self(const AtomicParams& a, const FieldParams& f) {
    a.validate();
    f.validate();
    const auto t = tilded_detunings(a, f);
    const double Oc2 = f.Omega_c * f.Omega_c;
    const cd den = 4.0 * t.delta * t.Delta * t.Delta42 - t.Delta42 * Oc2;
    check_denominator(den);
    const double ga = a.gamma_a;
    // K1 / gamma_a^3 carries the (V/m)^-2 field units.
    return {(a.K1() / (ga * ga * ga)) * 0.5 / den, ChiKind::chi3_self};
}

double transparency_window(const AtomicParams& a, double Omega_c_units, double L) {
    a.validate();
    if (L <= 0.0) throw NonPositiveLength("sample length must be > 0");
    const double sigma = 3.0 * a.lambda_p * a.lambda_p / (2.0 * pi);
    const double od = a.rho * sigma * L;
    const double ratio = (Omega_c_units * Omega_c_units) / (a.Gamma3 * a.Gamma3);
    return ratio / std::sqrt(od) * a.gamma_a;
}

} // namespace eitgap
