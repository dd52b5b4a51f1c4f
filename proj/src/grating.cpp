#include "eitgap/grating.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace eitgap {

static cd delta_chi_formula(const AtomicParams& a, const FieldParams& f) {
    const auto t = tilded_detunings(a, f);
    const cd den = 4.0 * t.delta * t.Delta * t.Delta52 - t.Delta52 * (f.Omega_c * f.Omega_c);
    if (std::abs(den) < denominator_floor)
        throw DenominatorUnderflow("delta_chi denominator below floor");
    return (a.K0() / a.gamma_a) * 0.25 * (f.Omega_1 * f.Omega_1) / den;
}

cd GratingSpec::chi_bar_at(double Delta1) const {
    if (!frequency_dependent) return chi_bar;
    FieldParams f = fields;
    f.Delta1 = Delta1;
    f.Omega_s_sq = 0.5 * fields.Omega_1 * fields.Omega_1;
    return chi_a(atomic, f).value;
}

cd GratingSpec::delta_chi_at(double Delta1) const {
    if (!frequency_dependent) return delta_chi;
    FieldParams f = fields;
    f.Delta1 = Delta1;
    return delta_chi_formula(atomic, f);
}

cd GratingSpec::chi3_at(double Delta1) const {
    if (!frequency_dependent) return chi3;
    FieldParams f = fields;
    f.Delta1 = Delta1;
    return chi3_self(atomic, f).value;
}

GratingSpec build_grating(const AtomicParams& atomic, const FieldParams& fields,
                          double L, double k_B) {
    atomic.validate();
    fields.validate();
    if (L <= 0.0) throw NonPositiveLength("grating length must be > 0");

    GratingSpec g;
    g.atomic = atomic;
    g.fields = fields;
    g.L = L;
    g.frequency_dependent = true;

    FieldParams mean = fields;
    mean.Omega_s_sq = 0.5 * fields.Omega_1 * fields.Omega_1;
    g.chi_bar = chi_a(atomic, mean).value;
    g.delta_chi = delta_chi_formula(atomic, fields);
    g.chi3 = chi3_self(atomic, fields).value;

    g.k_B = (k_B > 0.0) ? k_B : g.n_bar() * atomic.omega_p0() / c_light;

    if (g.n_bar() < 1.0 - 1.0e-3)
        throw InvalidParams("background index below dilute-medium bound");
    if (g.L / g.period() < 10.0)
        std::fprintf(stderr, "eitgap: warning: grating has fewer than 10 periods (L/d = %.2f)\n",
                     g.L / g.period());
    return g;
}

GratingSpec synthetic_grating(cd chi_bar, cd delta_chi, double k_B, double L,
                              int slabs_per_period) {
    if (L <= 0.0) throw NonPositiveLength("grating length must be > 0");
    if (k_B <= 0.0) throw InvalidParams("k_B must be > 0");
    GratingSpec g;
    g.chi_bar = chi_bar;
    g.delta_chi = delta_chi;
    g.chi3 = 0.0;
    g.k_B = k_B;
    g.L = L;
    g.slabs_per_period = slabs_per_period;
    g.frequency_dependent = false;
    return g;
}

double bragg_angle(double k_s, double k_B) {
    if (k_B <= 0.0 || k_s <= 0.0) throw InvalidParams("wavevectors must be > 0");
    if (k_s < k_B)
        throw GeometryInfeasible("control wavevector k_s = " + std::to_string(k_s) +
                                 " 1/m smaller than Bragg wavevector k_B = " +
                                 std::to_string(k_B) + " 1/m");
    return std::acos(k_B / k_s);
}

} // namespace eitgap
