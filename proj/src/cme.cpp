#include "eitgap/cme.hpp"

#include <cmath>

namespace eitgap {

namespace {

// d f / d Delta1 (gamma_a units) by central difference with one Richardson level.
cd richardson_derivative(const GratingSpec& g, cd (GratingSpec::*eval)(double) const,
                         double Delta1, double h) {
    const cd d1 = ((g.*eval)(Delta1 + h) - (g.*eval)(Delta1 - h)) / (2.0 * h);
    const cd d2 = ((g.*eval)(Delta1 + 0.5 * h) - (g.*eval)(Delta1 - 0.5 * h)) / h;
    const cd r = (4.0 * d2 - d1) / 3.0;
    if (std::abs(r - d2) > 1.0e-3 * std::abs(r))
        throw DerivativeNonConvergent("susceptibility derivative did not converge");
    return r;
}

} // namespace

CmeCoefficients derive_coefficients(const AtomicParams& atomic, const FieldParams& fields,
                                    const GratingSpec& grating, double A_eff) {
    if (A_eff <= 0.0) throw InvalidParams("A_eff must be > 0");

    const double Delta1 = fields.Delta1;
    const double ga = atomic.gamma_a;
    const double omega_p = atomic.omega_p0() + Delta1 * ga;

    CmeCoefficients c;
    c.gamma_a = ga;
    c.omega_p = omega_p;
    c.A_eff = A_eff;

    const cd chi_bar = grating.chi_bar_at(Delta1);
    c.n_bar = std::sqrt(cd(1.0) + chi_bar).real();

    const double h = 0.02;
    const cd dchibar = richardson_derivative(grating, &GratingSpec::chi_bar_at, Delta1, h);
    const cd ddeltachi = grating.frequency_dependent
                             ? richardson_derivative(grating, &GratingSpec::delta_chi_at, Delta1, h)
                             : cd(0.0);
    const cd dchi3 = grating.frequency_dependent
                         ? richardson_derivative(grating, &GratingSpec::chi3_at, Delta1, h)
                         : cd(0.0);
    const double dchibar_domega = dchibar.real() / ga;

    c.v_g = 1.0 / (c.n_bar / c_light + omega_p / (2.0 * c.n_bar * c_light) * dchibar_domega);
    if (!(c.v_g > 0.0 && c.v_g < c_light))
        throw InvalidParams("group velocity outside (0, c)");

    const cd delta_chi = grating.delta_chi_at(Delta1);
    const cd chi3 = grating.chi3_at(Delta1);
    c.kappa = delta_chi * omega_p / (4.0 * c.n_bar * c_light);
    c.gamma_field = omega_p / (2.0 * c.n_bar * c_light) * chi3;
    c.gamma_nl = c.gamma_field * 2.0 / (c.n_bar * eps0 * c_light * A_eff);

    const double k_p = c.n_bar * omega_p / c_light;
    c.delta_k = k_p - grating.k_B;

    c.ordering_chi_bar_ok = std::abs(delta_chi) > std::abs(dchibar);
    c.ordering_delta_chi_ok = std::abs(dchibar) > std::abs(ddeltachi);
    c.ordering_chi3_ok = std::abs(chi3) > std::abs(dchi3);
    return c;
}

double calibrate_k0_scale(AtomicParams atomic, const FieldParams& fields,
                          double L, double target_re_kappa) {
    // kappa is linear in K0 up to the n_bar / v_g feedback, so fixed-point
    // iteration converges quickly but needs more than a couple of steps.
    for (int it = 0; it < 64; ++it) {
        const auto g = build_grating(atomic, fields, L);
        const auto c = derive_coefficients(atomic, fields, g, 1.0e-8);
        const double ratio = target_re_kappa / c.kappa.real();
        atomic.k0_scale *= ratio;
        if (std::abs(ratio - 1.0) < 1.0e-13) return atomic.k0_scale;
    }
    throw NonConvergent("k0_scale calibration did not converge");
}

void SolitonParams::validate() const {
    if (!(nu > -1.0 && nu < 1.0)) throw InvalidParams("nu must be in (-1, 1)");
    if (!(psi > 0.0 && psi < pi)) throw InvalidParams("psi must be in (0, pi)");
}

std::pair<cd, cd> analytic_soliton(const CmeCoefficients& coeffs, const SolitonParams& sp,
                                   double z, double t, SolitonVariant variant) {
    sp.validate();
    const double kr = coeffs.kappa.real();
    const double gr = coeffs.gamma_nl.real();
    if (kr == 0.0 || gr == 0.0 || kr * gr < 0.0)
        throw InvalidSolitonRegime("soliton family requires Re(kappa)/Re(gamma) > 0");

    // For kappa, gamma < 0 the conjugate of the positive-parameter solution
    // solves the equations; conjugate on output.
    const bool conjugate = kr < 0.0;
    const double kappa = std::abs(kr);
    const double gamma = std::abs(gr);
    const double nu = sp.nu, psi = sp.psi;
    const double gl = 1.0 / std::sqrt(1.0 - nu * nu);
    const double vg = coeffs.v_g;

    const double pref = (variant == SolitonVariant::two_minus_nu_sq) ? (2.0 - nu * nu)
                                                                     : (3.0 - nu * nu);
    const double amp = std::sqrt(kappa * (1.0 - nu * nu) / (gamma * pref)) * std::sin(psi);
    const double ap = std::pow((1.0 + nu) / (1.0 - nu), 0.25) * amp;
    const double am = -std::pow((1.0 - nu) / (1.0 + nu), 0.25) * amp;

    const double zeta = kappa * std::sin(psi) * gl * (z - nu * vg * t);
    double at = std::atan(1.0 / std::tan(psi / 2.0) / std::tanh(zeta));
    if (zeta < 0.0) at += pi;  // continuity-in-zeta branch across zeta = 0
    const double theta = kappa * std::cos(psi) * gl * (nu * z - vg * t) -
                         4.0 * nu / (3.0 - nu * nu) * at;

    const cd half_i(0.0, 0.5 * psi);
    const cd phase = std::exp(cd(0.0, theta));
    cd Ap = ap / std::cosh(cd(zeta) - half_i) * phase;
    cd Am = am / std::cosh(cd(zeta) + half_i) * phase;
    if (conjugate) {
        Ap = std::conj(Ap);
        Am = std::conj(Am);
    }
    return {Ap, Am};
}

LinearDispersion linear_dispersion(const CmeCoefficients& coeffs, double delta_omega) {
    const double k2 = coeffs.kappa.real() * coeffs.kappa.real();
    const double d2 = delta_omega * delta_omega;
    if (d2 <= k2) throw InsideGap("delta_omega inside the photonic band gap");
    LinearDispersion out;
    out.V_g = coeffs.v_g * std::sqrt(1.0 - k2 / d2);
    const double sgn = (delta_omega > 0.0) ? 1.0 : -1.0;
    out.beta2 = -sgn * (k2 / (coeffs.v_g * coeffs.v_g)) / std::pow(d2 - k2, 1.5);
    return out;
}

double gap_width_cme(const CmeCoefficients& coeffs) {
    return 2.0 * std::abs(coeffs.v_g * coeffs.kappa.real());
}

} // namespace eitgap
