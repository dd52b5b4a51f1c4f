#ifndef EITGAP_TEST_ORACLES_HPP
#define EITGAP_TEST_ORACLES_HPP

// Independent reference implementations used only by the test suite.

#include <array>
#include <cmath>
#include <vector>

#include "eitgap/atomic.hpp"
#include "eitgap/cme.hpp"

namespace oracles {

using eitgap::cd;

// Steady-state amplitude equations of the five-level chain, solved as a
// 4x4 complex linear system for (c2, c3, c4, c5) with c1 = 1.  The probe
// susceptibility is K0 * c3 / Omega_p; independent of the brute-force
// elimination used in the library formula.
inline cd five_level_chi(const eitgap::AtomicParams& a, const eitgap::FieldParams& f) {
    const auto t = eitgap::tilded_detunings(a, f);
    const double Omega_p = 1.0e-3;  // cancels in c3 / Omega_p
    const double Oc = f.Omega_c;
    const double Opp = f.Omega_p_prime;
    const double Os = std::sqrt(f.Omega_s_sq);

    // unknowns x = (c2, c3, c4, c5); equations:
    //   delta~ c2 + (Oc/2) c3 + (Opp/2) c4 + (Os/2) c5 = 0
    //   (Oc/2) c2 + Delta~ c3                          = -Omega_p/2
    //   (Opp/2) c2 + Delta42~ c4                       = 0
    //   (Os/2) c2 + Delta52~ c5                        = 0
    std::array<std::array<cd, 5>, 4> m{{
        {t.delta, Oc / 2.0, Opp / 2.0, Os / 2.0, 0.0},
        {Oc / 2.0, t.Delta, 0.0, 0.0, -Omega_p / 2.0},
        {Opp / 2.0, 0.0, t.Delta42, 0.0, 0.0},
        {Os / 2.0, 0.0, 0.0, t.Delta52, 0.0},
    }};
    for (int col = 0; col < 4; ++col) {  // partial-pivot Gaussian elimination
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        for (int r = col + 1; r < 4; ++r) {
            const cd q = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) m[r][c] -= q * m[col][c];
        }
    }
    std::array<cd, 4> x{};
    for (int r = 3; r >= 0; --r) {
        cd s = m[r][4];
        for (int c = r + 1; c < 4; ++c) s -= m[r][c] * x[c];
        x[r] = s / m[r][r];
    }
    const cd c3 = x[1];
    return (a.K0() / a.gamma_a) * c3 / Omega_p;
}

// Max CME residual of a candidate solution A±(z, t), normalized by
// |kappa| * max|A|.  Fourth-order central differences on a fine grid.
// Checks  dz A+ + vg^-1 dt A+ - i k A- - i g (|A+|^2 + 2|A-|^2) A+  and the
// mirror equation with dz -> -dz, using the lossless real parts of coeffs.
template <typename FieldFn>
double cme_residual(const eitgap::CmeCoefficients& co, FieldFn field, double z_half_span,
                    int n = 201) {
    const double k = co.kappa.real();
    const double g = co.gamma_nl.real();
    const double vg = co.v_g;
    const double h = 2.0 * z_half_span / (n - 1);
    const double ht = h / vg;
    const cd i(0.0, 1.0);

    auto d4 = [](const std::array<cd, 5>& s, double step) {
        return (-s[4] + 8.0 * s[3] - 8.0 * s[1] + s[0]) / (12.0 * step);
    };

    double max_res = 0.0, max_amp = 0.0;
    for (int iz = 2; iz < n - 2; ++iz) {
        const double z = -z_half_span + iz * h;
        for (double t : {-0.3 * z_half_span / vg, 0.0, 0.5 * z_half_span / vg}) {
            std::array<cd, 5> pz, mz, pt, mt;
            for (int s = -2; s <= 2; ++s) {
                auto [pzp, pzm] = field(z + s * h, t);
                pz[s + 2] = pzp;
                mz[s + 2] = pzm;
                auto [ptp, ptm] = field(z, t + s * ht);
                pt[s + 2] = ptp;
                mt[s + 2] = ptm;
            }
            const auto [ap, am] = field(z, t);
            const cd res_p = d4(pz, h) + d4(pt, ht) / vg - i * k * am -
                             i * g * (std::norm(ap) + 2.0 * std::norm(am)) * ap;
            const cd res_m = -d4(mz, h) + d4(mt, ht) / vg - i * k * ap -
                             i * g * (std::norm(am) + 2.0 * std::norm(ap)) * am;
            max_res = std::max({max_res, std::abs(res_p), std::abs(res_m)});
            max_amp = std::max({max_amp, std::abs(ap), std::abs(am)});
        }
    }
    return max_res / (std::abs(k) * max_amp);
}

// Two-mode coupled-wave reference results for a uniform-kappa grating.
inline double two_mode_reflectance(double kappa_abs, double L) {
    return std::tanh(kappa_abs * L) * std::tanh(kappa_abs * L);
}

inline double two_mode_gap_width(double v_g, double kappa_abs) { return 2.0 * v_g * kappa_abs; }

} // namespace oracles

#endif
