#include "eitgap/propagator.hpp"

#include <algorithm>
#include <cmath>

namespace eitgap {

void EnvelopeState::validate() const {
    if (z_grid.size() < 2) throw InvalidParams("envelope grid too small");
    if (A_plus.size() != z_grid.size() || A_minus.size() != z_grid.size())
        throw InvalidParams("envelope arrays must match the grid");
    const double h = z_grid[1] - z_grid[0];
    for (std::size_t i = 1; i < z_grid.size(); ++i)
        if (std::abs(z_grid[i] - z_grid[i - 1] - h) > 1.0e-9 * h)
            throw InvalidParams("envelope grid must be uniform");
    double p = 0.0;
    for (std::size_t i = 0; i < A_plus.size(); ++i)
        p += std::norm(A_plus[i]) + std::norm(A_minus[i]);
    if (!std::isfinite(p)) throw InvalidParams("non-finite envelope power");
}

PropagationGrid make_grid(double z_min, double z_max, int n_z, double t_end,
                          double v_g, int snapshot_stride) {
    if (n_z < 256) throw InvalidParams("n_z must be >= 256");
    if (z_max <= z_min) throw InvalidParams("z_max must exceed z_min");
    if (t_end <= 0.0) throw InvalidParams("t_end must be > 0");
    PropagationGrid g;
    g.z_min = z_min;
    g.z_max = z_max;
    g.n_z = n_z;
    g.t_end = t_end;
    g.snapshot_stride = std::max(1, snapshot_stride);
    g.dt = g.dz() / v_g;
    return g;
}

namespace {

cd pulse_value(const InjectedPulse& p, double t) {
    const double u = (t - p.t_center) / p.T0;
    double env;
    if (p.shape == InjectedPulse::Shape::sech)
        env = 1.0 / std::cosh(u);
    else
        env = std::exp(-0.5 * u * u);
    return std::sqrt(p.peak_power) * env * std::exp(cd(0.0, -p.detuning * t));
}

struct Stepper {
    // Scaled units: z in 1/|kappa|, t in 1/(|kappa| v_g), amplitudes in
    // sqrt(|kappa/gamma|).  In these units the nonlinear phase per step is
    // sgn(gamma) * intensity * dtau and the coupling angle is sgn(kappa) * dtau.
    double amp_scale = 1.0;      // multiply physical A to get scaled
    double kappa_mag = 0.0;
    double sgn_kappa = 1.0, sgn_gamma = 1.0;
    double im_kappa = 0.0, im_gamma_scaled = 0.0;
    double vg = 0.0, dt = 0.0, dz = 0.0;
    double delta_k = 0.0;
    double z0 = 0.0;
    bool has_nl = false;

    std::vector<cd> up, um;

    void init(const CmeCoefficients& c, const EnvelopeState& s) {
        vg = c.v_g;
        const double kr = c.kappa.real(), gr = c.gamma_nl.real();
        kappa_mag = std::abs(kr);
        sgn_kappa = (kr < 0.0) ? -1.0 : 1.0;
        sgn_gamma = (gr < 0.0) ? -1.0 : 1.0;
        has_nl = gr != 0.0;
        amp_scale = (has_nl && kappa_mag > 0.0) ? std::sqrt(std::abs(gr / kr)) : 1.0;
        im_kappa = c.kappa.imag();
        im_gamma_scaled = (amp_scale > 0.0)
                              ? c.gamma_nl.imag() / (amp_scale * amp_scale)
                              : c.gamma_nl.imag();
        delta_k = c.delta_k;
        z0 = s.z_grid.front();
        dz = s.dz();
        const std::size_t n = s.z_grid.size();
        up.resize(n);
        um.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            up[i] = s.A_plus[i] * amp_scale;
            um[i] = s.A_minus[i] * amp_scale;
        }
    }

    // Pointwise nonlinear phase (exact for the frozen moduli) + Im(gamma) damping.
    void nonlinear_half(ExecutionPolicy policy) {
        if (!has_nl) return;
        const double coef = sgn_gamma * kappa_mag * vg * 0.5 * dt;
        const double damp_coef = im_gamma_scaled * vg * 0.5 * dt;
        const long n = static_cast<long>(up.size());
#pragma omp parallel for if (policy == ExecutionPolicy::parallel)
        for (long i = 0; i < n; ++i) {
            const double ip = std::norm(up[i]), im = std::norm(um[i]);
            up[i] *= std::exp(cd(-damp_coef * (ip + 2.0 * im), coef * (ip + 2.0 * im)));
            um[i] *= std::exp(cd(-damp_coef * (im + 2.0 * ip), coef * (im + 2.0 * ip)));
        }
    }

    // Exact 2x2 rotation for the linear coupling + Im(kappa) damping.
    void coupling_half(ExecutionPolicy policy) {
        if (kappa_mag == 0.0 && im_kappa == 0.0) return;
        const double theta = sgn_kappa * kappa_mag * vg * 0.5 * dt;
        const double ct = std::cos(theta), st = std::sin(theta);
        const double damp = std::exp(-im_kappa * vg * 0.5 * dt);
        const bool tilt = delta_k != 0.0;
        const long n = static_cast<long>(up.size());
#pragma omp parallel for if (policy == ExecutionPolicy::parallel)
        for (long i = 0; i < n; ++i) {
            cd phase(1.0, 0.0);
            if (tilt) phase = std::exp(cd(0.0, -2.0 * delta_k * (z0 + i * dz)));
            const cd p = up[i], m = um[i];
            up[i] = damp * (ct * p + cd(0.0, st) * phase * m);
            um[i] = damp * (cd(0.0, st) * std::conj(phase) * p + ct * m);
        }
    }

    // Exact transport along characteristics: one-cell shift at CFL = 1.
    void transport(const BoundarySpec& boundary, double t_new) {
        const std::size_t n = up.size();
        for (std::size_t i = n - 1; i > 0; --i) up[i] = up[i - 1];
        up[0] = (boundary.kind == BoundarySpec::Kind::injected)
                    ? pulse_value(boundary.pulse, t_new) * amp_scale
                    : cd(0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) um[i] = um[i + 1];
        um[n - 1] = cd(0.0);
    }

    double peak_intensity() const {
        double p = 0.0;
        for (std::size_t i = 0; i < up.size(); ++i)
            p = std::max(p, std::max(std::norm(up[i]), std::norm(um[i])));
        return p;
    }

    void store(EnvelopeState& s, double t) const {
        s.t = t;
        const double inv = 1.0 / amp_scale;
        for (std::size_t i = 0; i < up.size(); ++i) {
            s.A_plus[i] = up[i] * inv;
            s.A_minus[i] = um[i] * inv;
        }
    }
};

} // namespace

Trajectory propagate(const CmeCoefficients& coeffs, const EnvelopeState& initial,
                     const PropagationGrid& grid, const BoundarySpec& boundary,
                     ExecutionPolicy policy) {
    initial.validate();
    if (static_cast<int>(initial.z_grid.size()) != grid.n_z)
        throw InvalidParams("initial state does not match the grid");
    if (grid.n_z < 256) throw InvalidParams("n_z must be >= 256");
    const double dz = grid.dz();
    if (std::abs(grid.dt * coeffs.v_g - dz) > 1.0e-9 * dz)
        throw CflViolation("dt must equal dz / v_g");

    Stepper st;
    st.init(coeffs, initial);
    st.dt = grid.dt;

    double ref_intensity = st.peak_intensity();
    if (boundary.kind == BoundarySpec::Kind::injected)
        ref_intensity = std::max(ref_intensity, boundary.pulse.peak_power * st.amp_scale *
                                                    st.amp_scale);
    const double guard = 1.0e6 * std::max(ref_intensity, 1.0e-300);
    const long n_steps = std::lround(grid.t_end / grid.dt);

    Trajectory traj;
    EnvelopeState snap = initial;
    st.store(snap, 0.0);
    traj.snapshots.push_back(snap);

    for (long step = 1; step <= n_steps; ++step) {
        const double t_new = step * grid.dt;
        st.nonlinear_half(policy);
        st.coupling_half(policy);
        st.transport(boundary, t_new);
        st.coupling_half(policy);
        st.nonlinear_half(policy);

        const double peak = st.peak_intensity();
        if (!std::isfinite(peak) || peak > guard) {
            traj.failed = true;
            traj.failure = "NonFiniteField";
            st.store(snap, t_new);
            traj.snapshots.push_back(snap);
            return traj;
        }
        if (step % grid.snapshot_stride == 0 || step == n_steps) {
            st.store(snap, t_new);
            traj.snapshots.push_back(snap);
        }
    }
    return traj;
}

std::vector<DiagnosticRecord> diagnostics(const Trajectory& traj) {
    if (traj.snapshots.empty()) throw InvalidParams("empty trajectory");
    std::vector<DiagnosticRecord> out;
    out.reserve(traj.snapshots.size());
    for (const auto& s : traj.snapshots) {
        DiagnosticRecord r{};
        r.t = s.t;
        const double dz = s.dz();
        double e = 0.0, zw = 0.0, pk = 0.0;
        for (std::size_t i = 0; i < s.z_grid.size(); ++i) {
            const double p = std::norm(s.A_plus[i]) + std::norm(s.A_minus[i]);
            e += p;
            zw += p * s.z_grid[i];
            pk = std::max(pk, std::max(std::abs(s.A_plus[i]), std::abs(s.A_minus[i])));
        }
        r.energy = e * dz;
        r.centroid = (e > 0.0) ? zw / e : 0.0;
        r.peak = pk;
        out.push_back(r);
    }
    return out;
}

double l2_norm(const EnvelopeState& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.z_grid.size(); ++i)
        s += std::norm(a.A_plus[i]) + std::norm(a.A_minus[i]);
    return std::sqrt(s * a.dz());
}

double l2_distance(const EnvelopeState& a, const EnvelopeState& b) {
    if (a.z_grid.size() != b.z_grid.size())
        throw InvalidParams("states must share a grid");
    double s = 0.0;
    for (std::size_t i = 0; i < a.z_grid.size(); ++i)
        s += std::norm(a.A_plus[i] - b.A_plus[i]) + std::norm(a.A_minus[i] - b.A_minus[i]);
    return std::sqrt(s * a.dz());
}

namespace {

// Distance with the reference resampled at z - shift by linear interpolation.
double shifted_distance(const EnvelopeState& state, const EnvelopeState& ref, double shift) {
    const double dz = ref.dz();
    const double z0 = ref.z_grid.front();
    const long n = static_cast<long>(ref.z_grid.size());
    double s = 0.0;
    for (long i = 0; i < n; ++i) {
        const double zq = state.z_grid[i] - shift;
        const double x = (zq - z0) / dz;
        cd rp(0.0), rm(0.0);
        if (x >= 0.0 && x <= n - 1) {
            const long j = std::min(n - 2, static_cast<long>(x));
            const double f = x - j;
            rp = (1.0 - f) * ref.A_plus[j] + f * ref.A_plus[j + 1];
            rm = (1.0 - f) * ref.A_minus[j] + f * ref.A_minus[j + 1];
        }
        s += std::norm(state.A_plus[i] - rp) + std::norm(state.A_minus[i] - rm);
    }
    return std::sqrt(s * state.dz());
}

} // namespace

double min_shift_l2(const EnvelopeState& state, const EnvelopeState& reference) {
    const double dz = state.dz();
    const double span = (state.z_grid.back() - state.z_grid.front()) / 8.0;
    double best_shift = 0.0, best = shifted_distance(state, reference, 0.0);
    for (double sh = -span; sh <= span; sh += 0.5 * dz) {
        const double d = shifted_distance(state, reference, sh);
        if (d < best) {
            best = d;
            best_shift = sh;
        }
    }
    // Parabolic refinement around the best coarse shift.
    const double h = 0.5 * dz;
    const double dm = shifted_distance(state, reference, best_shift - h);
    const double dp = shifted_distance(state, reference, best_shift + h);
    const double denom = dm - 2.0 * best + dp;
    if (denom > 0.0) {
        const double refined = best_shift + 0.5 * h * (dm - dp) / denom;
        best = std::min(best, shifted_distance(state, reference, refined));
    }
    return best;
}

} // namespace eitgap
