#include "eitgap/bandstructure.hpp"

#include <algorithm>
#include <cmath>

namespace eitgap {
namespace {

struct Mat2 {
    cd a, b, c, d;

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }
    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
    cd trace() const { return a + d; }
    Mat2 inverse() const {
        const cd det = a * d - b * c;
        return {d / det, -b / det, -c / det, a / det};
    }
};

// Interface matrix: amplitudes in medium `na` (left) from amplitudes in `nb`.
Mat2 interface(cd na, cd nb) {
    const cd r = (na - nb) / (na + nb);
    const cd inv_t = (na + nb) / (2.0 * na);
    return {inv_t, r * inv_t, r * inv_t, inv_t};
}

// M^n with running log-magnitude normalization; result = e^{log_scale} * M_out.
Mat2 scaled_power(Mat2 m, long n, double& log_scale) {
    Mat2 result{1.0, 0.0, 0.0, 1.0};
    double log_r = 0.0, log_b = 0.0;
    while (n > 0) {
        if (n & 1) {
            result = result * m;
            log_r += log_b;
            const double s = result.max_abs();
            if (!std::isfinite(s) || s == 0.0)
                throw MatrixOverflow("transfer-matrix power lost precision");
            result = {result.a / s, result.b / s, result.c / s, result.d / s};
            log_r += std::log(s);
        }
        n >>= 1;
        if (n == 0) break;
        m = m * m;
        log_b *= 2.0;
        const double s = m.max_abs();
        if (!std::isfinite(s) || s == 0.0)
            throw MatrixOverflow("transfer-matrix power lost precision");
        m = {m.a / s, m.b / s, m.c / s, m.d / s};
        log_b += std::log(s);
    }
    log_scale = log_r;
    return result;
}

struct PeriodData {
    Mat2 M;                 // one-period matrix, cyclic interfaces included
    std::vector<cd> n;      // slab indices, entrance to exit
};

PeriodData period_matrix(const GratingSpec& g, double Delta1, bool include_absorption,
                         double probe_intensity, int nslab, bool reverse) {
    cd cb = g.chi_bar_at(Delta1);
    cd dc = g.delta_chi_at(Delta1);
    cd c3 = g.chi3_at(Delta1);
    if (!include_absorption) {
        cb = cb.real();
        dc = dc.real();
        c3 = c3.real();
    }
    const double omega = g.atomic.omega_p0() + Delta1 * g.atomic.gamma_a;
    const double d = g.period();
    const double dz = d / nslab;

    // The staircase attenuates the fundamental Fourier coefficient of the
    // cosine modulation by sinc(k_B dz); compensate so the discretized
    // grating carries exactly delta_chi at the Bragg harmonic.
    const double comp = (g.k_B * dz) / std::sin(g.k_B * dz);

    PeriodData p;
    p.n.resize(nslab);
    for (int j = 0; j < nslab; ++j) {
        const double z = (j + 0.5) * dz;
        p.n[j] = std::sqrt(cd(1.0) + cb + dc * comp * std::cos(2.0 * g.k_B * z) +
                           c3 * probe_intensity);
    }
    if (reverse) std::reverse(p.n.begin(), p.n.end());

    Mat2 M{1.0, 0.0, 0.0, 1.0};
    for (int j = 0; j < nslab; ++j) {
        const cd k = p.n[j] * omega / c_light;
        const cd e = std::exp(cd(0.0, -1.0) * k * dz);
        const Mat2 prop{e, 0.0, 0.0, 1.0 / e};
        M = M * prop * interface(p.n[j], p.n[(j + 1) % nslab]);
    }
    p.M = M;
    return p;
}

detail::SpectrumPoint spectrum_point_at(const GratingSpec& g, double Delta1,
                                        const SpectrumOptions& opt, int nslab) {
    const auto p = period_matrix(g, Delta1, opt.include_absorption,
                                 opt.probe_intensity, nslab, opt.reverse_stack);
    const long n_periods = std::max(1L, std::lround(g.L / g.period()));

    detail::SpectrumPoint out{};
    cd Kd = std::acos(p.M.trace() * 0.5);
    if (Kd.imag() < 0.0) Kd = std::conj(Kd);
    out.Kd = Kd;

    cd n_emb;
    if (opt.boundary == Boundary::index_matched) {
        cd cb = g.chi_bar_at(Delta1);
        n_emb = std::sqrt(cd(1.0) + cb).real();
    } else {
        n_emb = 1.0;
    }

    double log_scale = 0.0;
    const Mat2 mp = scaled_power(p.M, n_periods, log_scale);
    const cd n_first = p.n.front();
    const cd n_last = p.n.back();
    const Mat2 ms = interface(n_emb, n_first) * mp *
                    interface(n_last, n_first).inverse() * interface(n_last, n_emb);

    out.R = std::norm(ms.c / ms.a);
    // T = |1/(M11 e^{log_scale})|^2, evaluated in log space against underflow.
    out.T = std::exp(-2.0 * (log_scale + std::log(std::abs(ms.a))));
    if (!std::isfinite(out.R)) throw MatrixOverflow("non-finite reflectivity");
    return out;
}

void track_branch(const GratingSpec& g, const std::vector<double>& grid,
                  std::vector<cd>& Kd) {
    // Seed from the mean-index estimate, then keep Re(Kd) continuous among
    // the candidates +-Kd0 + 2 pi m.  Im is folded to the decaying mode.
    const double d = g.period();
    double prev;
    {
        const cd cb = g.chi_bar_at(grid.front());
        const double omega = g.atomic.omega_p0() + grid.front() * g.atomic.gamma_a;
        prev = std::sqrt(cd(1.0) + cb).real() * omega / c_light * d;
    }
    for (std::size_t i = 0; i < Kd.size(); ++i) {
        const double re0 = Kd[i].real();
        double best = 0.0, best_dist = 1.0e300;
        for (int s = -1; s <= 1; s += 2) {
            const double base = s * re0;
            const double m = std::round((prev - base) / (2.0 * pi));
            for (int dm = -1; dm <= 1; ++dm) {
                const double cand = base + 2.0 * pi * (m + dm);
                const double dist = std::abs(cand - prev);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = cand;
                }
            }
        }
        if (i > 0 && best_dist > pi / 2.0)
            throw BranchAmbiguity("omega grid too coarse for Bloch branch tracking");
        Kd[i] = cd(best, std::abs(Kd[i].imag()));
        prev = best;
    }
}

void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw InvalidParams("empty omega grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw InvalidParams("omega grid must be strictly increasing");
}

template <typename F>
void for_each_point(std::size_t n, ExecutionPolicy policy, F&& f) {
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < static_cast<long>(n); ++i) f(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) f(i);
    }
}

} // namespace

namespace detail {

SpectrumPoint spectrum_point(const GratingSpec& g, double Delta1, const SpectrumOptions& opt) {
    return spectrum_point_at(g, Delta1, opt, g.slabs_per_period);
}

} // namespace detail

BandStructure transfer_matrix_spectrum(const GratingSpec& grating,
                                       const std::vector<double>& omega_grid,
                                       const SpectrumOptions& opt) {
    check_grid(omega_grid);
    if (opt.probe_intensity < 0.0) throw InvalidParams("probe intensity must be >= 0");

    BandStructure band;
    band.omega_grid = omega_grid;
    band.include_absorption = opt.include_absorption;
    band.period = grating.period();
    const std::size_t n = omega_grid.size();
    band.reflectivity.resize(n);
    band.transmissivity.resize(n);
    band.bloch_Kd.resize(n);

    for_each_point(n, opt.policy, [&](std::size_t i) {
        const auto p = spectrum_point_at(grating, omega_grid[i], opt, grating.slabs_per_period);
        band.reflectivity[i] = p.R;
        band.transmissivity[i] = p.T;
        band.bloch_Kd[i] = p.Kd;
    });

    if (opt.verify_convergence) {
        double max_diff = 0.0;
        for_each_point(n, opt.policy, [&](std::size_t i) {
            const auto p = spectrum_point_at(grating, omega_grid[i], opt,
                                             2 * grating.slabs_per_period);
            const double diff = std::abs(p.R - band.reflectivity[i]);
#pragma omp critical
            max_diff = std::max(max_diff, diff);
        });
        if (max_diff > 1.0e-3)
            throw NonConvergent("reflectivity not converged in slabs_per_period");
    }

    // Branch tracking is a sequential post-pass so the output is independent
    // of how the grid was partitioned.
    track_branch(grating, omega_grid, band.bloch_Kd);
    return band;
}

std::vector<cd> bloch_dispersion(const GratingSpec& grating,
                                 const std::vector<double>& omega_grid,
                                 bool include_absorption, ExecutionPolicy policy) {
    check_grid(omega_grid);
    SpectrumOptions opt;
    opt.include_absorption = include_absorption;
    opt.policy = policy;

    std::vector<cd> Kd(omega_grid.size());
    for_each_point(omega_grid.size(), policy, [&](std::size_t i) {
        const auto p = period_matrix(grating, omega_grid[i], include_absorption, 0.0,
                                     grating.slabs_per_period, false);
        cd k = std::acos(p.M.trace() * 0.5);
        if (k.imag() < 0.0) k = std::conj(k);
        Kd[i] = k;
    });
    track_branch(grating, omega_grid, Kd);
    return Kd;
}

double gap_width(const BandStructure& band, GapCriterion criterion, double level) {
    const std::size_t n = band.omega_grid.size();
    if (n < 3) throw InvalidParams("grid too small for gap detection");

    std::vector<double> y(n);
    double threshold;
    if (criterion == GapCriterion::reflectivity_threshold) {
        y = band.reflectivity;
        threshold = level;
    } else {
        for (std::size_t i = 0; i < n; ++i) y[i] = band.bloch_Kd[i].imag();
        const double m = *std::max_element(y.begin(), y.end());
        if (m <= 1e-9) throw NoGapDetected("Im K vanishes on the whole grid");
        threshold = (criterion == GapCriterion::imK_half_max) ? 0.5 * m
                                                              : std::max(1.0e-8, 1.0e-6 * m);
    }

    const std::size_t peak = static_cast<std::size_t>(
        std::max_element(y.begin(), y.end()) - y.begin());
    if (y[peak] <= threshold) throw NoGapDetected("no point above the gap threshold");

    std::size_t lo = peak, hi = peak;
    while (lo > 0 && y[lo - 1] > threshold) --lo;
    while (hi + 1 < n && y[hi + 1] > threshold) ++hi;
    if (lo == 0 || hi == n - 1)
        throw NoGapDetected("high interval touches the grid boundary");

    // Interpolated crossings.
    const auto cross = [&](std::size_t inside, std::size_t outside) {
        const double y1 = y[inside], y0 = y[outside];
        const double x1 = band.omega_grid[inside], x0 = band.omega_grid[outside];
        return x0 + (threshold - y0) / (y1 - y0) * (x1 - x0);
    };
    return cross(hi, hi + 1) - cross(lo, lo - 1);
}

} // namespace eitgap
