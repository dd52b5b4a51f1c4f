#include "eitgap/design.hpp"

#include <cmath>

namespace eitgap {

namespace {

void check_regime(const CmeCoefficients& c, double T0, double nu) {
    if (T0 <= 0.0) throw InvalidParams("T0 must be > 0");
    if (!(std::abs(nu) > 0.0 && std::abs(nu) < 1.0))
        throw InvalidParams("|nu| must be in (0, 1)");
    if (c.kappa.real() * c.gamma_nl.real() <= 0.0)
        throw InvalidSolitonRegime("soliton design requires kappa * gamma > 0");
}

double relativistic_factor(double nu) { return std::pow(1.0 - nu * nu, 1.5); }

} // namespace

void Constraints::validate() const {
    if (P_c <= 0.0 || L <= 0.0 || power_margin <= 0.0 || min_T_factor <= 0.0)
        throw InvalidParams("constraints must be positive");
}

double soliton_order(const CmeCoefficients& coeffs, double T0, double nu, double P0,
                     SolitonVariant variant) {
    check_regime(coeffs, T0, nu);
    if (P0 <= 0.0) throw InvalidParams("P0 must be > 0");
    const double pref = (variant == SolitonVariant::three_minus_nu_sq)
                            ? (3.0 - nu * nu)
                            : (2.0 - nu * nu);
    const double kg = std::abs(coeffs.kappa.real() * coeffs.gamma_nl.real());
    const double v2T2 = coeffs.v_g * coeffs.v_g * T0 * T0;
    const double ns2 = pref * kg * v2T2 * nu * nu * P0 / (2.0 * relativistic_factor(nu));
    return std::sqrt(ns2);
}

double soliton_period(const CmeCoefficients& coeffs, double T0, double nu) {
    check_regime(coeffs, T0, nu);
    const double v2T2 = coeffs.v_g * coeffs.v_g * T0 * T0;
    return pi * nu * nu * v2T2 * std::abs(coeffs.kappa.real()) /
           (2.0 * relativistic_factor(nu));
}

double input_power(const CmeCoefficients& coeffs, double T0, double nu) {
    check_regime(coeffs, T0, nu);
    const double kg = std::abs(coeffs.kappa.real() * coeffs.gamma_nl.real());
    const double v2T2 = coeffs.v_g * coeffs.v_g * T0 * T0;
    return 2.0 * relativistic_factor(nu) /
           (std::abs(nu) * (3.0 - nu * nu) * v2T2 * kg);
}

namespace {

struct Feasibility {
    bool ok;
    std::string binding;  // constraint that fails (or "" when feasible)
};

Feasibility feasible_at(const CmeCoefficients& c, double T0, const Constraints& cons,
                        double nu) {
    if (input_power(c, T0, nu) > cons.P_c / cons.power_margin)
        return {false, "input_power"};
    if (soliton_period(c, T0, nu) > cons.L) return {false, "soliton_period"};
    return {true, ""};
}

// Bisect the feasibility boundary between a feasible and an infeasible nu.
double refine_endpoint(const CmeCoefficients& c, double T0, const Constraints& cons,
                       double nu_feasible, double nu_infeasible) {
    for (int it = 0; it < 60; ++it) {
        const double mid = std::sqrt(nu_feasible * nu_infeasible);  // log bisection
        if (feasible_at(c, T0, cons, mid).ok)
            nu_feasible = mid;
        else
            nu_infeasible = mid;
        if (std::abs(nu_feasible - nu_infeasible) < 1.0e-3 * nu_feasible) break;
    }
    return nu_feasible;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(decades * per_decade) + 1);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

} // namespace

std::vector<NuInterval> workable_region(const CmeCoefficients& coeffs, double T0,
                                        const Constraints& cons) {
    cons.validate();
    check_regime(coeffs, T0, 0.5);

    // Pulse-bandwidth floor: the pulse must fit inside the band gap.
    const double delta_nu = gap_width_cme(coeffs) / (2.0 * pi);
    if (fwhm_factor * T0 < cons.min_T_factor / delta_nu) return {};

    const auto grid = log_grid(1.0e-5, 0.99, 2000);
    std::vector<NuInterval> out;
    bool in_interval = false;
    NuInterval cur{};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto f = feasible_at(coeffs, T0, cons, grid[i]);
        if (f.ok && !in_interval) {
            in_interval = true;
            if (i == 0) {
                cur.lo = grid[0];
                cur.binding_lo = "scan_floor";
            } else {
                cur.lo = refine_endpoint(coeffs, T0, cons, grid[i], grid[i - 1]);
                cur.binding_lo = feasible_at(coeffs, T0, cons, cur.lo * 0.999).binding;
            }
        } else if (!f.ok && in_interval) {
            in_interval = false;
            cur.hi = refine_endpoint(coeffs, T0, cons, grid[i - 1], grid[i]);
            cur.binding_hi = f.binding;
            out.push_back(cur);
        }
    }
    if (in_interval) {
        cur.hi = grid.back();
        cur.binding_hi = "scan_ceiling";
        out.push_back(cur);
    }
    return out;
}

std::vector<DesignPoint> design_map(const CmeCoefficients& coeffs, double T0,
                                    const Constraints& cons, int points_per_decade,
                                    ExecutionPolicy policy) {
    cons.validate();
    const auto grid = log_grid(1.0e-5, 0.99, points_per_decade);
    std::vector<DesignPoint> out(grid.size());
    const long n = static_cast<long>(grid.size());
#pragma omp parallel for if (policy == ExecutionPolicy::parallel)
    for (long i = 0; i < n; ++i) {
        DesignPoint p{};
        p.T0 = T0;
        p.nu = grid[i];
        p.z0 = soliton_period(coeffs, T0, p.nu);
        p.P_in = input_power(coeffs, T0, p.nu);
        p.N_s = soliton_order(coeffs, T0, p.nu, p.P_in / p.nu);
        p.feasible = feasible_at(coeffs, T0, cons, p.nu).ok;
        out[static_cast<std::size_t>(i)] = p;
    }
    return out;
}

} // namespace eitgap
