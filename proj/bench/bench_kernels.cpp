#include <benchmark/benchmark.h>

#include "eitgap/bandstructure.hpp"
#include "eitgap/cme.hpp"
#include "eitgap/grating.hpp"
#include "eitgap/propagator.hpp"

using namespace eitgap;

namespace {

constexpr double A_eff_default = 7.85e-9;

GratingSpec reference_grating() {
    AtomicParams a;
    a.k0_scale = 5.929466405029252;
    return build_grating(a, FieldParams{}, 5e-3);
}

std::vector<double> omega_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = -1.5 + 3.0 * i / (n - 1);
    return g;
}

void bench_spectrum(benchmark::State& state, ExecutionPolicy policy) {
    const GratingSpec g = reference_grating();
    const auto om = omega_grid(static_cast<int>(state.range(0)));
    SpectrumOptions opt;
    opt.policy = policy;
    for (auto _ : state) {
        const BandStructure b = transfer_matrix_spectrum(g, om, opt);
        benchmark::DoNotOptimize(b.reflectivity.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bench_propagate(benchmark::State& state, ExecutionPolicy policy) {
    AtomicParams a;
    a.k0_scale = 5.929466405029252;
    const GratingSpec g = reference_grating();
    CmeCoefficients co = derive_coefficients(a, FieldParams{}, g, A_eff_default);
    co.kappa = co.kappa.real();
    co.gamma_field = co.gamma_field.real();
    co.gamma_nl = co.gamma_nl.real();

    const int n_z = static_cast<int>(state.range(0));
    EnvelopeState s;
    s.z_grid.resize(n_z);
    s.A_plus.resize(n_z);
    s.A_minus.resize(n_z);
    const double z_min = -4e-3, z_max = 4e-3;
    for (int i = 0; i < n_z; ++i) {
        s.z_grid[i] = z_min + (z_max - z_min) * i / (n_z - 1);
        auto [p, m] = analytic_soliton(co, {0.3, pi / 2.0}, s.z_grid[i], 0.0);
        s.A_plus[i] = p;
        s.A_minus[i] = m;
    }
    const PropagationGrid grid = make_grid(z_min, z_max, n_z, 2e-7, co.v_g, 1 << 20);
    for (auto _ : state) {
        const Trajectory t = propagate(co, s, grid, {}, policy);
        benchmark::DoNotOptimize(t.snapshots.back().A_plus.data());
    }
    state.SetItemsProcessed(state.iterations() * n_z);
}

} // namespace

BENCHMARK_CAPTURE(bench_spectrum, serial, ExecutionPolicy::serial)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(bench_spectrum, parallel, ExecutionPolicy::parallel)->Arg(256)->Arg(1024);
BENCHMARK_CAPTURE(bench_propagate, serial, ExecutionPolicy::serial)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(bench_propagate, parallel, ExecutionPolicy::parallel)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
