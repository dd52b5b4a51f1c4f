#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"

#include "eitgap/config.hpp"
#include "eitgap/design.hpp"
#include "eitgap/propagator.hpp"

namespace eitgap {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

class CsvFile {
public:
    CsvFile(const fs::path& path, const std::vector<std::string>& comments,
            const std::vector<std::string>& columns)
        : out_(path, std::ios::binary) {
        if (!out_) throw Error("cannot open output file '" + path.string() + "'");
        for (const auto& c : comments) out_ << "# " << c << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }

    void row(std::initializer_list<double> vals) {
        std::size_t i = 0;
        for (double v : vals) out_ << (i++ ? "," : "") << fmt(v);
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

ordered_json complex_json(const cd& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json coefficients_json(const CmeCoefficients& co) {
    return {{"v_g_m_per_s", co.v_g},
            {"kappa_per_m", complex_json(co.kappa)},
            {"gamma_field_per_V2_m2_per_m", complex_json(co.gamma_field)},
            {"gamma_nl_per_W_per_m", complex_json(co.gamma_nl)},
            {"delta_k_per_m", co.delta_k},
            {"n_bar", co.n_bar},
            {"A_eff_m2", co.A_eff},
            {"omega_p_rad_per_s", co.omega_p},
            {"gap_width_rad_per_s", gap_width_cme(co)},
            {"gap_width_gamma_a", gap_width_cme(co) / co.gamma_a}};
}

CmeCoefficients maybe_lossless(CmeCoefficients co, bool lossless) {
    if (lossless) {
        co.kappa = cd(co.kappa.real(), 0.0);
        co.gamma_field = cd(co.gamma_field.real(), 0.0);
        co.gamma_nl = cd(co.gamma_nl.real(), 0.0);
    }
    return co;
}

void write_binary_record(const fs::path& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path.string() + "'");
    const auto& first = traj.snapshots.front();
    const double n_z = static_cast<double>(first.z_grid.size());
    const double dz = first.dz();
    const double dt =
        traj.snapshots.size() > 1 ? traj.snapshots[1].t - traj.snapshots[0].t : 0.0;
    auto put = [&out](double v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); };
    put(n_z);
    put(dz);
    put(dt);
    for (const auto& s : traj.snapshots) {
        put(s.t);
        for (std::size_t i = 0; i < s.z_grid.size(); ++i) {
            put(s.A_plus[i].real());
            put(s.A_plus[i].imag());
            put(s.A_minus[i].real());
            put(s.A_minus[i].imag());
        }
    }
}

} // namespace

std::vector<std::string> run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    const std::string hash = config_hash(cfg);
    const GratingSpec grating = build_grating(cfg.atomic, cfg.fields, cfg.geometry.L);
    const CmeCoefficients co =
        derive_coefficients(cfg.atomic, cfg.fields, grating, cfg.geometry.A_eff);

    std::vector<std::string> files;
    const std::vector<std::string> stamp = {
        "config hash " + hash, "tool version " + std::string(tool_version)};

    ordered_json manifest;
    manifest["tool_version"] = tool_version;
    manifest["config_hash"] = hash;
    manifest["scenario"] = to_string(cfg.scenario);
    manifest["timestamp_utc"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    manifest["derived"] = {
        {"K0_rad_per_s", cfg.atomic.K0()},
        {"K1_rad_per_s_V2_per_m2", cfg.atomic.K1()},
        {"omega_p0_rad_per_s", cfg.atomic.omega_p0()},
        {"transparency_window_rad_per_s",
         transparency_window(cfg.atomic, cfg.fields.Omega_c, cfg.geometry.L)},
        {"coefficients", coefficients_json(co)}};
    manifest["grating"] = {{"chi_bar", complex_json(grating.chi_bar)},
                           {"delta_chi", complex_json(grating.delta_chi)},
                           {"chi3_V2_per_m2_inv", complex_json(grating.chi3)},
                           {"k_B_per_m", grating.k_B},
                           {"period_m", grating.period()},
                           {"L_m", grating.L},
                           {"n_bar", grating.n_bar()},
                           {"slabs_per_period", grating.slabs_per_period}};
    manifest["soliton_variant"] = cfg.soliton.variant == SolitonVariant::three_minus_nu_sq
                                      ? "three_minus_nu_sq"
                                      : "two_minus_nu_sq";
    manifest["validity"] = {{"eit_condition", true},
                            {"weak_probe", cfg.fields.weak_probe(cfg.atomic)},
                            {"ordering_chi_bar", co.ordering_chi_bar_ok},
                            {"ordering_delta_chi", co.ordering_delta_chi_ok},
                            {"ordering_chi3", co.ordering_chi3_ok},
                            {"kappa_gamma_product_positive",
                             co.kappa.real() * co.gamma_nl.real() > 0.0}};

    switch (cfg.scenario) {
    case ScenarioKind::susceptibility: {
        const fs::path path = dir / "susceptibility.csv";
        std::vector<std::string> comments = stamp;
        comments.push_back(
            "columns: Delta1 [gamma_a], chi_a [dimensionless], chi3 [(V/m)^-2]");
        CsvFile csv(path, comments,
                    {"Delta1_gamma_a", "Re_chi_a", "Im_chi_a", "Re_chi3", "Im_chi3"});
        FieldParams f = cfg.fields;
        f.Omega_s_sq = 0.5 * f.Omega_1 * f.Omega_1;  // standing-wave spatial mean
        for (double d : linspace(cfg.grid.Delta1_min, cfg.grid.Delta1_max, cfg.grid.points)) {
            f.Delta1 = d;
            const cd xa = chi_a(cfg.atomic, f).value;
            const cd x3 = chi3_self(cfg.atomic, f).value;
            csv.row({d, xa.real(), xa.imag(), x3.real(), x3.imag()});
        }
        files.push_back(path.string());
        break;
    }
    case ScenarioKind::bandstructure: {
        const auto omega = linspace(cfg.grid.Delta1_min, cfg.grid.Delta1_max, cfg.grid.points);
        SpectrumOptions opt;
        opt.boundary = cfg.geometry.boundary;
        opt.probe_intensity = cfg.geometry.probe_intensity;
        ordered_json gaps;
        for (bool absorption : {true, false}) {
            opt.include_absorption = absorption;
            const BandStructure band = transfer_matrix_spectrum(grating, omega, opt);
            const fs::path path =
                dir / (absorption ? "bandstructure_absorption.csv" : "bandstructure_lossless.csv");
            std::vector<std::string> comments = stamp;
            comments.push_back(absorption ? "medium absorption included"
                                          : "medium absorption dropped");
            comments.push_back(
                "columns: Delta1 [gamma_a], R, T [dimensionless], Kd [rad]");
            CsvFile csv(path, comments,
                        {"Delta1_gamma_a", "R", "T", "Re_Kd_over_pi", "Im_Kd"});
            for (int i = 0; i < cfg.grid.points; ++i)
                csv.row({band.omega_grid[i], band.reflectivity[i], band.transmissivity[i],
                         band.bloch_Kd[i].real() / pi, band.bloch_Kd[i].imag()});
            files.push_back(path.string());

            ordered_json g;
            for (auto [name, crit] :
                 {std::pair{"imK_half_max", GapCriterion::imK_half_max},
                  std::pair{"imK_support", GapCriterion::imK_support},
                  std::pair{"reflectivity_half_max", GapCriterion::reflectivity_threshold}}) {
                try {
                    g[name] = gap_width(band, crit);
                } catch (const NoGapDetected&) {
                    g[name] = nullptr;
                }
            }
            gaps[absorption ? "absorption" : "lossless"] = g;
        }
        manifest["gap_width_gamma_a"] = gaps;
        break;
    }
    case ScenarioKind::coefficients: {
        const fs::path path = dir / "coefficients.csv";
        std::vector<std::string> comments = stamp;
        comments.push_back(
            "columns: v_g [m/s], kappa [1/m], gamma_nl [1/(W m)], delta_k [1/m]");
        CsvFile csv(path, comments,
                    {"v_g_m_per_s", "Re_kappa_per_m", "Im_kappa_per_m", "Re_gamma_nl",
                     "Im_gamma_nl", "delta_k_per_m", "n_bar", "gap_width_gamma_a"});
        csv.row({co.v_g, co.kappa.real(), co.kappa.imag(), co.gamma_nl.real(),
                 co.gamma_nl.imag(), co.delta_k, co.n_bar, gap_width_cme(co) / co.gamma_a});
        files.push_back(path.string());
        break;
    }
    case ScenarioKind::soliton: {
        const SolitonParams sp{cfg.soliton.nu, cfg.soliton.psi};
        const fs::path path = dir / "soliton.csv";
        std::vector<std::string> comments = stamp;
        comments.push_back("analytic profile at t = 0, envelopes in sqrt(W)");
        comments.push_back("columns: z [m], A+ and A- [sqrt(W)]");
        CsvFile csv(path, comments,
                    {"z_m", "Re_A_plus", "Im_A_plus", "Re_A_minus", "Im_A_minus"});
        const double gammaL = 1.0 / std::sqrt(1.0 - sp.nu * sp.nu);
        const double width = 1.0 / (std::abs(co.kappa.real()) * std::sin(sp.psi) * gammaL);
        for (double z : linspace(-8.0 * width, 8.0 * width, 2001)) {
            const auto [ap, am] = analytic_soliton(co, sp, z, 0.0, cfg.soliton.variant);
            csv.row({z, ap.real(), ap.imag(), am.real(), am.imag()});
        }
        manifest["soliton"] = {{"nu", sp.nu}, {"psi_rad", sp.psi}, {"width_m", width}};
        files.push_back(path.string());
        break;
    }
    case ScenarioKind::propagate: {
        const CmeCoefficients run_co = maybe_lossless(co, cfg.propagation.lossless);
        const PropagationGrid grid =
            make_grid(cfg.propagation.z_min, cfg.propagation.z_max, cfg.propagation.n_z,
                      cfg.propagation.t_end, run_co.v_g, cfg.propagation.snapshot_stride);
        EnvelopeState init;
        init.z_grid = linspace(cfg.propagation.z_min, cfg.propagation.z_max, cfg.propagation.n_z);
        init.A_plus.assign(init.z_grid.size(), cd{});
        init.A_minus.assign(init.z_grid.size(), cd{});
        if (cfg.propagation.start_from_soliton) {
            const SolitonParams sp{cfg.soliton.nu, cfg.soliton.psi};
            for (std::size_t i = 0; i < init.z_grid.size(); ++i) {
                const auto [ap, am] =
                    analytic_soliton(run_co, sp, init.z_grid[i], 0.0, cfg.soliton.variant);
                init.A_plus[i] = ap;
                init.A_minus[i] = am;
            }
        }
        const Trajectory traj = propagate(run_co, init, grid, cfg.propagation.boundary);

        if (cfg.propagation.format == "binary") {
            const fs::path path = dir / "trajectory.bin";
            write_binary_record(path, traj);
            files.push_back(path.string());
        } else {
            const fs::path path = dir / "trajectory.csv";
            std::vector<std::string> comments = stamp;
            comments.push_back("columns: t [s], z [m], A+ and A- [sqrt(W)]");
            CsvFile csv(path, comments,
                        {"t_s", "z_m", "Re_A_plus", "Im_A_plus", "Re_A_minus", "Im_A_minus"});
            for (const auto& s : traj.snapshots)
                for (std::size_t i = 0; i < s.z_grid.size(); ++i)
                    csv.row({s.t, s.z_grid[i], s.A_plus[i].real(), s.A_plus[i].imag(),
                             s.A_minus[i].real(), s.A_minus[i].imag()});
            files.push_back(path.string());
        }
        {
            const fs::path path = dir / "diagnostics.csv";
            std::vector<std::string> comments = stamp;
            comments.push_back("columns: t [s], energy [W s], centroid [m], peak [sqrt(W)]");
            CsvFile csv(path, comments, {"t_s", "energy_W_s", "centroid_m", "peak_sqrt_W"});
            for (const auto& r : diagnostics(traj))
                csv.row({r.t, r.energy, r.centroid, r.peak});
            files.push_back(path.string());
        }
        manifest["propagation"] = {
            {"scheme", "characteristic-aligned Strang splitting"},
            {"n_z", cfg.propagation.n_z},
            {"dz_m", grid.dz()},
            {"dt_s", grid.dt},
            {"snapshots", traj.snapshots.size()},
            {"failed", traj.failed},
            {"failure", traj.failure}};
        if (traj.failed) {
            std::ofstream mout(dir / "manifest.json");
            mout << manifest.dump(2) << "\n";
            throw NonConvergent("propagation failed: " + traj.failure);
        }
        break;
    }
    case ScenarioKind::design_map: {
        ordered_json regions = ordered_json::array();
        for (double T0 : cfg.design.T0_list) {
            const Constraints cons{cfg.design.P_c, cfg.design.L, cfg.design.power_margin,
                                   cfg.design.min_T_factor};
            const auto points = design_map(co, T0, cons);
            char name[64];
            std::snprintf(name, sizeof name, "design_T0_%.6gus.csv", T0 * 1e6);
            const fs::path path = dir / name;
            std::vector<std::string> comments = stamp;
            comments.push_back("T0 = " + fmt(T0) + " s");
            comments.push_back("columns: nu [dimensionless], P_in [W], z0 [m], feasible [0/1]");
            CsvFile csv(path, comments, {"nu", "P_in_W", "z0_m", "feasible"});
            for (const auto& p : points)
                csv.row({p.nu, p.P_in, p.z0, p.feasible ? 1.0 : 0.0});
            files.push_back(path.string());

            ordered_json intervals = ordered_json::array();
            for (const auto& iv : workable_region(co, T0, cons))
                intervals.push_back({{"nu_lo", iv.lo},
                                     {"nu_hi", iv.hi},
                                     {"binding_lo", iv.binding_lo},
                                     {"binding_hi", iv.binding_hi}});
            regions.push_back({{"T0_s", T0},
                               {"P_c_W", cons.P_c},
                               {"L_m", cons.L},
                               {"power_margin", cons.power_margin},
                               {"min_T_factor", cons.min_T_factor},
                               {"intervals", intervals}});
        }
        manifest["design"] = regions;
        break;
    }
    }

    manifest["outputs"] = files;
    const fs::path mpath = dir / "manifest.json";
    std::ofstream mout(mpath);
    mout << manifest.dump(2) << "\n";
    files.push_back(mpath.string());
    return files;
}

} // namespace eitgap
