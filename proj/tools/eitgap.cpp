#include <cstdio>
#include <iostream>

#include "CLI11.hpp"

#include "eitgap/config.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string preset;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file (JSON)");
    cmd->add_option("--out", args.out_dir, "output directory (overrides config)");
    cmd->add_option("--preset", args.preset, "built-in preset: fig2, fig3, fig4, soliton-demo");
    cmd->add_option("--threads", args.threads, "OpenMP thread count (0 = runtime default)");
}

eitgap::ScenarioConfig resolve_config(const CommonArgs& args) {
    if (!args.preset.empty() && !args.config_path.empty())
        throw eitgap::ConfigInvalid("--preset and --config are mutually exclusive");
    if (!args.preset.empty()) return eitgap::preset_config(args.preset);
    if (!args.config_path.empty()) return eitgap::load_config_file(args.config_path);
    return eitgap::ScenarioConfig{};  // shipped defaults
}

int run_kind(const CommonArgs& args, eitgap::ScenarioKind kind) {
    eitgap::ScenarioConfig cfg = resolve_config(args);
    cfg.scenario = kind;
    if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
    if (args.threads > 0) cfg.threads = args.threads;
    for (const auto& f : eitgap::run_scenario(cfg)) std::cout << f << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"EIT Bragg-grating soliton toolkit"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        eitgap::ScenarioKind kind;
    };
    const Sub subs[] = {
        {"susceptibility", "sweep chi_a and chi3 over probe detuning",
         eitgap::ScenarioKind::susceptibility},
        {"bandstructure", "transfer-matrix spectra and Bloch dispersion",
         eitgap::ScenarioKind::bandstructure},
        {"coefficients", "coupled-mode coefficients for the configured medium",
         eitgap::ScenarioKind::coefficients},
        {"soliton", "analytic Bragg-soliton profile", eitgap::ScenarioKind::soliton},
        {"propagate", "time-domain coupled-mode propagation", eitgap::ScenarioKind::propagate},
        {"design-map", "feasible soliton operating region", eitgap::ScenarioKind::design_map},
    };

    CommonArgs args;
    std::vector<std::pair<CLI::App*, eitgap::ScenarioKind>> runs;
    for (const auto& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, args);
        runs.emplace_back(cmd, s.kind);
    }
    CLI::App* validate = app.add_subcommand("validate", "check a config and preview derived constants");
    std::string validate_path;
    validate->add_option("--config", validate_path, "scenario config file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            const eitgap::ValidationReport rep = eitgap::validate_config(validate_path);
            std::cout << rep.message << "\n";
            std::printf("K0      = %.6g rad/s\n", rep.K0);
            std::printf("n_bar   = %.9g\n", rep.n_bar);
            std::printf("kappa   = %.6g %+.6gi 1/m\n", rep.kappa.real(), rep.kappa.imag());
            std::printf("v_g     = %.6g m/s\n", rep.v_g);
            return 0;
        }
        for (const auto& [cmd, kind] : runs)
            if (cmd->parsed()) return run_kind(args, kind);
    } catch (const eitgap::ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const eitgap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
