#ifndef EITGAP_CONFIG_HPP
#define EITGAP_CONFIG_HPP

#include <string>
#include <vector>

#include "eitgap/atomic.hpp"
#include "eitgap/bandstructure.hpp"
#include "eitgap/cme.hpp"
#include "eitgap/propagator.hpp"

namespace eitgap {

inline constexpr const char* tool_version = "0.1.0";

enum class ScenarioKind {
    susceptibility,
    bandstructure,
    coefficients,
    soliton,
    propagate,
    design_map,
};

std::string to_string(ScenarioKind k);
ScenarioKind scenario_from_string(const std::string& s);

struct GridConfig {
    double Delta1_min = -3.0;  // gamma_a units
    double Delta1_max = 3.0;
    int points = 601;
};

struct SolitonConfig {
    double nu = 0.3;
    double psi = pi / 2.0;
    SolitonVariant variant = default_soliton_variant;
};

struct PropagationConfig {
    double z_min = 0.0, z_max = 5.0e-3;  // m
    int n_z = 1024;
    double t_end = 5.0e-7;  // s
    int snapshot_stride = 50;
    BoundarySpec boundary{};
    bool lossless = false;        // drop Im(kappa), Im(gamma)
    bool start_from_soliton = true;
    std::string format = "csv";   // csv | binary
};

struct DesignConfig {
    std::vector<double> T0_list = {2.0e-6, 10.0e-6};  // s
    double P_c = 1.0;             // W
    double L = 5.0e-3;            // m (may differ from geometry L)
    double power_margin = 10.0;
    double min_T_factor = 10.0;
};

struct GeometryConfig {
    double L = 5.0e-3;        // m
    double A_eff = 7.85e-9;   // m^2
    Boundary boundary = Boundary::index_matched;
    double k_s = 0.0;         // control wavevector, 1/m; 0 = not specified
    double probe_intensity = 0.0;  // |E_p|^2 for the spectrum, (V/m)^2
};

struct ScenarioConfig {
    AtomicParams atomic{};
    FieldParams fields{};
    GeometryConfig geometry{};
    ScenarioKind scenario = ScenarioKind::susceptibility;
    GridConfig grid{};
    SolitonConfig soliton{};
    PropagationConfig propagation{};
    DesignConfig design{};
    std::string output_dir = "out";
    int threads = 0;

    void validate() const;  // throws ConfigInvalid
};

// Strict parse: unknown keys rejected, units are part of the key names.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);
std::string canonical_json(const ScenarioConfig& cfg);
std::string config_hash(const ScenarioConfig& cfg);  // FNV-1a 64, hex

// Shipped presets: fig2, fig3, fig4, soliton-demo.
const std::vector<std::string>& preset_names();
ScenarioConfig preset_config(const std::string& name);

struct ValidationReport {
    bool ok = false;
    std::string message;
    double K0 = 0.0;
    double n_bar = 0.0;
    cd kappa{};
    double v_g = 0.0;
};

ValidationReport validate_config(const std::string& path);

// Runs the scenario, writes CSVs and manifest.json under cfg.output_dir.
// Returns the list of files written.
std::vector<std::string> run_scenario(const ScenarioConfig& cfg);

} // namespace eitgap

#endif
