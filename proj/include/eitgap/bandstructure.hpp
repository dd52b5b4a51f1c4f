#ifndef EITGAP_BANDSTRUCTURE_HPP
#define EITGAP_BANDSTRUCTURE_HPP

#include <vector>

#include "eitgap/exec.hpp"
#include "eitgap/grating.hpp"

namespace eitgap {

enum class Boundary { index_matched, vacuum };

struct BandStructure {
    std::vector<double> omega_grid;   // probe detuning Delta1, gamma_a units
    std::vector<double> reflectivity;
    std::vector<double> transmissivity;
    std::vector<cd> bloch_Kd;         // complex Bloch K times period d
    bool include_absorption = true;
    double period = 0.0;              // m
};

struct SpectrumOptions {
    bool include_absorption = true;
    double probe_intensity = 0.0;       // |E_p|^2, (V/m)^2
    Boundary boundary = Boundary::index_matched;
    ExecutionPolicy policy = ExecutionPolicy::parallel;
    bool verify_convergence = false;    // re-run at doubled slab count
    bool reverse_stack = false;         // right incidence, for reciprocity checks
};

BandStructure transfer_matrix_spectrum(const GratingSpec& grating,
                                       const std::vector<double>& omega_grid,
                                       const SpectrumOptions& opt = {});

std::vector<cd> bloch_dispersion(const GratingSpec& grating,
                                 const std::vector<double>& omega_grid,
                                 bool include_absorption = true,
                                 ExecutionPolicy policy = ExecutionPolicy::parallel);

enum class GapCriterion { imK_half_max, imK_support, reflectivity_threshold };

// Width (gamma_a units) of the contiguous high-Im-K or high-R interval
// around its maximum, with linearly interpolated edges.
double gap_width(const BandStructure& band, GapCriterion criterion, double level = 0.5);

namespace detail {

// Single-frequency kernel shared by the serial and OpenMP paths.
struct SpectrumPoint {
    double R, T;
    cd Kd;
};
SpectrumPoint spectrum_point(const GratingSpec& g, double Delta1, const SpectrumOptions& opt);

} // namespace detail

} // namespace eitgap

#endif
