#ifndef EITGAP_PROPAGATOR_HPP
#define EITGAP_PROPAGATOR_HPP

#include <functional>
#include <string>
#include <vector>

#include "eitgap/cme.hpp"
#include "eitgap/exec.hpp"

namespace eitgap {

// Sampled forward/backward envelopes at one time, power convention (sqrt(W)).
struct EnvelopeState {
    std::vector<double> z_grid;  // uniform, m
    std::vector<cd> A_plus;
    std::vector<cd> A_minus;
    double t = 0.0;

    double dz() const { return z_grid[1] - z_grid[0]; }
    void validate() const;
};

struct PropagationGrid {
    double z_min = 0.0, z_max = 0.0;  // m
    int n_z = 0;
    double dt = 0.0;     // s; must equal dz / v_g (characteristic alignment)
    double t_end = 0.0;  // s
    int snapshot_stride = 1;

    double dz() const { return (z_max - z_min) / (n_z - 1); }
};

// Characteristic-aligned grid: dt = dz / v_g exactly.
PropagationGrid make_grid(double z_min, double z_max, int n_z, double t_end,
                          double v_g, int snapshot_stride = 1);

struct InjectedPulse {
    enum class Shape { sech, gaussian };
    Shape shape = Shape::sech;
    double T0 = 0.0;          // s
    double peak_power = 0.0;  // W
    double detuning = 0.0;    // omega - omega_p, rad/s
    double t_center = 0.0;    // s
};

struct BoundarySpec {
    enum class Kind { open, injected };
    Kind kind = Kind::open;
    InjectedPulse pulse{};
};

struct Trajectory {
    std::vector<EnvelopeState> snapshots;
    bool failed = false;
    std::string failure;  // "NonFiniteField" on blow-up
};

Trajectory propagate(const CmeCoefficients& coeffs, const EnvelopeState& initial,
                     const PropagationGrid& grid, const BoundarySpec& boundary = {},
                     ExecutionPolicy policy = ExecutionPolicy::parallel);

struct DiagnosticRecord {
    double t;
    double energy;    // sum(|A+|^2 + |A-|^2) dz, J-like (W s)
    double centroid;  // power-weighted z, m
    double peak;      // max |A|, sqrt(W)
};

std::vector<DiagnosticRecord> diagnostics(const Trajectory& traj);

// L2 distance between a state and a reference sampled on the same grid.
double l2_distance(const EnvelopeState& a, const EnvelopeState& b);
double l2_norm(const EnvelopeState& a);

// min over spatial shifts of ||state - reference(z - shift)||_2, with the
// reference evaluated by the callable (z, arrays via linear interpolation).
double min_shift_l2(const EnvelopeState& state, const EnvelopeState& reference);

} // namespace eitgap

#endif
