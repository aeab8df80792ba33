/**
 * @file euler_sim.hpp
 * @brief Semi-Lagrangian transport of vorticity on the annulus,
 *        d_t omega + u . grad omega = 0 with u = v^ + v~ + grad phi.
 */
#pragma once

#include "nrlab/biot_savart.hpp"
#include "nrlab/geometry.hpp"
#include "nrlab/parallel.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrlab {

class CFLViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite vorticity after a step. The message carries the step, time and node.
class NumericalBlowup : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Speed bound used by the CFL check: |u*|_max + 1/4 on M.
inline constexpr double kCflSpeedBound = 1.25;

struct SimConfig {
    int n_r = 64;
    int n_theta = 256;
    double dt = 2e-3;
    double t_end = 0.0;
    double output_every = 0.1;
    double sigma1 = kTwoPi;
    JumpConvention convention = JumpConvention::FlippedInner;
    /// Clip each interpolated foot value to a value range: the initial [min, max] in
    /// run(), the range of the current field in a single advect/step.
    bool bounded = true;
    /// Test harness switch: advect by v^ alone (v forced to zero).
    bool background_only = false;
    Exec exec = Exec::OpenMP;

    /// Throws std::invalid_argument naming the offending parameter; throws
    /// CFLViolation if dt * 1.25 > 0.5 * min cell size.
    void validate() const;
    PolarGrid grid() const { return PolarGrid(n_r, n_theta); }
};

struct Diagnostics {
    double energy = 0.0;      ///< 1/2 int |u|^2 dA of the total velocity
    double enstrophy = 0.0;   ///< int omega^2 dA
    double omega_min = 0.0;
    double omega_max = 0.0;
    double circulation = 0.0; ///< of u on the inner circle
    double sup_v = 0.0;       ///< sup |v|, v = u - v^
    long projected_feet = 0;  ///< feet of the last step that left M and were projected
};

struct SimState {
    double t = 0.0;
    ScalarField omega;
    Circulation sigma1;
    Diagnostics diag;
};

/// Snapshot: ScalarField CSV at `csv_path` plus a JSON sidecar with the same stem.
void write_snapshot(const std::filesystem::path& csv_path, const SimState& state);
std::string snapshot_sidecar_json(const SimState& state);

class EulerSimulator {
public:
    explicit EulerSimulator(const SimConfig& config);

    const SimConfig& config() const { return config_; }
    const PolarGrid& grid() const { return grid_; }
    const VelocitySolver& solver() const { return solver_; }

    /// Velocity at all nodes for this vorticity (v = 0 when background_only).
    GridVelocity velocity(const ScalarField& omega) const;

    Diagnostics diagnose(const ScalarField& omega, const GridVelocity& vel) const;

    /// One semi-Lagrangian step with the velocity frozen at its value for `omega`.
    /// dt may be negative (backward transport). With config().bounded the feet are
    /// clipped to `clip`, or to [min, max] of omega when it is not given.
    ScalarField advect(const ScalarField& omega, const GridVelocity& vel, double dt, long* projected = nullptr,
                       std::optional<std::pair<double, double>> clip = {}) const;

    /// Velocity solve and one step; the returned state carries the diagnostics of
    /// the new vorticity (a second velocity solve).
    SimState step(const SimState& state, double dt) const;

private:
    SimConfig config_;
    PolarGrid grid_;
    VelocitySolver solver_;
};

/// Called at every time level with the state (diagnostics filled) and the velocity
/// used for the step that follows it.
using StepObserver = std::function<void(const SimState&, const GridVelocity&, bool is_output)>;

/// Times t_n = min(n dt, t_end), n = 0..N with N = ceil(t_end / dt).
std::vector<double> time_levels(double dt, double t_end);

/// Runs to t_end and returns the snapshots at t = 0, every output_every and t_end.
std::vector<SimState> run(const SimConfig& config, const ScalarField& omega0, const StepObserver& observer = {});

struct ConservationReport {
    double energy_drift = 0.0;     ///< max_t |E(t) - E(0)| / |E(0)|
    double enstrophy_drift = 0.0;
    double range_violation = 0.0;  ///< max(0, max_t max|omega(t)| - max|omega(0)|)
    double range_violation_rel = 0.0;
};

/// Requires at least two snapshots.
ConservationReport conservation_report(const std::vector<SimState>& snapshots);

}  // namespace nrlab
