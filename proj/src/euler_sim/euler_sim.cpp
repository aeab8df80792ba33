/**
 * @file euler_sim.cpp
 */
#include "nrlab/euler_sim.hpp"

#include "nrlab/io.hpp"
#include "nrlab/polar_interp.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

namespace nrlab {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SimConfig: ") + what);
}

}  // namespace

void SimConfig::validate() const {
    require(n_r >= 8, "n_r must be >= 8");
    require(n_theta >= 16 && n_theta % 2 == 0, "n_theta must be even and >= 16");
    require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
    require(std::isfinite(t_end) && t_end >= 0.0, "t_end must be >= 0");
    require(std::isfinite(output_every) && output_every > 0.0, "output_every must be positive");
    require(std::isfinite(sigma1), "sigma1 must be finite");
    const double h = grid().min_cell_size();
    if (dt * kCflSpeedBound > 0.5 * h) {
        char msg[200];
        std::snprintf(msg, sizeof msg, "SimConfig: dt = %g violates dt * %.2f <= 0.5 * %g (max dt %g)", dt,
                      kCflSpeedBound, h, 0.5 * h / kCflSpeedBound);
        throw CFLViolation(msg);
    }
}

EulerSimulator::EulerSimulator(const SimConfig& config)
    : config_(config), grid_((config.validate(), config.grid())), solver_(grid_, config.convention) {}

GridVelocity EulerSimulator::velocity(const ScalarField& omega) const {
    if (!config_.background_only) return solver_.solve_grid(omega, Circulation{config_.sigma1});
    GridVelocity gv(grid_);
    gv.sigma1 = config_.sigma1;
    const std::size_t n = grid_.size();
    gv.vtilde_r.assign(n, 0.0);
    gv.vtilde_theta.assign(n, 0.0);
    gv.gphi_r.assign(n, 0.0);
    gv.gphi_theta.assign(n, 0.0);
    gv.v_r.assign(n, 0.0);
    gv.v_theta.assign(n, 0.0);
    return gv;
}

Diagnostics EulerSimulator::diagnose(const ScalarField& omega, const GridVelocity& vel) const {
    Diagnostics d;
    const int nt = grid_.n_theta();
    for (int i = 0; i < grid_.n_r(); ++i) {
        double e = 0.0, z = 0.0;
        for (int j = 0; j < nt; ++j) {
            const std::size_t k = grid_.index(i, j);
            const double ut = vel.total_theta(k);
            e += vel.v_r[k] * vel.v_r[k] + ut * ut;
            z += omega[k] * omega[k];
        }
        d.energy += 0.5 * grid_.area_weight(i) * e;
        d.enstrophy += grid_.area_weight(i) * z;
    }
    d.omega_min = omega.min();
    d.omega_max = omega.max();
    d.circulation = vel.circulation();
    d.sup_v = vel.sup_v();
    return d;
}

ScalarField EulerSimulator::advect(const ScalarField& omega, const GridVelocity& vel, double dt,
                                   long* projected, std::optional<std::pair<double, double>> clip) const {
    const PolarInterpolator interp(grid_);
    const int nt = grid_.n_theta();
    const double c = vel.sigma1 / kTwoPi;
    const double h = -dt;
    const double max_disp = grid_.min_cell_size() * (1.0 + 1e-9);
    const std::span<const double> vr = vel.v_r;
    const std::span<const double> vt = vel.v_theta;
    const std::span<const double> w = omega.values();

    if (!clip) {
        const auto [wlo, whi] = std::minmax_element(w.begin(), w.end());
        clip = std::pair{*wlo, *whi};
    }
    const double lo = clip->first, hi = clip->second;

    std::vector<double> out(grid_.size());
    std::vector<unsigned char> proj(grid_.size(), 0);
    std::atomic<bool> cfl_bad{false};

    auto rhs = [&](double r, double th, double& dr, double& dth) {
        const auto st = interp.stencil(r, th);
        const double rc = std::clamp(r, Annulus::r_inner, Annulus::r_outer);
        dr = interp.eval(vr, st);
        dth = (interp.eval(vt, st) + c / rc) / rc;
    };

    for_each_index(config_.exec, grid_.size(), [&](std::size_t k) {
        const double r0 = grid_.r(static_cast<int>(k / nt));
        const double t0 = grid_.theta(static_cast<int>(k % nt));
        double a1, b1, a2, b2, a3, b3, a4, b4;
        rhs(r0, t0, a1, b1);
        rhs(r0 + 0.5 * h * a1, t0 + 0.5 * h * b1, a2, b2);
        rhs(r0 + 0.5 * h * a2, t0 + 0.5 * h * b2, a3, b3);
        rhs(r0 + h * a3, t0 + h * b3, a4, b4);
        double rf = r0 + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        const double tf = t0 + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        if (std::hypot(rf - r0, 0.5 * (rf + r0) * (tf - t0)) > max_disp) cfl_bad = true;
        if (rf < Annulus::r_inner || rf > Annulus::r_outer) {
            rf = std::clamp(rf, Annulus::r_inner, Annulus::r_outer);
            proj[k] = 1;
        }
        const auto st = interp.stencil(rf, tf);
        const double v = interp.eval(w, st);
        out[k] = config_.bounded ? std::clamp(v, lo, hi) : v;
    });
    if (cfl_bad) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "semi-Lagrangian step dt = %g moved a foot point more than one cell (%g)", dt,
                      grid_.min_cell_size());
        throw CFLViolation(msg);
    }
    if (projected) {
        long n = 0;
        for (unsigned char p : proj) n += p;
        *projected = n;
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (!std::isfinite(out[k])) {
            char msg[200];
            std::snprintf(msg, sizeof msg, "non-finite vorticity at node (%d, %d) after step dt = %g; input range [%g, %g]",
                          grid_.row(k), grid_.col(k), dt, omega.min(), omega.max());
            throw NumericalBlowup(msg);
        }
    }
    return ScalarField(grid_, std::move(out));
}

SimState EulerSimulator::step(const SimState& state, double dt) const {
    const GridVelocity vel = velocity(state.omega);
    long projected = 0;
    ScalarField next = advect(state.omega, vel, dt, &projected);
    const GridVelocity vnext = velocity(next);
    SimState s{state.t + dt, std::move(next), state.sigma1, {}};
    s.diag = diagnose(s.omega, vnext);
    s.diag.projected_feet = projected;
    return s;
}

std::vector<double> time_levels(double dt, double t_end) {
    const long n = t_end <= 0.0 ? 0 : static_cast<long>(std::ceil(t_end / dt - 1e-9));
    std::vector<double> t(n + 1);
    for (long k = 0; k < n; ++k) t[k] = k * dt;
    t[n] = t_end;
    return t;
}

std::vector<SimState> run(const SimConfig& config, const ScalarField& omega0, const StepObserver& observer) {
    const EulerSimulator sim(config);
    if (!(omega0.grid() == sim.grid())) throw std::invalid_argument("run: initial vorticity is on a different grid");
    const std::vector<double> levels = time_levels(config.dt, config.t_end);
    const long n_steps = static_cast<long>(levels.size()) - 1;
    const long every = std::max(1L, std::lround(config.output_every / config.dt));

    std::vector<SimState> snapshots;
    ScalarField omega = omega0;
    // A fixed clip range: clipping to each step's own range would wear down smooth peaks.
    const std::pair<double, double> range{omega0.min(), omega0.max()};
    long projected = 0;
    for (long n = 0; n <= n_steps; ++n) {
        const GridVelocity vel = sim.velocity(omega);
        SimState state{levels[n], omega, Circulation{config.sigma1}, sim.diagnose(omega, vel)};
        state.diag.projected_feet = projected;
        const bool is_output = n % every == 0 || n == n_steps;
        if (observer) observer(state, vel, is_output);
        if (n == n_steps) {
            snapshots.push_back(std::move(state));
            break;
        }
        try {
            omega = sim.advect(omega, vel, levels[n + 1] - levels[n], &projected, range);
        } catch (const NumericalBlowup& e) {
            char dump[300];
            std::snprintf(dump, sizeof dump,
                          " [step %ld, t = %.6g, enstrophy %.6g, energy %.6g, sup|v| %.6g]", n, state.t,
                          state.diag.enstrophy, state.diag.energy, state.diag.sup_v);
            throw NumericalBlowup(e.what() + std::string(dump));
        }
        if (is_output) snapshots.push_back(std::move(state));
    }
    return snapshots;
}

ConservationReport conservation_report(const std::vector<SimState>& snapshots) {
    if (snapshots.size() < 2) throw std::invalid_argument("conservation_report: needs at least two snapshots");
    const Diagnostics& d0 = snapshots.front().diag;
    auto rel = [](double a, double a0) {
        const double d = std::abs(a - a0);
        return a0 != 0.0 ? d / std::abs(a0) : d;
    };
    const double range0 = std::max(std::abs(d0.omega_min), std::abs(d0.omega_max));
    ConservationReport r;
    for (const SimState& s : snapshots) {
        r.energy_drift = std::max(r.energy_drift, rel(s.diag.energy, d0.energy));
        r.enstrophy_drift = std::max(r.enstrophy_drift, rel(s.diag.enstrophy, d0.enstrophy));
        const double m = std::max(std::abs(s.diag.omega_min), std::abs(s.diag.omega_max));
        r.range_violation = std::max(r.range_violation, m - range0);
    }
    r.range_violation_rel = range0 > 0.0 ? r.range_violation / range0 : r.range_violation;
    return r;
}

std::string snapshot_sidecar_json(const SimState& state) {
    nlohmann::ordered_json j;
    j["t"] = state.t;
    j["energy"] = state.diag.energy;
    j["enstrophy"] = state.diag.enstrophy;
    j["omega_min"] = state.diag.omega_min;
    j["omega_max"] = state.diag.omega_max;
    j["circulation"] = state.diag.circulation;
    return j.dump(2) + "\n";
}

void write_snapshot(const std::filesystem::path& csv_path, const SimState& state) {
    write_file_atomic(csv_path, state.omega.to_csv());
    std::filesystem::path side = csv_path;
    side.replace_extension(".json");
    write_file_atomic(side, snapshot_sidecar_json(state));
}

}  // namespace nrlab
