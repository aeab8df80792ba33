/**
 * @file experiment.cpp
 * @brief Coupled run of vorticity, material line and test patch, and the verdicts.
 */
#include "nrlab/recurrence_lab.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <memory>

namespace nrlab {

Verdicts compute_verdicts(const std::vector<SeriesPoint>& series, double epsilon, double margin) {
    Verdicts v{true, true, true, true, false};
    const double t_regime = kRegimeTime + margin;
    for (const SeriesPoint& p : series) {
        const bool in_regime = p.t > t_regime;
        v.regime_reached = v.regime_reached || in_regime;
        if (in_regime && !(p.c1_distance > epsilon)) v.distance = false;
        if (in_regime && !p.intersects_mminus) v.intersect_mminus = false;
        if (!(p.winding >= 3.0 * p.t / 8.0)) v.winding = false;
        if (!(p.sup_v < 0.25)) v.v_bound = false;
    }
    return v;
}

std::vector<std::pair<double, double>> distance_series(const std::vector<SimState>& snapshots,
                                                       const ScalarField& xi) {
    std::vector<std::pair<double, double>> out;
    out.reserve(snapshots.size());
    for (const SimState& s : snapshots) {
        if (!(s.omega.grid() == xi.grid())) throw std::invalid_argument("distance_series: grid mismatch");
        out.emplace_back(s.t, c1_norm(s.omega - xi));
    }
    return out;
}

ExperimentReport nonrecurrence_experiment(const ExperimentConfig& config, const ScalarField& perturbation,
                                          const ExperimentHooks& hooks) {
    const PolarGrid grid = config.sim.grid();
    const ScalarField xi = build_xi(config.xi, grid);
    if (!(perturbation.grid() == grid)) throw std::invalid_argument("nonrecurrence: perturbation grid mismatch");
    const double eps = config.xi.epsilon;
    const double p_norm = c1_norm(perturbation);
    if (!(p_norm < eps)) {
        throw std::invalid_argument("nonrecurrence: c1_norm(perturbation) = " + std::to_string(p_norm) +
                                    " is not < epsilon = " + std::to_string(eps));
    }

    ExperimentReport rep;
    rep.config = config;
    MaterialLine line = MaterialLine::initial(config.line_markers, config.line_threshold, config.line_cap);
    std::optional<Patch> patch;
    if (config.patch_until > 0.0) {
        patch = Patch::polygon(config.patch_corners, config.patch_markers);
        patch->threshold = config.patch_threshold;
    }

    std::shared_ptr<const GridVelocity> prev;
    double prev_t = 0.0;
    double sup_acc = 0.0;
    const double dt = config.sim.dt;

    auto observer = [&](const SimState& s, const GridVelocity& vel, bool is_output) {
        auto cur = std::make_shared<const GridVelocity>(vel);
        if (prev) {
            const GridVelocityField u(prev_t, prev, s.t, cur);
            line.advance(u, prev_t, s.t, dt, config.sim.exec);
            if (patch && prev_t < config.patch_until - 1e-12) patch->advance(u, prev_t, s.t, dt, config.sim.exec);
        }
        sup_acc = std::max(sup_acc, s.diag.sup_v);
        rep.max_sup_v = std::max(rep.max_sup_v, s.diag.sup_v);
        if (is_output) {
            line.refine();
            SeriesPoint p;
            p.t = s.t;
            p.c1_distance = c1_norm(s.omega - xi);
            p.winding = winding_separation(line);
            p.sup_v = sup_acc;
            p.enstrophy = s.diag.enstrophy;
            p.energy = s.diag.energy;
            p.omega_min = s.diag.omega_min;
            p.omega_max = s.diag.omega_max;
            p.circulation = s.diag.circulation;
            p.intersects_mminus = line.intersects_left_half();
            p.markers = line.markers.size();
            if (patch && s.t <= config.patch_until + 1e-9) {
                patch->refine();
                p.patch_area = patch_area(*patch);
            }
            if (p.intersects_mminus && !rep.first_intersection) rep.first_intersection = s.t;
            rep.series.push_back(p);
            sup_acc = 0.0;
            if (hooks.on_output) hooks.on_output(s, line);
        }
        prev = std::move(cur);
        prev_t = s.t;
    };

    const std::vector<SimState> snaps = run(config.sim, xi + perturbation, observer);
    if (snaps.size() >= 2) rep.conservation = conservation_report(snaps);
    rep.initial_c1_distance = rep.series.empty() ? 0.0 : rep.series.front().c1_distance;
    rep.verdicts = compute_verdicts(rep.series, eps, config.distance_margin);
    if (!rep.verdicts.regime_reached) {
        rep.warnings.push_back("t_end does not exceed 8pi/3 + margin: the distance and M_- verdicts hold vacuously");
    }
    if (!rep.verdicts.v_bound) rep.warnings.push_back("measured sup|v| reached 1/4: the speed assumption fails");
    return rep;
}

std::string report_json(const ExperimentReport& r) {
    using nlohmann::ordered_json;
    const ExperimentConfig& c = r.config;
    ordered_json params;
    params["epsilon"] = c.xi.epsilon;
    params["amplitude"] = c.xi.amplitude;
    params["theta_plateau"] = c.xi.theta_plateau;
    params["theta_support"] = c.xi.theta_support;
    params["n_r"] = c.sim.n_r;
    params["n_theta"] = c.sim.n_theta;
    params["dt"] = c.sim.dt;
    params["t_end"] = c.sim.t_end;
    params["output_every"] = c.sim.output_every;
    params["sigma1"] = c.sim.sigma1;
    params["convention"] = c.sim.convention == JumpConvention::FlippedInner ? "flipped_inner" : "verbatim";
    params["distance_margin"] = c.distance_margin;
    params["regime_time"] = kRegimeTime;
    params["line_markers"] = c.line_markers;
    params["line_threshold"] = c.line_threshold;
    params["patch_until"] = c.patch_until;

    ordered_json series = ordered_json::array();
    for (const SeriesPoint& p : r.series) {
        ordered_json e;
        e["t"] = p.t;
        e["c1_distance"] = p.c1_distance;
        e["winding"] = p.winding;
        e["sup_v"] = p.sup_v;
        e["enstrophy"] = p.enstrophy;
        e["energy"] = p.energy;
        e["omega_min"] = p.omega_min;
        e["omega_max"] = p.omega_max;
        e["circulation"] = p.circulation;
        e["intersects_mminus"] = p.intersects_mminus;
        e["markers"] = p.markers;
        if (p.patch_area) e["patch_area"] = *p.patch_area;
        series.push_back(std::move(e));
    }

    ordered_json verdicts;
    verdicts["distance"] = r.verdicts.distance;
    verdicts["winding"] = r.verdicts.winding;
    verdicts["intersect_mminus"] = r.verdicts.intersect_mminus;
    verdicts["v_bound"] = r.verdicts.v_bound;
    verdicts["regime_reached"] = r.verdicts.regime_reached;
    verdicts["all"] = r.verdicts.all();
    verdicts["checked_on"] = "sampled output times only";

    ordered_json summary;
    summary["first_intersection"] = r.first_intersection ? ordered_json(*r.first_intersection) : ordered_json();
    summary["max_sup_v"] = r.max_sup_v;
    summary["initial_c1_distance"] = r.initial_c1_distance;
    summary["energy_drift"] = r.conservation.energy_drift;
    summary["enstrophy_drift"] = r.conservation.enstrophy_drift;
    summary["range_violation"] = r.conservation.range_violation;
    summary["range_violation_rel"] = r.conservation.range_violation_rel;

    ordered_json j;
    j["params"] = std::move(params);
    j["series"] = std::move(series);
    j["verdicts"] = std::move(verdicts);
    j["summary"] = std::move(summary);
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
}

}  // namespace nrlab
