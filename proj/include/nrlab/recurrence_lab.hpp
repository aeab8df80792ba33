/**
 * @file recurrence_lab.hpp
 * @brief The non-recurrence experiment: initial data xi + p, the coupled run with the
 *        material line l_t tracked alongside, and the four verdicts.
 */
#pragma once

#include "nrlab/euler_sim.hpp"
#include "nrlab/geometry.hpp"
#include "nrlab/lagrangian.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrlab {

/// Time after which the line must reach the left half plane.
inline constexpr double kRegimeTime = 8.0 * kPi / 3.0;

class ConstraintViolation : public std::invalid_argument {
public:
    ConstraintViolation(std::string constraint, const std::string& detail)
        : std::invalid_argument(constraint + ": " + detail), constraint_(std::move(constraint)) {}
    const std::string& constraint() const { return constraint_; }

private:
    std::string constraint_;
};

struct XiSpec {
    double epsilon = 0.1;
    double amplitude = 0.25;
    double theta_plateau = 0.1;
    double theta_support = 1.5;

    /// amplitude 2.5 eps with the default profile.
    static XiSpec with_epsilon(double eps);
};

/// chi(theta): 1 on |theta| <= plateau, 0 on |theta| >= support (theta taken mod 2pi
/// into (-pi, pi]), degree-5 smoothstep in between.
double xi_profile(const XiSpec& spec, double theta);

/// xi(r, theta) = amplitude * chi(theta). Throws ConstraintViolation naming the
/// failing constraint: "support" (> pi/2 or plateau >= support), "amplitude"
/// (<= 2 eps), "vanish_on_left_half", "c1_norm" (>= 4 eps), "epsilon" (<= 0).
ScalarField build_xi(const XiSpec& spec, const PolarGrid& grid);

struct ExperimentConfig {
    XiSpec xi;
    SimConfig sim;                 ///< sim.t_end, sim.output_every and sim.sigma1 apply
    double distance_margin = 0.0;  ///< verdict (a) and (c) apply for t > 8pi/3 + margin
    std::size_t line_markers = 51;
    double line_threshold = 0.02;
    std::size_t line_cap = 1000000;
    /// Patch advected alongside until patch_until (no patch when <= 0).
    double patch_until = 0.0;
    std::vector<Vec2> patch_corners{{1.2, 0.0}, {1.4, 0.0}, {1.4, 0.2}, {1.2, 0.2}};
    std::size_t patch_markers = 512;
    double patch_threshold = 0.004;

    ExperimentConfig() { sim.t_end = 25.1; }
};

struct SeriesPoint {
    double t = 0.0;
    double c1_distance = 0.0;
    double winding = 0.0;
    double sup_v = 0.0;  ///< max over every step since the previous output
    double enstrophy = 0.0;
    double energy = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;
    double circulation = 0.0;
    bool intersects_mminus = false;
    std::size_t markers = 0;
    std::optional<double> patch_area;
};

struct Verdicts {
    bool distance = false;
    bool winding = false;
    bool intersect_mminus = false;
    bool v_bound = false;
    bool regime_reached = false;  ///< some sampled t > 8pi/3 + margin

    bool all() const { return distance && winding && intersect_mminus && v_bound; }
    friend bool operator==(const Verdicts&, const Verdicts&) = default;
};

/// Verdicts from a stored series.
Verdicts compute_verdicts(const std::vector<SeriesPoint>& series, double epsilon, double margin = 0.0);

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<SeriesPoint> series;
    Verdicts verdicts;
    ConservationReport conservation;
    std::optional<double> first_intersection;  ///< earliest sampled t with l_t in M_-
    double max_sup_v = 0.0;
    double initial_c1_distance = 0.0;
    std::vector<std::string> warnings;
};

/// Report JSON `{params, series, verdicts, ...}` (deterministic).
std::string report_json(const ExperimentReport& report);

struct ExperimentHooks {
    /// Called at every output time with the state and the line.
    std::function<void(const SimState&, const MaterialLine&)> on_output;
};

/// Precondition: c1_norm(perturbation) < epsilon (std::invalid_argument otherwise).
ExperimentReport nonrecurrence_experiment(const ExperimentConfig& config, const ScalarField& perturbation,
                                          const ExperimentHooks& hooks = {});

/// c1_norm(omega(t) - xi) per snapshot. Throws std::invalid_argument on grid mismatch.
std::vector<std::pair<double, double>> distance_series(const std::vector<SimState>& snapshots,
                                                       const ScalarField& xi);

/// SVG of the annulus: omega heat layer, both circles and the polyline.
std::string annulus_svg(const ScalarField& omega, std::span<const Vec2> line, double t);

}  // namespace nrlab
