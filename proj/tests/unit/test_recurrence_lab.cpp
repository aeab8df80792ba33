#include "nrlab/random_fields.hpp"
#include "nrlab/recurrence_lab.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace nrlab;

namespace {

ExperimentConfig coarse(double t_end) {
    ExperimentConfig c;
    c.sim.n_r = 24;
    c.sim.n_theta = 96;
    c.sim.dt = 0.01;
    c.sim.t_end = t_end;
    return c;
}

std::string constraint_of(const XiSpec& spec) {
    try {
        build_xi(spec, PolarGrid(32, 128));
    } catch (const ConstraintViolation& e) {
        return e.constraint();
    }
    return "";
}

}  // namespace

TEST_CASE("build_xi: default profile satisfies the three constraints") {
    const PolarGrid g(64, 256);
    const ScalarField xi = build_xi(XiSpec{}, g);
    CHECK(c0_norm(xi) == 0.25);
    CHECK(c1_norm(xi) < 0.4);
    // Max angular slope of the smoothstep: amplitude * (15/8) / (support - plateau) at r = 1.
    CHECK(c1_norm(xi) <= 0.25 * 1.875 / 1.4 + 1e-3);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (g.node(k).x < 0.0) CHECK(xi[k] == 0.0);
    }
    for (int i = 0; i < g.n_r(); ++i) CHECK(xi(i, 0) == 0.25);
}

TEST_CASE("build_xi: each violated constraint is named") {
    XiSpec s;
    s.amplitude = 0.15;
    CHECK(constraint_of(s) == "amplitude");
    s = XiSpec{};
    s.theta_support = 2.0;
    CHECK(constraint_of(s) == "support");
    s = XiSpec{};
    s.theta_plateau = 1.6;
    CHECK(constraint_of(s) == "support");
    s = XiSpec{};
    s.epsilon = 0.0;
    CHECK(constraint_of(s) == "epsilon");
    s = XiSpec{};
    s.theta_support = 0.3;  // steep flank
    s.theta_plateau = 0.25;
    CHECK(constraint_of(s) == "c1_norm");
    CHECK(constraint_of(XiSpec::with_epsilon(0.05)) == "");
}

TEST_CASE("xi_profile is a monotone plateau bump") {
    const XiSpec s;
    CHECK(xi_profile(s, 0.0) == 1.0);
    CHECK(xi_profile(s, 0.1) == 1.0);
    CHECK(xi_profile(s, -0.05) == 1.0);
    CHECK(xi_profile(s, 1.5) == 0.0);
    CHECK(xi_profile(s, kPi) == 0.0);
    CHECK(xi_profile(s, kTwoPi) == 1.0);
    double prev = 1.0;
    for (int k = 0; k <= 200; ++k) {
        const double v = xi_profile(s, 0.1 + 1.4 * k / 200.0);
        CHECK(v <= prev);
        CHECK(v == doctest::Approx(xi_profile(s, -(0.1 + 1.4 * k / 200.0))));
        prev = v;
    }
    CHECK(xi_profile(s, 0.8) == doctest::Approx(0.5));
}

TEST_CASE("compute_verdicts on synthetic series") {
    std::vector<SeriesPoint> s;
    for (int k = 0; k <= 100; ++k) {
        SeriesPoint p;
        p.t = 0.1 * k;
        p.winding = 0.75 * p.t;
        p.c1_distance = p.t > 3.0 ? 0.3 : 0.0;
        p.intersects_mminus = p.t > 3.0;
        p.sup_v = 0.1;
        s.push_back(p);
    }
    Verdicts v = compute_verdicts(s, 0.1);
    CHECK(v.all());
    CHECK(v.regime_reached);
    s[90].c1_distance = 0.05;
    CHECK_FALSE(compute_verdicts(s, 0.1).distance);
    s[90].c1_distance = 0.3;
    s[50].winding = 0.0;
    CHECK_FALSE(compute_verdicts(s, 0.1).winding);
    s[50].winding = 0.75 * s[50].t;
    s[2].sup_v = 0.25;
    CHECK_FALSE(compute_verdicts(s, 0.1).v_bound);
    s[2].sup_v = 0.1;
    s[95].intersects_mminus = false;
    CHECK_FALSE(compute_verdicts(s, 0.1).intersect_mminus);
    // Past the margin nothing is sampled: vacuous.
    v = compute_verdicts(s, 0.1, 5.0);
    CHECK(v.distance);
    CHECK(v.intersect_mminus);
    CHECK_FALSE(v.regime_reached);
}

TEST_CASE("nonrecurrence_experiment: precondition on the perturbation") {
    const ExperimentConfig c = coarse(0.1);
    const ScalarField p = random_perturbation(c.sim.grid(), 3, 0.15);
    CHECK_THROWS_AS(nonrecurrence_experiment(c, p), std::invalid_argument);
}

TEST_CASE("nonrecurrence_experiment: short run is vacuous with a warning") {
    const ExperimentConfig c = coarse(1.0);
    const ScalarField p = random_perturbation(c.sim.grid(), 3, 0.05);
    const ExperimentReport r = nonrecurrence_experiment(c, p);
    CHECK(r.verdicts.distance);
    CHECK_FALSE(r.verdicts.regime_reached);
    REQUIRE_FALSE(r.warnings.empty());
    CHECK(r.series.front().c1_distance == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(r.initial_c1_distance == r.series.front().c1_distance);
    CHECK(r.series.size() == 11);
    for (std::size_t k = 1; k < r.series.size(); ++k) CHECK(r.series[k].t > r.series[k - 1].t);
    CHECK(compute_verdicts(r.series, c.xi.epsilon) == r.verdicts);
}

TEST_CASE("nonrecurrence_experiment: coarse run through the regime") {
    ExperimentConfig c = coarse(12.0);
    c.patch_until = 4.0;
    int outputs = 0;
    ExperimentHooks hooks;
    hooks.on_output = [&](const SimState&, const MaterialLine& l) {
        ++outputs;
        CHECK(l.markers.front().r == 1.0);
        CHECK(l.markers.back().r == 2.0);
    };
    const ExperimentReport r = nonrecurrence_experiment(c, ScalarField::zeros(c.sim.grid()), hooks);
    CHECK(outputs == static_cast<int>(r.series.size()));
    CHECK(r.verdicts.all());
    CHECK(r.verdicts.regime_reached);
    REQUIRE(r.first_intersection.has_value());
    CHECK(*r.first_intersection <= 1.1 * kRegimeTime);
    CHECK(r.max_sup_v < 0.25);
    CHECK(compute_verdicts(r.series, c.xi.epsilon) == r.verdicts);
    bool saw_patch = false;
    for (const SeriesPoint& p : r.series) {
        if (p.t <= 4.0 + 1e-9) {
            REQUIRE(p.patch_area.has_value());
            CHECK(std::abs(*p.patch_area - 0.04) / 0.04 < 5e-3);
            saw_patch = true;
        } else {
            CHECK_FALSE(p.patch_area.has_value());
        }
    }
    CHECK(saw_patch);
    // Distance exceeds 2 eps once the line carries xi values into M_-.
    CHECK(r.series.back().c1_distance > 0.2);

    const auto j = nlohmann::json::parse(report_json(r));
    for (const char* key : {"params", "series", "verdicts", "summary", "warnings"}) CHECK(j.contains(key));
    for (const char* key : {"t", "c1_distance", "winding", "sup_v", "enstrophy"}) CHECK(j["series"][0].contains(key));
    for (const char* key : {"distance", "winding", "intersect_mminus", "v_bound"}) CHECK(j["verdicts"].contains(key));
}

TEST_CASE("nonrecurrence_experiment: without background rotation the winding verdict fails") {
    ExperimentConfig c = coarse(9.0);
    c.sim.sigma1 = 0.0;
    const ExperimentReport r = nonrecurrence_experiment(c, ScalarField::zeros(c.sim.grid()));
    CHECK_FALSE(r.verdicts.winding);
}

TEST_CASE("nonrecurrence_experiment: report is reproducible byte for byte") {
    const ExperimentConfig c = coarse(0.5);
    const ScalarField p = random_perturbation(c.sim.grid(), 7, 0.02);
    CHECK(report_json(nonrecurrence_experiment(c, p)) == report_json(nonrecurrence_experiment(c, p)));
}

TEST_CASE("distance_series") {
    const PolarGrid g(16, 64);
    const ScalarField xi = build_xi(XiSpec{}, g);
    const ScalarField p = random_perturbation(g, 2, 0.05);
    std::vector<SimState> snaps{{0.0, xi + p, Circulation{kTwoPi}, {}}, {0.1, xi, Circulation{kTwoPi}, {}}};
    const auto d = distance_series(snaps, xi);
    CHECK(d[0].second == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(d[1].second == 0.0);
    CHECK(d[1].first == 0.1);
    CHECK_THROWS_AS(distance_series(snaps, build_xi(XiSpec{}, PolarGrid(16, 32))), std::invalid_argument);
}

TEST_CASE("annulus_svg draws both circles and the line") {
    const PolarGrid g(16, 64);
    const std::vector<Vec2> line{{1.0, 0.0}, {1.5, 0.1}, {2.0, 0.0}};
    const std::string svg = annulus_svg(build_xi(XiSpec{}, g), line, 1.25);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
    CHECK(svg.find("</svg>") != std::string::npos);
}
