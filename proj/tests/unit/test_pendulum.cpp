#include "nrlab/pendulum.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numbers>

using namespace nrlab;

namespace {

constexpr double pi = std::numbers::pi;

// Period 4 K(sin(a/2)) of a libration with energy H, a = arccos(-H); K by Simpson.
double elliptic_period(double h) {
    const double a = std::acos(-h);
    const double k = std::sin(0.5 * a);
    const double kk = nrlab::test::simpson(
        [&](double phi) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(phi) * std::sin(phi)); }, 0.0, pi / 2, 4000);
    return 4.0 * kk;
}

}  // namespace

TEST_CASE("pendulum_step examples") {
    const PendulumState e = pendulum_step({0.0, 0.0, 0.0}, 0.01);
    CHECK(e.x == 0.0);
    CHECK(e.y == 0.0);
    CHECK(e.t == 0.01);
    PendulumState s{pi, 0.0, 0.0};
    for (int k = 0; k < 1000; ++k) s = pendulum_step(s, 0.01);
    CHECK(std::abs(s.x - pi) < 1e-12);
    CHECK(std::abs(s.y) < 1e-12);
    CHECK_THROWS_AS(pendulum_step(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(pendulum_step(s, 0.2), std::invalid_argument);
}

TEST_CASE("pendulum energy stays bounded over a million steps") {
    PendulumState s{0.0, 0.5, 0.0};
    const double h0 = pendulum_energy(s);
    double drift = 0.0;
    for (int k = 0; k < 1000000; ++k) {
        s = pendulum_step(s, 1e-3);
        drift = std::max(drift, std::abs(pendulum_energy(s) - h0));
    }
    CHECK(drift < 1e-6);
    CHECK(max_energy_drift({0.0, 0.5, 0.0}, 1e-3, 1000.0) == doctest::Approx(drift).epsilon(0.5));
}

TEST_CASE("energy drift over t = 1e4 for |H| <= 5") {
    for (const PendulumState s : {PendulumState{0.3, 0.0, 0}, PendulumState{0.0, 1.9, 0}, PendulumState{0.0, 3.4, 0}}) {
        CHECK(std::abs(pendulum_energy(s)) <= 5.0);
        CHECK(max_energy_drift(s, 1e-3, 1e4) < 1e-5);
    }
}

TEST_CASE("one-step map has unit Jacobian") {
    const double h = 1e-5, dt = 0.05;
    for (const auto& [x, y] : {std::pair{0.3, 0.2}, std::pair{2.0, -1.0}, std::pair{-1.0, 2.5}}) {
        const auto fx = [&](double dx, double dy) { return pendulum_step({x + dx, y + dy, 0}, dt); };
        const PendulumState xp = fx(h, 0), xm = fx(-h, 0), yp = fx(0, h), ym = fx(0, -h);
        const double a = (xp.x - xm.x) / (2 * h), b = (yp.x - ym.x) / (2 * h);
        const double c = (xp.y - xm.y) / (2 * h), d = (yp.y - ym.y) / (2 * h);
        CHECK(std::abs(a * d - b * c - 1.0) < 1e-10);
    }
}

TEST_CASE("classify_orbit examples") {
    CHECK(classify_orbit({0.0, 0.5, 0}) == OrbitClass::Libration);
    CHECK(pendulum_energy({0.0, 0.5, 0}) == -0.875);
    CHECK(classify_orbit({0.0, 2.0, 0}) == OrbitClass::Separatrix);
    CHECK(classify_orbit({pi, 0.0, 0}) == OrbitClass::Separatrix);
    CHECK(classify_orbit({0.0, 2.5, 0}) == OrbitClass::Rotation);
    CHECK(std::string(orbit_class_name(OrbitClass::Rotation)) == "rotation");
}

TEST_CASE("recurrence time of a libration matches the elliptic-integral period") {
    const PendulumState s{0.0, 0.5, 0.0};
    const RecurrenceResult r = recurrence_time(s, 1e-2, 100.0);
    REQUIRE(r.time.has_value());
    const double period = elliptic_period(pendulum_energy(s));
    CHECK(std::abs(*r.time - period) / period < 0.02);
    CHECK(std::abs(*r.time - period) / period < 1e-5);
}

TEST_CASE("small oscillation has period 2 pi") {
    const RecurrenceResult r = recurrence_time({0.0, 0.01, 0.0}, 1e-3, 20.0);
    REQUIRE(r.time.has_value());
    CHECK(std::abs(*r.time - 2 * pi) / (2 * pi) < 1e-4);
}

TEST_CASE("rotation orbit never returns in the unwrapped metric") {
    const PendulumState s{0.0, 2.5, 0.0};
    const double t_max = 200.0;
    const RecurrenceResult r = recurrence_time(s, 0.1, t_max, 1e-3, RecurrenceMetric::Unwrapped);
    CHECK_FALSE(r.time.has_value());
    const double vmin = std::sqrt(2.0 * (pendulum_energy(s) - 1.0));
    CHECK(r.final_state.x >= s.x + vmin * t_max);
    // On the cylinder it does come back.
    CHECK(recurrence_time(s, 0.1, t_max, 1e-3, RecurrenceMetric::Wrapped).time.has_value());
    CHECK_THROWS_AS(recurrence_time(s, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("recurrence dichotomy on a small grid of initial conditions") {
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const PendulumState lib{-2.0 + a * 1.2, -0.6 + b * 0.4, 0.0};
            REQUIRE(pendulum_energy(lib) < 0.99);
            const RecurrenceResult r = recurrence_time(lib, 0.05, 100.0);
            REQUIRE(r.time.has_value());
            CHECK(std::abs(*r.time - elliptic_period(pendulum_energy(lib))) < 0.02 * elliptic_period(pendulum_energy(lib)));

            const PendulumState rot{-2.0 + a * 1.2, 2.2 + b * 0.5, 0.0};
            const double h = pendulum_energy(rot);
            REQUIRE(h > 1.01);
            const RecurrenceResult q = recurrence_time(rot, 0.05, 50.0, 1e-3, RecurrenceMetric::Unwrapped);
            CHECK_FALSE(q.time.has_value());
            CHECK(std::abs(q.final_state.x) > std::abs(rot.x) + 0.9 * std::sqrt(2.0 * (h - 1.0)) * 50.0);
        }
    }
}

TEST_CASE("trajectory CSV and phase portrait") {
    const auto traj = pendulum_trajectory({0.0, 1.0, 0.0}, 0.01, 1.0, 10);
    CHECK(traj.size() == 11);
    CHECK(traj.back().t == doctest::Approx(1.0));
    const std::string csv = trajectory_csv(traj);
    CHECK(csv.rfind("t,x,y,energy\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
    const std::string svg = phase_portrait_svg(0.05, 10.0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
}
