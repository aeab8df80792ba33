// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits 1 if
// any fails.
#include "nrlab/besov.hpp"
#include "nrlab/biot_savart.hpp"
#include "nrlab/boundary_integral.hpp"
#include "nrlab/euler_sim.hpp"
#include "nrlab/lagrangian.hpp"
#include "nrlab/measure_recurrence.hpp"
#include "nrlab/pendulum.hpp"
#include "nrlab/random_fields.hpp"
#include "nrlab/recurrence_lab.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <string>

using namespace nrlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("criterion %2d %-34s %s  %s\n", id, name, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

// 1 ----------------------------------------------------------------------------

void biot_savart_oracle() {
    const auto t0 = Clock::now();
    const PolarGrid g(64, 256);
    const ScalarField one = ScalarField::from_function(g, [](double, double) { return 1.0; });
    std::vector<Vec2> pts;
    for (int k = 1; k <= 16; ++k) pts.push_back(from_polar(1.0 + k / 16.0, 0.37 + 0.1 * k));
    const VelocitySamples s = solve_velocity(one, Circulation{0.0}, pts);
    double err = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double r = norm(pts[k]);
        const double exact = (r * r - 1.0) / (2.0 * r);
        const double ut = dot(s.total[k], perp(pts[k])) / r;
        err = std::max(err, std::abs(ut - exact) / exact);
    }
    const double secs = seconds_since(t0);
    // omega = r is not handled exactly by the quadrature: u_theta = (r^3 - 1) / (3 r).
    const ScalarField lin = ScalarField::from_function(g, [](double r, double) { return r; });
    const VelocitySamples sl = solve_velocity(lin, Circulation{0.0}, pts);
    double err_lin = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double r = norm(pts[k]);
        const double exact = (r * r * r - 1.0) / (3.0 * r);
        err_lin = std::max(err_lin, std::abs(dot(sl.total[k], perp(pts[k])) / r - exact) / exact);
    }
    report(1, "Biot-Savart radial oracle", err < 1e-3 && err_lin < 1e-3 && secs < 60.0,
           fmt("max rel err %.3e (omega = 1), %.3e (omega = r) at 16 radii, %.2f s", err, err_lin, secs));
}

// 2 ----------------------------------------------------------------------------

void velocity_bound_stability() {
    const VelocitySolver coarse(PolarGrid(64, 256)), fine(PolarGrid(128, 512));
    double worst = 0.0, lo = 1e300, hi = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ScalarField wc = random_band_limited(coarse.grid(), seed);
        const ScalarField wf = random_band_limited(fine.grid(), seed);
        const double rc = coarse.solve_grid(wc, Circulation{0.0}).sup_v() / c0_norm(wc);
        const double rf = fine.solve_grid(wf, Circulation{0.0}).sup_v() / c0_norm(wf);
        worst = std::max(worst, std::abs(rf - rc) / rc);
        lo = std::min(lo, rf);
        hi = std::max(hi, rf);
    }
    report(2, "velocity bound stability", worst < 0.05,
           fmt("20 fields, max change 64x256 -> 128x512 %.3e, ratio range [%.4f, %.4f]", worst, lo, hi));
}

// 3 ----------------------------------------------------------------------------

void boundary_integral() {
    // Manufactured density cos(theta) on the inner circle, data from a 4x finer operator.
    const int n = 128, fine = 4 * n;
    const BoundaryKernel kf = assemble_kernel(boundary_quadrature(Circle::Inner, fine), boundary_quadrature(Circle::Outer, fine));
    Eigen::VectorXd f0 = Eigen::VectorXd::Zero(2 * fine);
    for (int k = 0; k < fine; ++k) f0[k] = std::cos(kTwoPi * k / fine);
    const Eigen::VectorXd gf = moment_operator(kf, JumpConvention::FlippedInner) * f0;
    NeumannData data;
    for (int k = 0; k < n; ++k) {
        data.inner.push_back(gf[4 * k]);
        data.outer.push_back(gf[fine + 4 * k]);
    }
    const BoundaryKernel k = assemble_kernel(boundary_quadrature(Circle::Inner, n), boundary_quadrature(Circle::Outer, n));
    const BoundaryDensity f = solve_moment(k, data);
    double err = 0.0;
    for (int j = 0; j < n; ++j) {
        err = std::max(err, std::abs(f.inner()[j] - std::cos(kTwoPi * j / n)));
        err = std::max(err, std::abs(f.outer()[j]));
    }

    // End to end: u . n on both circles for a random vorticity.
    const PolarGrid g(64, 256);
    const ScalarField w = random_band_limited(g, 7);
    std::vector<Vec2> pts;
    for (int j = 0; j < g.n_theta(); ++j) {
        pts.push_back(g.node(0, j));
        pts.push_back(g.node(g.n_r() - 1, j));
    }
    const VelocitySamples s = VelocitySolver(g).solve(w, Circulation{kTwoPi}, pts);
    double resid = 0.0;
    for (std::size_t q = 0; q < pts.size(); ++q) resid = std::max(resid, std::abs(dot(s.total[q], pts[q])) / norm(pts[q]));
    report(3, "boundary integral", err < 1e-4 && resid < 1e-4,
           fmt("manufactured max err %.3e at n_b = 128, end-to-end |u.n| %.3e", err, resid));
}

// 4, 5, 6, 10 --------------------------------------------------------------------

struct HeadlineRun {
    ExperimentReport report;
    std::string json;
    std::string final_omega_csv;
    std::string final_line_csv;
    double seconds = 0.0;
};

HeadlineRun headline() {
    ExperimentConfig c;
    c.sim.n_r = 64;
    c.sim.n_theta = 256;
    c.sim.dt = 2e-3;
    c.sim.t_end = 25.1;
    c.xi = XiSpec::with_epsilon(0.1);
    c.patch_until = 10.0;
    const ScalarField p = random_perturbation(c.sim.grid(), 1, 0.05);
    HeadlineRun h;
    ExperimentHooks hooks;
    hooks.on_output = [&](const SimState& s, const MaterialLine& l) {
        if (s.t < c.sim.t_end - 1e-9) return;
        h.final_omega_csv = s.omega.to_csv();
        h.final_line_csv = std::string(kMaterialLineCsvHeader) + l.csv_rows(s.t);
    };
    const auto t0 = Clock::now();
    h.report = nonrecurrence_experiment(c, p, hooks);
    h.seconds = seconds_since(t0);
    h.json = report_json(h.report);
    return h;
}

void headline_criteria(const HeadlineRun& a) {
    const Verdicts& v = a.report.verdicts;
    ExperimentConfig neg;
    neg.sim.n_r = 64;
    neg.sim.n_theta = 256;
    neg.sim.dt = 2e-3;
    neg.sim.t_end = 9.5;
    neg.sim.sigma1 = 0.0;
    const ExperimentReport nr = nonrecurrence_experiment(neg, ScalarField::zeros(neg.sim.grid()));
    const bool ok4 = v.all() && v.regime_reached && a.seconds < 1800.0 && !nr.verdicts.winding;
    report(4, "headline non-recurrence run", ok4,
           fmt("distance %s winding %s intersect %s v_bound %s, max sup|v| %.4f, %.0f s; sigma1 = 0 winding %s",
               v.distance ? "pass" : "fail", v.winding ? "pass" : "fail", v.intersect_mminus ? "pass" : "fail",
               v.v_bound ? "pass" : "fail", a.report.max_sup_v, a.seconds, nr.verdicts.winding ? "pass" : "fail"));

    const ConservationReport& cr = a.report.conservation;
    report(5, "conservation", cr.energy_drift < 0.01 && cr.enstrophy_drift < 0.01 && cr.range_violation_rel < 0.01,
           fmt("energy drift %.3e, enstrophy drift %.3e, range violation %.3e", cr.energy_drift, cr.enstrophy_drift,
               cr.range_violation_rel));

    double area_drift = 0.0, last_t = 0.0;
    for (const SeriesPoint& p : a.report.series) {
        if (!p.patch_area) continue;
        area_drift = std::max(area_drift, std::abs(*p.patch_area - 0.04) / 0.04);
        last_t = p.t;
    }
    report(6, "patch area preservation", area_drift < 5e-3 && last_t >= 10.0 - 1e-9,
           fmt("max rel drift %.3e over [0, %.1f]", area_drift, last_t));
}

void determinism(const HeadlineRun& a) {
    const HeadlineRun b = headline();
    const bool same = a.json == b.json && a.final_omega_csv == b.final_omega_csv && a.final_line_csv == b.final_line_csv &&
                      !a.final_omega_csv.empty();
    report(10, "determinism", same,
           fmt("report %zu bytes, omega CSV %zu bytes, line CSV %zu bytes%s", a.json.size(), a.final_omega_csv.size(),
               a.final_line_csv.size(), same ? ", identical" : ", differ"));
}

// 7 ----------------------------------------------------------------------------

double elliptic_period(double h) {
    const double k = std::sin(0.5 * std::acos(-h));
    return 4.0 * simpson([&](double phi) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(phi) * std::sin(phi)); }, 0.0,
                         std::numbers::pi / 2);
}

void pendulum() {
    int librations = 0, rotations = 0;
    double worst_period = 0.0, worst_growth = 1e300, drift = 0.0;
    bool ok = true;
    for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
            const PendulumState lib{-2.6 + 0.58 * a, -1.4 + 0.31 * b, 0.0};
            const double h = pendulum_energy(lib);
            if (h < 0.99 && !(lib.x == 0.0 && lib.y == 0.0)) {
                ++librations;
                const RecurrenceResult r = recurrence_time(lib, 1e-2, 200.0);
                if (!r.time) {
                    ok = false;
                } else {
                    const double tp = elliptic_period(h);
                    worst_period = std::max(worst_period, std::abs(*r.time - tp) / tp);
                }
            }
            const PendulumState rot{-2.6 + 0.58 * a, (b % 2 ? -1.0 : 1.0) * (2.05 + 0.2 * b), 0.0};
            const double hr = pendulum_energy(rot);
            if (hr > 1.01) {
                ++rotations;
                const double vmin = std::sqrt(2.0 * (hr - 1.0));
                for (const PendulumState& s : pendulum_trajectory(rot, 1e-3, 100.0, 1000)) {
                    if (s.t == 0.0) continue;
                    worst_growth = std::min(worst_growth, std::abs(s.x - rot.x) / (vmin * s.t));
                }
                ok = ok && !recurrence_time(rot, 0.1, 100.0, 1e-3, RecurrenceMetric::Unwrapped).time;
            }
        }
    }
    for (const PendulumState& s : {PendulumState{0.0, 0.5, 0}, PendulumState{2.0, 0.0, 0}, PendulumState{0.0, 1.98, 0},
                                   PendulumState{0.0, 2.5, 0}, PendulumState{1.0, 3.5, 0}})
        drift = std::max(drift, max_energy_drift(s, 1e-3, 1e4));
    ok = ok && worst_period < 0.02 && worst_growth >= 0.9 && drift < 1e-5;
    report(7, "pendulum dichotomy", ok,
           fmt("%d librations max period err %.2e, %d rotations min growth ratio %.4f, energy drift %.2e over t = 1e4",
               librations, worst_period, rotations, worst_growth, drift));
}

// 8 ----------------------------------------------------------------------------

void discrete_recurrence() {
    std::mt19937_64 rng(2024);
    bool ok = true;
    std::size_t points = 0;
    for (int sys = 0; sys < 100; ++sys) {
        const std::size_t n = 1 + uniform_below(rng, 200);
        const FiniteSystem f = FiniteSystem::random(n, 1000 + sys);
        std::set<std::size_t> e;
        const std::size_t m = 1 + uniform_below(rng, n);
        for (std::size_t k = 0; k < m; ++k) e.insert(uniform_below(rng, n));
        const std::vector<std::size_t> ev(e.begin(), e.end());
        for (const auto& [x, k] : recurrence_statistics(f, ev)) {
            std::size_t y = f(x), brute = 0;
            for (std::size_t j = 1; j <= n && !brute; ++j, y = f(y))
                if (e.count(y)) brute = j;
            ok = ok && k == brute && k >= 1 && k <= n;
            ++points;
        }
        const std::size_t n_max = 10;
        const AnSetReport rep = an_set_check(f, ev, n_max);
        ok = ok && rep.ok();
        for (std::size_t j = 0; j <= n_max; ++j) {
            std::size_t count = 0;
            for (std::size_t x = 0; x < n; ++x) {
                std::size_t y = x;
                for (std::size_t s = 0; s < j; ++s) y = f(y);
                for (std::size_t s = 0; s < n; ++s, y = f(y)) {
                    if (e.count(y)) {
                        ++count;
                        break;
                    }
                }
            }
            ok = ok && rep.measures[j] == Measure{count, n} && rep.measures[j] == rep.measures[0];
        }
    }
    report(8, "discrete recurrence", ok, fmt("100 permutations, %zu return times checked against brute force", points));
}

// 9 ----------------------------------------------------------------------------

void besov_suite() {
    using cd = std::complex<double>;
    double mode_err = 0.0;
    for (const auto& [k1, k2, s] : {std::tuple{1, 0, 1.0}, std::tuple{4, 0, 1.0}, std::tuple{3, -5, 0.5},
                                    std::tuple{0, 7, 2.0}, std::tuple{-9, 2, 1.5}, std::tuple{2, 2, 0.0}}) {
        const TorusField w =
            TorusField::from_function(64, [&](double x1, double x2) { return std::exp(cd(0.0, k1 * x1 + k2 * x2)); });
        const double r = std::hypot(k1, k2);
        int shell = 0;
        while (std::pow(2.0, shell + 1) <= r) ++shell;
        mode_err = std::max(mode_err, std::abs(besov_norm(w, s) - std::pow(2.0, shell * s)) / std::pow(2.0, shell * s));
        const double sob = std::pow(1.0 + r * r, s / 2.0);
        mode_err = std::max(mode_err, std::abs(sobolev_norm(w, s) - sob) / sob);
    }

    std::mt19937_64 rng(99);
    auto uni = [&](double a, double b) { return a + (b - a) * unit_uniform(rng); };
    bool embed = true;
    double parseval = 0.0;
    for (int t = 0; t < 100; ++t) {
        std::vector<std::tuple<int, int, double, double>> terms;
        for (int q = 0; q < 8; ++q)
            terms.emplace_back(int(uniform_below(rng, 31)) - 15, int(uniform_below(rng, 31)) - 15, uni(-1, 1), uni(0, 6.3));
        const TorusField w = TorusField::from_function(64, [&](double x1, double x2) {
            double v = 0.0;
            for (const auto& [a, b, c, ph] : terms) v += c * std::cos(a * x1 + b * x2 + ph);
            return cd(v, 0.0);
        });
        const EmbeddingReport e = embedding_check(w, uni(0.0, 2.0), uni(0.1, 1.0));
        embed = embed && e.lower_holds && e.upper_holds;
        const double l2 = grid_l2_norm(w);
        parseval = std::max(parseval, std::abs(sobolev_norm(w, 0.0) - l2) / std::max(l2, 1e-300));
    }
    report(9, "Besov suite", mode_err < 1e-12 && embed && parseval < 1e-10,
           fmt("single-mode err %.2e, embeddings %s on 100 fields, Parseval err %.2e", mode_err,
               embed ? "hold" : "FAIL", parseval));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    biot_savart_oracle();
    velocity_bound_stability();
    boundary_integral();
    const HeadlineRun first = headline();
    headline_criteria(first);
    pendulum();
    discrete_recurrence();
    besov_suite();
    determinism(first);
    std::printf("%d criteria failed, total %.0f s\n", failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
