#include "nrlab/biot_savart.hpp"
#include "nrlab/random_fields.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace nrlab;
using nrlab::test::Gen;

namespace {

// Radial oracle for the total tangential speed with sigma1 = 0:
// u_theta(r) = (1/r) int_1^r s omega(s) ds, by Simpson's rule.
template <class W>
double radial_oracle(W&& omega, double r) {
    if (r == 1.0) return 0.0;
    return nrlab::test::simpson([&](double s) { return s * omega(s); }, 1.0, r) / r;
}

double tangential(const Vec2& v, const Vec2& x) { return dot(v, perp(x)) / norm(x); }

std::vector<Vec2> sample_radii(int n_radii, double theta) {
    std::vector<Vec2> pts;
    for (int a = 0; a < n_radii; ++a) pts.push_back(from_polar(1.0 + a / double(n_radii - 1), theta));
    return pts;
}

// Discrete divergence of (v_r, v_theta) at interior nodes, centered differences.
double divergence_sup(const GridVelocity& v) {
    const PolarGrid& g = v.grid;
    double d = 0.0;
    for (int i = 1; i + 1 < g.n_r(); ++i) {
        const double r = g.r(i);
        for (int j = 0; j < g.n_theta(); ++j) {
            const int jp = (j + 1) % g.n_theta(), jm = (j + g.n_theta() - 1) % g.n_theta();
            const double drv = (g.r(i + 1) * v.v_r[g.index(i + 1, j)] - g.r(i - 1) * v.v_r[g.index(i - 1, j)]) /
                               (2.0 * g.dr());
            const double dtv = (v.v_theta[g.index(i, jp)] - v.v_theta[g.index(i, jm)]) / (2.0 * g.dtheta());
            d = std::max(d, std::abs((drv + dtv) / r));
        }
    }
    return d;
}

}  // namespace

TEST_CASE("eval_vhat examples") {
    const std::vector<Vec2> pts{{1, 0}, {0, 2}, {-1.5, 0.3}};
    for (const Vec2& v : eval_vhat(Circulation{0.0}, pts)) CHECK(v == Vec2{0, 0});
    const auto v = eval_vhat(Circulation{kTwoPi}, pts);
    CHECK(v[0].x == doctest::Approx(0.0));
    CHECK(v[0].y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v[1].x == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(v[1].y == doctest::Approx(0.0));
    const std::vector<Vec2> bad{{0.5, 0.0}};
    CHECK_THROWS_AS(eval_vhat(Circulation{1.0}, bad), OutsideAnnulus);
    const std::vector<Vec2> bad2{{2.5, 0.0}};
    CHECK_THROWS_AS(eval_vtilde(ScalarField::zeros(PolarGrid(8, 16)), bad2), OutsideAnnulus);
}

TEST_CASE("eval_vtilde: zero field and linearity") {
    const PolarGrid g(16, 64);
    Gen gen(1);
    std::vector<Vec2> pts;
    for (int k = 0; k < 40; ++k) pts.push_back(gen.point());
    pts.push_back(g.node(3, 5));
    for (const Vec2& v : eval_vtilde(ScalarField::zeros(g), pts)) CHECK(v == Vec2{0, 0});
    const ScalarField w = random_band_limited(g, 4);
    const auto a = eval_vtilde(w, pts);
    const auto b = eval_vtilde(w.scaled(2.0), pts);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        CHECK(norm(b[k] - 2.0 * a[k]) <= 1e-13 * std::max(1.0, norm(b[k])));
        CHECK(std::isfinite(a[k].x));
    }
}

TEST_CASE("vtilde quadrature: serial and OpenMP paths are bitwise identical") {
    const PolarGrid g(16, 64);
    const ScalarField w = random_band_limited(g, 9);
    Gen gen(2);
    std::vector<Vec2> pts = g.nodes();
    for (int k = 0; k < 50; ++k) pts.push_back(gen.point());
    const auto s = vtilde_quadrature(w, pts, Exec::Serial);
    const auto p = vtilde_quadrature(w, pts, Exec::OpenMP);
    for (std::size_t k = 0; k < pts.size(); ++k) CHECK(s[k] == p[k]);
}

TEST_CASE("FFT grid operator agrees with the direct sum at the nodes") {
    const PolarGrid g(12, 48);
    const ScalarField w = random_band_limited(g, 13);
    const VtildeGridOperator op(g);
    std::vector<double> vr(g.size()), vt(g.size());
    op.apply(w, vr, vt);
    const auto direct = vtilde_quadrature(w, g.nodes(), Exec::Serial);
    double err = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double c = g.cos_theta(g.col(k)), s = g.sin_theta(g.col(k));
        err = std::max(err, std::abs(vr[k] - (direct[k].x * c + direct[k].y * s)));
        err = std::max(err, std::abs(vt[k] - (-direct[k].x * s + direct[k].y * c)));
        scale = std::max(scale, norm(direct[k]));
    }
    CHECK(err <= 1e-12 * scale);
}

TEST_CASE("solve_velocity: omega = 1, sigma1 = 0 matches the radial oracle") {
    const PolarGrid g(32, 128);
    const ScalarField one = ScalarField::from_function(g, [](double, double) { return 1.0; });
    const auto pts = sample_radii(16, 0.37);
    const VelocitySamples s = solve_velocity(one, Circulation{0.0}, pts);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double r = norm(pts[k]);
        const double u = radial_oracle([](double) { return 1.0; }, r);
        CHECK(std::abs(tangential(s.total[k], pts[k]) - u) <= 1e-3 * std::max(u, 1e-3));
        CHECK(std::abs(dot(s.total[k], pts[k])) / r < 1e-8);
    }
    CHECK(std::abs(tangential(s.total.front(), pts.front())) < 1e-8);
    CHECK(tangential(s.total.back(), pts.back()) == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("solve_velocity: radial vorticity profiles against 1D quadrature") {
    // Second order in the grid spacing, measured against sup |omega| = max |u| scale.
    auto error = [](const PolarGrid& g, auto&& prof) {
        const ScalarField w = ScalarField::from_function(g, [&](double r, double) { return prof(r); });
        const auto pts = sample_radii(11, 1.1);
        const VelocitySamples s = solve_velocity(w, Circulation{0.0}, pts);
        double err = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k)
            err = std::max(err, std::abs(tangential(s.total[k], pts[k]) - radial_oracle(prof, norm(pts[k]))));
        return err / c0_norm(w);
    };
    auto check_profile = [&](auto&& prof) {
        const double coarse = error(PolarGrid(32, 128), prof);
        const double fine = error(PolarGrid(64, 256), prof);
        CHECK(fine < 1e-3);
        CHECK(fine < coarse / 3.0);
    };
    check_profile([](double r) { return r * r; });
    check_profile([](double r) { return std::cos(4.0 * r); });
}

TEST_CASE("solve_velocity: zero vorticity gives u* for sigma1 = 2 pi") {
    const PolarGrid g(16, 64);
    Gen gen(5);
    std::vector<Vec2> pts;
    for (int k = 0; k < 30; ++k) pts.push_back(gen.point());
    const VelocitySamples s = solve_velocity(ScalarField::zeros(g), Circulation{kTwoPi}, pts);
    for (std::size_t k = 0; k < pts.size(); ++k) {
        CHECK(s.v_tilde[k] == Vec2{0, 0});
        CHECK(norm(s.grad_phi[k]) < 1e-14);
        CHECK(norm(s.total[k] - rotation_field(pts[k])) < 1e-14);
    }
}

TEST_CASE("solve_velocity: decomposition, linearity, boundary conditions") {
    const PolarGrid g(24, 96);
    const VelocitySolver solver(g);
    Gen gen(17);
    for (int trial = 0; trial < 4; ++trial) {
        const ScalarField w = random_band_limited(g, 100 + trial);
        std::vector<Vec2> pts;
        for (int k = 0; k < 20; ++k) pts.push_back(gen.point());
        for (int j = 0; j < g.n_theta(); ++j) {
            pts.push_back(g.node(0, j));
            pts.push_back(g.node(g.n_r() - 1, j));
        }
        const double sigma = gen.uniform(-3.0, 3.0);
        const VelocitySamples s = solver.solve(w, Circulation{sigma}, pts);
        const double bound = 1e-6 * std::max(1.0, c0_norm(w));
        double circ = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            CHECK(s.total[k] == s.v_hat[k] + s.v_tilde[k] + s.grad_phi[k]);
            if (k < 20) continue;
            // Boundary nodes alternate inner, outer.
            const double r = norm(pts[k]);
            CHECK(std::abs(dot(s.total[k], pts[k])) / r <= bound);
            if (k % 2 == 0) circ += tangential(s.total[k], pts[k]) * g.dtheta();
        }
        CHECK(std::abs(circ - sigma) <= 1e-8 * std::max(1.0, std::abs(sigma)));

        const VelocitySamples s0 = solver.solve(w, Circulation{0.0}, pts);
        const double alpha = gen.uniform(-4.0, 4.0);
        const VelocitySamples sa = solver.solve(w.scaled(alpha), Circulation{0.0}, pts);
        double err = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            err = std::max(err, norm(sa.total[k] - alpha * s0.total[k]));
            scale = std::max(scale, norm(sa.total[k]));
        }
        CHECK(err <= 1e-12 * scale);
    }
}

TEST_CASE("solve_grid: agrees with the point solver, circulation and divergence") {
    double prev_div = 1e9;
    for (int n : {32, 64}) {
        const PolarGrid g(n, 4 * n);
        const VelocitySolver solver(g);
        const ScalarField w = bump_field(g);
        const GridVelocity gv = solver.solve_grid(w, Circulation{kTwoPi});
        CHECK(gv.circulation() == doctest::Approx(kTwoPi).epsilon(1e-8));
        const double div = divergence_sup(gv);
        CHECK(div < prev_div);
        prev_div = div;
        if (n == 64) CHECK(div <= 1e-3 * c0_norm(w));

        std::vector<Vec2> pts;
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < g.size(); k += 37) {
            pts.push_back(g.node(k));
            idx.push_back(k);
        }
        const VelocitySamples s = solver.solve(w, Circulation{0.0}, pts);
        double err = 0.0;
        for (std::size_t m = 0; m < pts.size(); ++m) {
            const std::size_t k = idx[m];
            const double c = g.cos_theta(g.col(k)), sn = g.sin_theta(g.col(k));
            const Vec2 v{gv.v_r[k] * c - gv.v_theta[k] * sn, gv.v_r[k] * sn + gv.v_theta[k] * c};
            err = std::max(err, norm(v - s.total[m]));
        }
        CHECK(err < 1e-8);
    }
}

TEST_CASE("Lemma 3 ratio is stable under refinement") {
    std::vector<double> coarse, fine;
    for (int n : {32, 64}) {
        const PolarGrid g(n, 4 * n);
        const VelocitySolver solver(g);
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const ScalarField w = random_band_limited(g, seed);
            const double ratio = solver.solve_grid(w, Circulation{0.0}).sup_v() / c0_norm(w);
            (n == 32 ? coarse : fine).push_back(ratio);
        }
    }
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        CHECK(std::isfinite(fine[k]));
        CHECK(std::abs(fine[k] / coarse[k] - 1.0) < 0.05);
    }
}

TEST_CASE("VelocitySamples CSV header and rows") {
    const PolarGrid g(8, 16);
    const std::vector<Vec2> pts{{1.5, 0.0}, {0.0, -1.2}};
    const std::string csv = solve_velocity(ScalarField::zeros(g), Circulation{kTwoPi}, pts).to_csv();
    CHECK(csv.rfind("x,y,vhat_x,vhat_y,vtilde_x,vtilde_y,gphi_x,gphi_y,total_x,total_y\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
