/**
 * @file biot_savart.cpp
 * @brief Circulation part and direct-sum volume part of the Biot-Savart velocity.
 */
#include "nrlab/biot_savart.hpp"

#include "nrlab/polar_interp.hpp"

#include <cmath>
#include <cstdio>

namespace nrlab {

namespace {

void require_in_annulus(std::span<const Vec2> points, const char* who) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!Annulus::contains(points[k], 1e-12)) {
            char msg[160];
            std::snprintf(msg, sizeof msg, "%s: point %zu (%.6g, %.6g) has |x| = %.9g outside [1, 2]", who, k,
                          points[k].x, points[k].y, norm(points[k]));
            throw OutsideAnnulus(msg);
        }
    }
}

}  // namespace

double uniform_annulus_speed(double r) {
    if (r < Annulus::r_inner) return 0.0;
    if (r > Annulus::r_outer) return 0.5 * (Annulus::r_outer * Annulus::r_outer - 1.0) / r;
    return 0.5 * (r * r - 1.0) / r;
}

Vec2 uniform_annulus_velocity(const Vec2& x) {
    const double r = norm(x);
    if (r == 0.0) return {};
    const double s = uniform_annulus_speed(r) / r;
    return {-x.y * s, x.x * s};
}

std::vector<Vec2> eval_vhat(Circulation sigma1, std::span<const Vec2> points) {
    require_in_annulus(points, "eval_vhat");
    const double c = sigma1.sigma1 / kTwoPi;
    std::vector<Vec2> out(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) out[k] = c * rotation_field(points[k]);
    return out;
}

std::vector<Vec2> vtilde_quadrature(const ScalarField& omega, std::span<const Vec2> points, Exec exec) {
    require_in_annulus(points, "eval_vtilde");
    const PolarGrid& g = omega.grid();
    const PolarInterpolator interp(g);
    const std::span<const double> w = omega.values();
    const int nr = g.n_r();
    const int nt = g.n_theta();
    constexpr double inv2pi = 1.0 / kTwoPi;

    std::vector<Vec2> out(points.size());
    for_each_index(exec, points.size(), [&](std::size_t k) {
        const Vec2 x = points[k];
        const auto [ic, jc] = g.containing_cell(x);
        const Vec2 xc = g.node(ic, jc);
        const double wx = dot(x - xc, x - xc) <= 1e-24 ? omega(ic, jc)
                                                       : interp(w, norm(x), std::atan2(x.y, x.x));
        Vec2 acc;
        for (int i = 0; i < nr; ++i) {
            const double ri = g.r(i);
            const double aw = g.area_weight(i);
            const double* row = w.data() + static_cast<std::size_t>(i) * nt;
            Vec2 ring;
            for (int j = 0; j < nt; ++j) {
                if (i == ic && j == jc) continue;
                const double dx = x.x - ri * g.cos_theta(j);
                const double dy = x.y - ri * g.sin_theta(j);
                const double s = (row[j] - wx) / (dx * dx + dy * dy);
                ring.x -= s * dy;
                ring.y += s * dx;
            }
            acc += aw * ring;
        }
        out[k] = inv2pi * acc + wx * uniform_annulus_velocity(x);
    });
    return out;
}

double inner_circulation(const PolarGrid& grid, std::span<const double> u_theta_row0) {
    double s = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j) s += u_theta_row0[j];
    return s * grid.dtheta() * Annulus::r_inner;
}

std::vector<Vec2> eval_vtilde(const ScalarField& omega, std::span<const Vec2> points, Exec exec) {
    const PolarGrid& g = omega.grid();
    std::vector<Vec2> ring0(g.n_theta());
    for (int j = 0; j < g.n_theta(); ++j) ring0[j] = g.node(0, j);
    const std::vector<Vec2> v0 = vtilde_quadrature(omega, ring0, exec);
    std::vector<double> ut(g.n_theta());
    for (int j = 0; j < g.n_theta(); ++j) ut[j] = -v0[j].x * g.sin_theta(j) + v0[j].y * g.cos_theta(j);
    const double c = inner_circulation(g, ut) / kTwoPi;

    std::vector<Vec2> out = vtilde_quadrature(omega, points, exec);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= c * rotation_field(points[k]);
    return out;
}

std::string VelocitySamples::to_csv() const {
    std::string out = "x,y,vhat_x,vhat_y,vtilde_x,vtilde_y,gphi_x,gphi_y,total_x,total_y\n";
    char buf[400];
    for (std::size_t k = 0; k < points.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      points[k].x, points[k].y, v_hat[k].x, v_hat[k].y, v_tilde[k].x, v_tilde[k].y,
                      grad_phi[k].x, grad_phi[k].y, total[k].x, total[k].y);
        out += buf;
    }
    return out;
}

}  // namespace nrlab
