/**
 * @file velocity_solver.cpp
 * @brief Full velocity reconstruction v^ + v~ + grad phi on the annulus.
 */
#include "nrlab/biot_savart.hpp"

#include "../fft.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace nrlab {

double GridVelocity::sup_v() const {
    double m = 0.0;
    for (std::size_t k = 0; k < v_r.size(); ++k) m = std::max(m, std::hypot(v_r[k], v_theta[k]));
    return m;
}

double GridVelocity::circulation() const {
    std::vector<double> ut(grid.n_theta());
    for (int j = 0; j < grid.n_theta(); ++j) ut[j] = total_theta(grid.index(0, j));
    return inner_circulation(grid, ut);
}

VelocitySolver::VelocitySolver(const PolarGrid& grid, JumpConvention convention)
    : grid_(grid), vtilde_(grid),
      moments_(boundary_quadrature(Circle::Inner, grid.n_theta()), boundary_quadrature(Circle::Outer, grid.n_theta()),
               convention) {}

NeumannData VelocitySolver::neumann_data(std::span<const double> vtilde_r) const {
    const int nt = grid_.n_theta();
    const int last = grid_.n_r() - 1;
    NeumannData g;
    g.inner.resize(nt);
    g.outer.resize(nt);
    for (int j = 0; j < nt; ++j) {
        g.inner[j] = -vtilde_r[grid_.index(0, j)];
        g.outer[j] = -vtilde_r[grid_.index(last, j)];
    }
    return g;
}

void VelocitySolver::grad_phi_grid(const BoundaryDensity& f, std::span<double> g_r, std::span<double> g_theta) const {
    using cd = std::complex<double>;
    const int nr = grid_.n_r();
    const int nt = grid_.n_theta();
    const int nm = nt / 2 + 1;
    const std::vector<cd> fi = real_dft_half(f.inner());
    const std::vector<cd> fo = real_dft_half(f.outer());

    std::vector<cd> xr(static_cast<std::size_t>(nr) * nm), xt(xr.size());
    for (int i = 0; i < nr; ++i) {
        const double r = grid_.r(i);
        const double ir = 1.0 / r;
        const double q = 0.5 * r;
        cd* rr = xr.data() + static_cast<std::size_t>(i) * nm;
        cd* tt = xt.data() + static_cast<std::size_t>(i) * nm;
        rr[0] = fi[0] * ir;
        tt[0] = 0.0;
        double ip = ir * ir;   // r^-(m+1)
        double qp = 1.0;       // q^(m-1)
        for (int m = 1; m < nm; ++m) {
            // inner circle: d_r -> r^-(m+1)/2, d_theta/r -> -i r^-(m+1)/2
            // outer circle: d_r -> -q^(m-1)/2, d_theta/r -> -i q^m / r
            rr[m] = 0.5 * ip * fi[m] - 0.5 * qp * fo[m];
            tt[m] = cd(0.0, -1.0) * (0.5 * ip * fi[m] + ir * qp * q * fo[m]);
            ip *= ir;
            qp *= q;
        }
    }
    detail::RealFFT rings(nt, nr);
    rings.backward(xr, g_r);
    rings.backward(xt, g_theta);
}

GridVelocity VelocitySolver::solve_grid(const ScalarField& omega, Circulation sigma1) const {
    const std::size_t n = grid_.size();
    GridVelocity gv(grid_);
    gv.sigma1 = sigma1.sigma1;
    gv.vtilde_r.resize(n);
    gv.vtilde_theta.resize(n);
    vtilde_.apply(omega, gv.vtilde_r, gv.vtilde_theta);

    const int nt = grid_.n_theta();
    const double c = inner_circulation(grid_, std::span<const double>(gv.vtilde_theta).subspan(0, nt)) / kTwoPi;
    gv.circulation_defect = c * kTwoPi;
    for (int i = 0; i < grid_.n_r(); ++i) {
        const double u = c / grid_.r(i);
        for (int j = 0; j < nt; ++j) gv.vtilde_theta[grid_.index(i, j)] -= u;
    }

    const BoundaryDensity f = moments_.solve(neumann_data(gv.vtilde_r));
    gv.moment_residual = f.residual;
    gv.moment_sup = f.sup();
    gv.gphi_r.resize(n);
    gv.gphi_theta.resize(n);
    grad_phi_grid(f, gv.gphi_r, gv.gphi_theta);

    gv.v_r.resize(n);
    gv.v_theta.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        gv.v_r[k] = gv.vtilde_r[k] + gv.gphi_r[k];
        gv.v_theta[k] = gv.vtilde_theta[k] + gv.gphi_theta[k];
    }
    return gv;
}

BoundaryDensity VelocitySolver::solve_density(const ScalarField& omega, Exec exec) const {
    if (!(omega.grid() == grid_)) throw std::invalid_argument("VelocitySolver: grid mismatch");
    // The circulation correction is tangential and does not enter v~ . n.
    const int nt = grid_.n_theta();
    const int last = grid_.n_r() - 1;
    std::vector<Vec2> bnodes(2 * static_cast<std::size_t>(nt));
    for (int j = 0; j < nt; ++j) {
        bnodes[j] = grid_.node(0, j);
        bnodes[nt + j] = grid_.node(last, j);
    }
    const std::vector<Vec2> vb = vtilde_quadrature(omega, bnodes, exec);
    NeumannData g;
    g.inner.resize(nt);
    g.outer.resize(nt);
    for (int j = 0; j < nt; ++j) {
        g.inner[j] = -(vb[j].x * grid_.cos_theta(j) + vb[j].y * grid_.sin_theta(j));
        g.outer[j] = -(vb[nt + j].x * grid_.cos_theta(j) + vb[nt + j].y * grid_.sin_theta(j));
    }
    return moments_.solve(g);
}

VelocitySamples VelocitySolver::solve(const ScalarField& omega, Circulation sigma1, std::span<const Vec2> points,
                                      Exec exec) const {
    const BoundaryDensity f = solve_density(omega, exec);
    VelocitySamples s;
    s.points.assign(points.begin(), points.end());
    s.v_hat = eval_vhat(sigma1, points);
    s.v_tilde = eval_vtilde(omega, points, exec);
    const SpectralLayer layer(f);
    s.grad_phi.resize(points.size());
    s.total.resize(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        s.grad_phi[k] = layer.grad(points[k]);
        s.total[k] = s.v_hat[k] + s.v_tilde[k] + s.grad_phi[k];
    }
    return s;
}

VelocitySamples solve_velocity(const ScalarField& omega, Circulation sigma1, std::span<const Vec2> points) {
    return VelocitySolver(omega.grid()).solve(omega, sigma1, points);
}

}  // namespace nrlab
