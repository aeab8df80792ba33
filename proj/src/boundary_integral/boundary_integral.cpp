/**
 * @file boundary_integral.cpp
 * @brief Single-layer Neumann solver on the two circles of the annulus.
 */
#include "nrlab/boundary_integral.hpp"

#include "../fft.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nrlab {

namespace {

const Vec2& node_of(const BoundaryQuadrature& q1, const BoundaryQuadrature& q2, int p) {
    return p < q1.n_b ? q1.nodes[p] : q2.nodes[p - q1.n_b];
}

double weight_of(const BoundaryQuadrature& q1, const BoundaryQuadrature& q2, int p) {
    return p < q1.n_b ? q1.weights[p] : q2.weights[p - q1.n_b];
}

void check_pair(const BoundaryQuadrature& q1, const BoundaryQuadrature& q2) {
    if (q1.circle != Circle::Inner || q2.circle != Circle::Outer) {
        throw std::invalid_argument("boundary_integral: expected (inner, outer) quadratures");
    }
}

void check_point(const Vec2& x) {
    if (!Annulus::contains(x, 1e-12)) {
        throw std::invalid_argument("boundary_integral: evaluation point outside the annulus");
    }
}

}  // namespace

BoundaryKernel assemble_kernel(const BoundaryQuadrature& quad1, const BoundaryQuadrature& quad2, Exec exec) {
    check_pair(quad1, quad2);
    const int n = quad1.n_b + quad2.n_b;
    BoundaryKernel k{quad1, quad2, Eigen::MatrixXd(n, n)};
    Eigen::MatrixXd& A = k.matrix;
    constexpr double inv2pi = 1.0 / kTwoPi;
    for_each_index(exec, static_cast<std::size_t>(n), [&](std::size_t ps) {
        const int p = static_cast<int>(ps);
        const Vec2& xp = node_of(quad1, quad2, p);
        const double Rp = p < quad1.n_b ? quad1.radius : quad2.radius;
        const Vec2 np{xp.x / Rp, xp.y / Rp};
        for (int q = 0; q < n; ++q) {
            const double wq = weight_of(quad1, quad2, q);
            if (q == p) {
                A(p, q) = wq / (4.0 * kPi * Rp);
                continue;
            }
            const Vec2 d = xp - node_of(quad1, quad2, q);
            A(p, q) = wq * inv2pi * dot(d, np) / dot(d, d);
        }
    });
    return k;
}

Eigen::MatrixXd moment_operator(const BoundaryKernel& kernel, JumpConvention convention) {
    Eigen::MatrixXd M = kernel.matrix;
    const int n1 = kernel.quad1.n_b;
    const double inner_jump = convention == JumpConvention::FlippedInner ? 0.5 : -0.5;
    for (int p = 0; p < M.rows(); ++p) M(p, p) += (p < n1) ? inner_jump : -0.5;
    return M;
}

double NeumannData::circle_flux(const BoundaryQuadrature& q, Circle c) const {
    const auto& g = c == Circle::Inner ? inner : outer;
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) s += q.weights[k] * g[k];
    return s;
}

double NeumannData::sup() const {
    double m = 0.0;
    for (double v : inner) m = std::max(m, std::abs(v));
    for (double v : outer) m = std::max(m, std::abs(v));
    return m;
}

Eigen::VectorXd NeumannData::stacked() const {
    Eigen::VectorXd g(inner.size() + outer.size());
    for (std::size_t k = 0; k < inner.size(); ++k) g[k] = inner[k];
    for (std::size_t k = 0; k < outer.size(); ++k) g[inner.size() + k] = outer[k];
    return g;
}

double BoundaryDensity::sup() const {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

std::string BoundaryDensity::to_csv() const {
    std::string out = "circle,theta,f\n";
    char buf[96];
    for (int k = 0; k < quad1.n_b; ++k) {
        std::snprintf(buf, sizeof buf, "inner,%.17g,%.17g\n", quad1.theta[k], f[k]);
        out += buf;
    }
    for (int k = 0; k < quad2.n_b; ++k) {
        std::snprintf(buf, sizeof buf, "outer,%.17g,%.17g\n", quad2.theta[k], f[quad1.n_b + k]);
        out += buf;
    }
    return out;
}

MomentSolver::MomentSolver(const BoundaryQuadrature& quad1, const BoundaryQuadrature& quad2,
                           JumpConvention convention)
    : MomentSolver(assemble_kernel(quad1, quad2), convention) {}

MomentSolver::MomentSolver(const BoundaryKernel& kernel, JumpConvention convention)
    : quad1_(kernel.quad1), quad2_(kernel.quad2), convention_(convention),
      system_(moment_operator(kernel, convention)) {
    // The threshold must be set before compute(): the rank is fixed there.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(system_.rows(), system_.cols());
    cod.setThreshold(1e-10);
    cod.compute(system_);
    pseudo_inverse_ = cod.pseudoInverse();
}

namespace {
constexpr double kResidualFloor = 1e-12;
}

BoundaryDensity MomentSolver::solve(const NeumannData& data) const {
    if (data.inner.size() != static_cast<std::size_t>(quad1_.n_b) ||
        data.outer.size() != static_cast<std::size_t>(quad2_.n_b)) {
        throw std::invalid_argument("solve_moment: data size does not match the boundary quadrature");
    }
    const Eigen::VectorXd g = data.stacked();
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        if (!std::isfinite(g[k])) throw std::invalid_argument("solve_moment: non-finite Neumann data");
    }
    const Eigen::VectorXd f = pseudo_inverse_ * g;
    const double residual = (system_ * f - g).norm();
    const double gnorm = g.norm();
    // Absolute floor: data at round-off level (e.g. radial vorticity) leaves a
    // round-off residual that is larger than the data itself.
    if (residual > 1e-6 * gnorm && residual > kResidualFloor) {
        char msg[160];
        std::snprintf(msg, sizeof msg,
                      "moment equation unsolvable: residual %.3e exceeds 1e-6 * |data| = %.3e "
                      "(Neumann data violates the zero-flux condition)",
                      residual, 1e-6 * gnorm);
        throw Unsolvable(msg, residual, gnorm);
    }
    BoundaryDensity out{quad1_, quad2_, std::vector<double>(f.data(), f.data() + f.size()), residual, gnorm};
    return out;
}

BoundaryDensity solve_moment(const BoundaryKernel& kernel, const NeumannData& data, JumpConvention convention) {
    return MomentSolver(kernel, convention).solve(data);
}

std::vector<Vec2> eval_grad_phi(const BoundaryDensity& density, std::span<const Vec2> points, Exec exec) {
    for (const Vec2& x : points) check_point(x);
    const BoundaryQuadrature& q1 = density.quad1;
    const BoundaryQuadrature& q2 = density.quad2;
    const int n = q1.n_b + q2.n_b;
    std::vector<Vec2> out(points.size());
    std::atomic<bool> coincident{false};
    for_each_index(exec, points.size(), [&](std::size_t k) {
        const Vec2 x = points[k];
        Vec2 acc;
        for (int q = 0; q < n; ++q) {
            const Vec2 d = x - node_of(q1, q2, q);
            const double d2 = dot(d, d);
            if (d2 == 0.0) {
                coincident.store(true, std::memory_order_relaxed);
                continue;
            }
            acc += (weight_of(q1, q2, q) * density.f[q] / d2) * d;
        }
        out[k] = (1.0 / kTwoPi) * acc;
    });
    if (coincident) throw std::invalid_argument("eval_grad_phi: point coincides with a quadrature node");
    return out;
}

std::vector<double> eval_potential(const BoundaryDensity& density, std::span<const Vec2> points, Exec exec) {
    for (const Vec2& x : points) check_point(x);
    const BoundaryQuadrature& q1 = density.quad1;
    const BoundaryQuadrature& q2 = density.quad2;
    const int n = q1.n_b + q2.n_b;
    std::vector<double> out(points.size());
    for_each_index(exec, points.size(), [&](std::size_t k) {
        double acc = 0.0;
        for (int q = 0; q < n; ++q) {
            const Vec2 d = points[k] - node_of(q1, q2, q);
            const double d2 = dot(d, d);
            if (d2 > 0.0) acc += weight_of(q1, q2, q) * density.f[q] * 0.5 * std::log(d2);
        }
        out[k] = acc / kTwoPi;
    });
    return out;
}

std::vector<std::complex<double>> real_dft_half(std::span<const double> samples) {
    const int n = static_cast<int>(samples.size());
    detail::RealFFT fft(n, 1);
    std::vector<std::complex<double>> out(n / 2 + 1);
    fft.forward(samples, out);
    for (auto& c : out) c /= static_cast<double>(n);
    return out;
}

SpectralLayer::SpectralLayer(const BoundaryDensity& density)
    : inner_(real_dft_half(density.inner())), outer_(real_dft_half(density.outer())),
      n_inner_(density.quad1.n_b), n_outer_(density.quad2.n_b) {
    if (n_inner_ % 2 != 0 || n_outer_ % 2 != 0) {
        throw std::invalid_argument("SpectralLayer: node counts must be even");
    }
}

namespace {

// Sum over the real trigonometric interpolant: c_0 g_0 + sum_{m=1}^{n/2-1} 2 Re(g_m c_m e^{i m th})
// + (Nyquist) Re(g_N c_N e^{i N th}). `g(m)` is the per-mode complex multiplier.
template <class G>
double modal_sum(const std::vector<std::complex<double>>& c, int n, double theta, G&& g) {
    const int half = n / 2;
    double acc = (g(0) * c[0]).real();
    const std::complex<double> step = std::polar(1.0, theta);
    std::complex<double> e = step;
    for (int m = 1; m < half; ++m) {
        acc += 2.0 * (g(m) * c[m] * e).real();
        e *= step;
    }
    acc += (g(half) * c[half] * e).real();
    return acc;
}

}  // namespace

std::pair<double, double> SpectralLayer::grad_polar(double r, double theta) const {
    using cd = std::complex<double>;
    const cd I(0.0, 1.0);
    // Inner circle (R = 1), r >= 1.
    const double ir = 1.0 / r;
    const double dr_in = modal_sum(inner_, n_inner_, theta, [&](int m) -> cd {
        return m == 0 ? cd(ir) : cd(0.5 * std::pow(ir, m + 1));
    });
    const double dt_in = modal_sum(inner_, n_inner_, theta, [&](int m) -> cd {
        return m == 0 ? cd(0.0) : -0.5 * I * std::pow(ir, m + 1);
    });
    // Outer circle (R = 2), r <= 2.
    const double q = 0.5 * r;
    const double dr_out = modal_sum(outer_, n_outer_, theta, [&](int m) -> cd {
        return m == 0 ? cd(0.0) : cd(-0.5 * std::pow(q, m - 1));
    });
    const double dt_out = modal_sum(outer_, n_outer_, theta, [&](int m) -> cd {
        return m == 0 ? cd(0.0) : -I * ir * std::pow(q, m);
    });
    return {dr_in + dr_out, dt_in + dt_out};
}

Vec2 SpectralLayer::grad(const Vec2& x) const {
    const double r = norm(x);
    const double theta = std::atan2(x.y, x.x);
    const auto [gr, gt] = grad_polar(r, theta);
    const double c = x.x / r, s = x.y / r;
    return {gr * c - gt * s, gr * s + gt * c};
}

double SpectralLayer::potential(const Vec2& x) const {
    using cd = std::complex<double>;
    const double r = norm(x);
    const double theta = std::atan2(x.y, x.x);
    const double ir = 1.0 / r;
    const double p_in = modal_sum(inner_, n_inner_, theta, [&](int m) -> cd {
        return m == 0 ? cd(std::log(r)) : cd(-std::pow(ir, m) / (2.0 * m));
    });
    const double q = 0.5 * r;
    const double p_out = 2.0 * modal_sum(outer_, n_outer_, theta, [&](int m) -> cd {
        return m == 0 ? cd(std::log(2.0)) : cd(-std::pow(q, m) / (2.0 * m));
    });
    return p_in + p_out;
}

std::vector<Vec2> eval_grad_phi_spectral(const BoundaryDensity& density, std::span<const Vec2> points) {
    for (const Vec2& x : points) check_point(x);
    const SpectralLayer layer(density);
    std::vector<Vec2> out(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) out[k] = layer.grad(points[k]);
    return out;
}

}  // namespace nrlab
