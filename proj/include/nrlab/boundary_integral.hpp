/**
 * @file boundary_integral.hpp
 * @brief Interior Neumann problem on the annulus by a single-layer potential.
 *
 * phi(x) = int_{G1 u G2} N(x, y) f(y) dl(y),  N(x, y) = ln|x - y| / (2 pi),
 * with the moment f solving the Nystrom-discretized second-kind equation
 *
 *     J f + A f = -v~ . n      on G1 u G2,   n = x / |x| on both circles,
 *
 * where A[p][q] = w_q d/dn_p N(x_p, x_q) and J is the jump term. On the outer
 * circle J = -1/2. On the inner circle n points into the fluid, so the limit
 * taken from inside M carries +1/2 (JumpConvention::FlippedInner, the default).
 * JumpConvention::Verbatim keeps -1/2 on both circles; it is retained so the
 * Neumann residual check can show that it does not reproduce the boundary data.
 */
#pragma once

#include "nrlab/geometry.hpp"
#include "nrlab/parallel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrlab {

enum class JumpConvention { Verbatim, FlippedInner };

/// Raised when the least-squares residual of the moment equation exceeds
/// 1e-6 * |data| (and an absolute 1e-12 floor), i.e. the data violates the zero-flux solvability condition.
class Unsolvable : public std::runtime_error {
public:
    Unsolvable(const std::string& what, double residual, double data_norm)
        : std::runtime_error(what), residual_(residual), data_norm_(data_norm) {}
    double residual() const { return residual_; }
    double data_norm() const { return data_norm_; }

private:
    double residual_;
    double data_norm_;
};

struct BoundaryKernel {
    BoundaryQuadrature quad1;  ///< inner circle
    BoundaryQuadrature quad2;  ///< outer circle
    Eigen::MatrixXd matrix;    ///< A, rows/cols ordered inner nodes then outer nodes
};

/// Dense double-layer-adjoint matrix. Diagonal entries use the smooth-curve limit
/// 1/(4 pi R) of the kernel on a circle of radius R.
BoundaryKernel assemble_kernel(const BoundaryQuadrature& quad1, const BoundaryQuadrature& quad2,
                               Exec exec = Exec::OpenMP);

/// J + A for the chosen jump convention.
Eigen::MatrixXd moment_operator(const BoundaryKernel& kernel, JumpConvention convention);

/// Right-hand side -v~ . n sampled at the boundary nodes.
struct NeumannData {
    std::vector<double> inner;
    std::vector<double> outer;

    /// |int_{G_j} g dl| for the given circle (trapezoid rule).
    double circle_flux(const BoundaryQuadrature& q, Circle c) const;
    double sup() const;
    Eigen::VectorXd stacked() const;
};

struct BoundaryDensity {
    BoundaryQuadrature quad1;
    BoundaryQuadrature quad2;
    std::vector<double> f;        ///< inner nodes then outer nodes
    double residual = 0.0;        ///< |(J + A) f - g|_2
    double data_norm = 0.0;       ///< |g|_2

    std::span<const double> inner() const { return {f.data(), static_cast<std::size_t>(quad1.n_b)}; }
    std::span<const double> outer() const {
        return {f.data() + quad1.n_b, static_cast<std::size_t>(quad2.n_b)};
    }
    double sup() const;

    /// CSV `circle,theta,f`.
    std::string to_csv() const;
};

/// Minimum-norm least-squares solver for (J + A) f = g, factorized once.
class MomentSolver {
public:
    MomentSolver(const BoundaryQuadrature& quad1, const BoundaryQuadrature& quad2,
                 JumpConvention convention = JumpConvention::FlippedInner);
    MomentSolver(const BoundaryKernel& kernel, JumpConvention convention = JumpConvention::FlippedInner);

    /// Throws Unsolvable when the residual exceeds both 1e-6 * |g| and 1e-12.
    BoundaryDensity solve(const NeumannData& data) const;

    const Eigen::MatrixXd& system() const { return system_; }
    const BoundaryQuadrature& quad1() const { return quad1_; }
    const BoundaryQuadrature& quad2() const { return quad2_; }
    JumpConvention convention() const { return convention_; }

private:
    BoundaryQuadrature quad1_;
    BoundaryQuadrature quad2_;
    JumpConvention convention_;
    Eigen::MatrixXd system_;
    Eigen::MatrixXd pseudo_inverse_;
};

BoundaryDensity solve_moment(const BoundaryKernel& kernel, const NeumannData& data,
                             JumpConvention convention = JumpConvention::FlippedInner);

/// grad phi(x) = (1/2pi) sum_q w_q (x - y_q)/|x - y_q|^2 f_q  (trapezoid rule).
/// Points must lie in M and must not coincide with a quadrature node.
std::vector<Vec2> eval_grad_phi(const BoundaryDensity& density, std::span<const Vec2> points,
                                Exec exec = Exec::OpenMP);

/// phi(x) by the trapezoid rule applied to the log kernel.
std::vector<double> eval_potential(const BoundaryDensity& density, std::span<const Vec2> points,
                                   Exec exec = Exec::OpenMP);

/// Product-integration evaluation of the single layer: the trigonometric
/// interpolant of f on each circle is integrated exactly against the log kernel
/// using ln|x - y| = ln r_> - sum_m (r_</r_>)^m cos(m(theta - theta')) / m.
/// Accurate up to and including the boundary circles (one-sided limit from M).
class SpectralLayer {
public:
    explicit SpectralLayer(const BoundaryDensity& density);

    /// grad phi in polar components (d_r, d_theta / r) at (r, theta), 1 <= r <= 2.
    std::pair<double, double> grad_polar(double r, double theta) const;
    Vec2 grad(const Vec2& x) const;
    double potential(const Vec2& x) const;

    /// Half-spectrum coefficients f^_m, m = 0..n_b/2, normalized so f = sum_m f^_m e^{i m theta}.
    const std::vector<std::complex<double>>& inner_modes() const { return inner_; }
    const std::vector<std::complex<double>>& outer_modes() const { return outer_; }

private:
    std::vector<std::complex<double>> inner_;
    std::vector<std::complex<double>> outer_;
    int n_inner_;
    int n_outer_;
};

std::vector<Vec2> eval_grad_phi_spectral(const BoundaryDensity& density, std::span<const Vec2> points);

/// Half-spectrum DFT of real samples, normalized by 1/n.
std::vector<std::complex<double>> real_dft_half(std::span<const double> samples);

}  // namespace nrlab
