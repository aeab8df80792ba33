/**
 * @file biot_savart.hpp
 * @brief Velocity from vorticity on the annulus: v = v^ + v~ + grad phi.
 *
 *  - v^ = (sigma1 / 2pi) |x|^-2 (-x2, x1): carries the circulation on the inner circle.
 *  - v~ = (1/2pi) int_M |x - y|^-2 omega(y) (-(x2 - y2), x1 - y1) dy: free-space
 *    Biot-Savart velocity of omega extended by zero.
 *  - grad phi: harmonic correction restoring v . n = 0 (boundary_integral).
 *
 * The volume integral uses the grid area weights. The quadrature cell containing
 * the target is excluded, and the missing near-field is compensated by singularity
 * subtraction against the closed-form velocity of uniform vorticity on M:
 *
 *   v~(x) ~ sum_{q != cell(x)} w_q K(x - y_q) (omega_q - omega(x)) + omega(x) U(x).
 *
 * Its discrete circulation on the inner circle, which vanishes in the continuum,
 * is removed with a multiple of u* = |x|^-2 (-x2, x1) (curl-free, divergence-free,
 * tangent to both circles).
 */
#pragma once

#include "nrlab/boundary_integral.hpp"
#include "nrlab/geometry.hpp"
#include "nrlab/parallel.hpp"

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrlab {

/// Circulation of the velocity on the inner circle.
struct Circulation {
    double sigma1 = 0.0;
};

class OutsideAnnulus : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// u*(x) = |x|^-2 (-x2, x1).
inline Vec2 rotation_field(const Vec2& x) {
    const double r2 = dot(x, x);
    return {-x.y / r2, x.x / r2};
}

/// Free-space velocity of omega = 1 on M (zero elsewhere); purely azimuthal with
/// u_theta(r) = 0 (r < 1), (r^2 - 1)/(2r) (1 <= r <= 2), 3/(2r) (r > 2).
Vec2 uniform_annulus_velocity(const Vec2& x);
double uniform_annulus_speed(double r);

std::vector<Vec2> eval_vhat(Circulation sigma1, std::span<const Vec2> points);

/// Volume quadrature with self-cell exclusion and compensation, without the
/// circulation correction. Serial and OpenMP paths are bitwise identical.
std::vector<Vec2> vtilde_quadrature(const ScalarField& omega, std::span<const Vec2> points,
                                    Exec exec = Exec::OpenMP);

/// Full v~ at arbitrary points of M (includes the circulation correction).
/// Throws OutsideAnnulus for points outside M.
std::vector<Vec2> eval_vtilde(const ScalarField& omega, std::span<const Vec2> points,
                              Exec exec = Exec::OpenMP);

/// Trapezoid circulation on the inner circle of a field given by its azimuthal
/// component on grid row 0.
double inner_circulation(const PolarGrid& grid, std::span<const double> u_theta_row0);

/**
 * Volume quadrature evaluated at every grid node at once.
 *
 * The grid is invariant under rotation by dtheta, so the sum over sources is a
 * circular convolution in theta for each (target ring, source ring) pair; it is
 * applied with real FFTs. Output is in the local polar frame of each node and is
 * equal to vtilde_quadrature at the nodes up to round-off.
 */
class VtildeGridOperator {
public:
    explicit VtildeGridOperator(const PolarGrid& grid);
    ~VtildeGridOperator();
    VtildeGridOperator(const VtildeGridOperator&) = delete;
    VtildeGridOperator& operator=(const VtildeGridOperator&) = delete;

    /// Fills polar components (v_r, v_theta) at all nodes (size grid.size()).
    void apply(const ScalarField& omega, std::span<double> v_r, std::span<double> v_theta) const;

    const PolarGrid& grid() const { return grid_; }

private:
    struct Impl;
    PolarGrid grid_;
    std::unique_ptr<Impl> impl_;
};

/// Velocity sampled at arbitrary points with its three components.
struct VelocitySamples {
    std::vector<Vec2> points;
    std::vector<Vec2> v_hat;
    std::vector<Vec2> v_tilde;
    std::vector<Vec2> grad_phi;
    std::vector<Vec2> total;

    /// CSV `x,y,vhat_x,vhat_y,vtilde_x,vtilde_y,gphi_x,gphi_y,total_x,total_y`.
    std::string to_csv() const;
};

/// Velocity at every grid node in local polar components.
struct GridVelocity {
    PolarGrid grid;
    double sigma1 = 0.0;
    std::vector<double> vtilde_r, vtilde_theta;
    std::vector<double> gphi_r, gphi_theta;
    std::vector<double> v_r, v_theta;  ///< v = v~ + grad phi (excludes v^)
    double circulation_defect = 0.0;   ///< removed from v~ (inner-circle circulation)
    double moment_residual = 0.0;
    double moment_sup = 0.0;           ///< sup |f| of the moment

    explicit GridVelocity(const PolarGrid& g) : grid(g) {}

    /// Total azimuthal speed (v^ + v) at node k.
    double total_theta(std::size_t k) const { return v_theta[k] + sigma1 / (kTwoPi * grid.r(grid.row(k))); }
    double sup_v() const;
    /// Trapezoid circulation of the total velocity on the inner circle.
    double circulation() const;
};

class VelocitySolver {
public:
    explicit VelocitySolver(const PolarGrid& grid, JumpConvention convention = JumpConvention::FlippedInner);

    /// v at all grid nodes (FFT convolution path). Cost O(n_r^2 n_theta) per call.
    GridVelocity solve_grid(const ScalarField& omega, Circulation sigma1) const;

    /// All three components at arbitrary points (direct-sum path).
    VelocitySamples solve(const ScalarField& omega, Circulation sigma1, std::span<const Vec2> points,
                          Exec exec = Exec::OpenMP) const;

    /// Moment f for this vorticity from the direct-sum v~ . n at the boundary nodes.
    BoundaryDensity solve_density(const ScalarField& omega, Exec exec = Exec::OpenMP) const;

    /// Neumann data -v~ . n on the two circles from v~ sampled at grid rows 0 and n_r - 1.
    NeumannData neumann_data(std::span<const double> vtilde_r) const;

    /// grad phi at all grid nodes (product integration, FFT in theta).
    void grad_phi_grid(const BoundaryDensity& f, std::span<double> g_r, std::span<double> g_theta) const;

    const PolarGrid& grid() const { return grid_; }
    const MomentSolver& moment_solver() const { return moments_; }
    const VtildeGridOperator& vtilde_operator() const { return vtilde_; }

private:
    PolarGrid grid_;
    VtildeGridOperator vtilde_;
    MomentSolver moments_;
};

/// One-shot convenience over VelocitySolver::solve.
VelocitySamples solve_velocity(const ScalarField& omega, Circulation sigma1, std::span<const Vec2> points);

}  // namespace nrlab
