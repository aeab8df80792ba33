/**
 * @file geometry.hpp
 * @brief The annulus 1 <= |x| <= 2, polar tensor grids, grid functions, boundary
 *        quadrature on the two circles, and the discrete C0 / C1 norms.
 */
#pragma once

#include "nrlab/vec2.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace nrlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// The fixed fluid domain. Radii are compile-time constants.
struct Annulus {
    static constexpr double r_inner = 1.0;
    static constexpr double r_outer = 2.0;

    static constexpr double area() { return kPi * (r_outer * r_outer - r_inner * r_inner); }
    static bool contains(const Vec2& p, double tol = 1e-12);
};

/// Uniform-in-r, uniform-in-theta tensor grid over the annulus.
///
/// Radial nodes r_i = 1 + i/(n_r - 1) include both circles; angular nodes are
/// theta_j = 2 pi j / n_theta. Node (i, j) is stored at index i * n_theta + j.
class PolarGrid {
public:
    /// Throws std::invalid_argument if n_r < 8, n_theta < 16 or n_theta is odd.
    PolarGrid(int n_r, int n_theta);

    int n_r() const { return n_r_; }
    int n_theta() const { return n_theta_; }
    std::size_t size() const { return static_cast<std::size_t>(n_r_) * n_theta_; }
    double dr() const { return dr_; }
    double dtheta() const { return dtheta_; }

    double r(int i) const { return r_[i]; }
    double theta(int j) const { return dtheta_ * j; }
    double cos_theta(int j) const { return cos_[j]; }
    double sin_theta(int j) const { return sin_[j]; }
    Vec2 node(int i, int j) const { return {r_[i] * cos_[j], r_[i] * sin_[j]}; }
    Vec2 node(std::size_t k) const { return node(row(k), col(k)); }

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_theta_ + j; }
    int row(std::size_t k) const { return static_cast<int>(k / n_theta_); }
    int col(std::size_t k) const { return static_cast<int>(k % n_theta_); }

    /// Area weight r_i * w_i * dtheta, with w_i the trapezoid weight in r.
    double area_weight(int i) const { return area_w_[i]; }

    /// Smallest of dr and r_inner * dtheta.
    double min_cell_size() const;

    /// Index (i, j) of the node whose quadrature cell contains p:
    /// |r - r_i| <= dr/2 and |theta - theta_j| <= dtheta/2. p must lie in M.
    std::pair<int, int> containing_cell(const Vec2& p) const;

    std::vector<Vec2> nodes() const;

    friend bool operator==(const PolarGrid& a, const PolarGrid& b) {
        return a.n_r_ == b.n_r_ && a.n_theta_ == b.n_theta_;
    }

private:
    int n_r_;
    int n_theta_;
    double dr_;
    double dtheta_;
    std::vector<double> r_;
    std::vector<double> cos_;
    std::vector<double> sin_;
    std::vector<double> area_w_;
};

PolarGrid make_grid(int n_r, int n_theta);

/// A real grid function on a PolarGrid; values are finite.
class ScalarField {
public:
    /// Throws std::invalid_argument on a size mismatch and std::domain_error on
    /// non-finite values.
    ScalarField(PolarGrid grid, std::vector<double> values);

    static ScalarField zeros(const PolarGrid& grid);
    static ScalarField from_function(const PolarGrid& grid,
                                     const std::function<double(double r, double theta)>& f);

    const PolarGrid& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }

    ScalarField scaled(double alpha) const;
    friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b);

    double min() const;
    double max() const;

    /// CSV with header `r,theta,value`, rows in (i_r, j_theta) order.
    std::string to_csv() const;
    /// Inverse of to_csv; the grid shape is inferred from the distinct r and theta values.
    static ScalarField from_csv(const std::string& text);

private:
    PolarGrid grid_;
    std::vector<double> values_;
};

/// Area integral by the grid quadrature (trapezoid in r, periodic trapezoid in theta).
double integrate(const ScalarField& f);

enum class Circle { Inner, Outer };

inline double circle_radius(Circle c) { return c == Circle::Inner ? Annulus::r_inner : Annulus::r_outer; }
const char* circle_name(Circle c);

/// Equal-weight periodic trapezoid rule on one boundary circle.
struct BoundaryQuadrature {
    Circle circle = Circle::Inner;
    double radius = 1.0;
    int n_b = 0;
    std::vector<double> theta;
    std::vector<Vec2> nodes;
    std::vector<double> weights;

    /// n = x / |x| at node k, on both circles.
    Vec2 normal(int k) const { return {nodes[k].x / radius, nodes[k].y / radius}; }
    double total_weight() const;
};

/// Throws std::invalid_argument if n_b < 16.
BoundaryQuadrature boundary_quadrature(Circle circle, int n_b);

double c0_norm(const ScalarField& f);

/// Discrete gradient in polar components: centered differences inside, second-order
/// one-sided differences at r = 1 and r = 2, periodic centered in theta.
struct PolarGradient {
    std::vector<double> d_r;
    std::vector<double> d_theta_over_r;
};
PolarGradient gradient(const ScalarField& f);

/// max(c0_norm(f), sup |grad f|).
double c1_norm(const ScalarField& f);

}  // namespace nrlab
