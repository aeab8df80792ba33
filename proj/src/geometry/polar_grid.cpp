/**
 * @file polar_grid.cpp
 * @brief Polar tensor grid over the annulus.
 */
#include "nrlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nrlab {

bool Annulus::contains(const Vec2& p, double tol) {
    const double r = norm(p);
    return r >= r_inner - tol && r <= r_outer + tol;
}

PolarGrid::PolarGrid(int n_r, int n_theta) : n_r_(n_r), n_theta_(n_theta) {
    if (n_r < 8) {
        throw std::invalid_argument("PolarGrid: n_r = " + std::to_string(n_r) + " is below the minimum 8");
    }
    if (n_theta < 16) {
        throw std::invalid_argument("PolarGrid: n_theta = " + std::to_string(n_theta) +
                                    " is below the minimum 16");
    }
    if (n_theta % 2 != 0) {
        throw std::invalid_argument("PolarGrid: n_theta = " + std::to_string(n_theta) + " must be even");
    }
    dr_ = (Annulus::r_outer - Annulus::r_inner) / (n_r - 1);
    dtheta_ = kTwoPi / n_theta;

    r_.resize(n_r);
    area_w_.resize(n_r);
    for (int i = 0; i < n_r; ++i) {
        r_[i] = (i == n_r - 1) ? Annulus::r_outer : Annulus::r_inner + dr_ * i;
        const double wr = (i == 0 || i == n_r - 1) ? 0.5 * dr_ : dr_;
        area_w_[i] = r_[i] * wr * dtheta_;
    }
    cos_.resize(n_theta);
    sin_.resize(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        cos_[j] = std::cos(dtheta_ * j);
        sin_[j] = std::sin(dtheta_ * j);
    }
}

double PolarGrid::min_cell_size() const {
    return std::min(dr_, Annulus::r_inner * dtheta_);
}

std::pair<int, int> PolarGrid::containing_cell(const Vec2& p) const {
    const double r = norm(p);
    int i = static_cast<int>(std::lround((r - Annulus::r_inner) / dr_));
    i = std::clamp(i, 0, n_r_ - 1);
    double theta = std::atan2(p.y, p.x);
    if (theta < 0.0) theta += kTwoPi;
    int j = static_cast<int>(std::lround(theta / dtheta_)) % n_theta_;
    return {i, j};
}

std::vector<Vec2> PolarGrid::nodes() const {
    std::vector<Vec2> out(size());
    for (int i = 0; i < n_r_; ++i)
        for (int j = 0; j < n_theta_; ++j) out[index(i, j)] = node(i, j);
    return out;
}

PolarGrid make_grid(int n_r, int n_theta) { return PolarGrid(n_r, n_theta); }

}  // namespace nrlab
