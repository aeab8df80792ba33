/**
 * @file polar_interp.hpp
 * @brief Tensor cubic Lagrange interpolation on a PolarGrid: periodic in theta,
 *        one-sided stencils near r = 1 and r = 2, r clamped to [1, 2].
 */
#pragma once

#include "nrlab/geometry.hpp"

#include <algorithm>
#include <array>
#include <span>

namespace nrlab {

class PolarInterpolator {
public:
    struct Stencil {
        int i0 = 0;
        std::array<double, 4> wr{};
        std::array<int, 4> j{};
        std::array<double, 4> wt{};
        int ic = 0;  ///< radial index of the cell containing the point (nodes ic, ic + 1)
    };

    explicit PolarInterpolator(const PolarGrid& grid) : grid_(grid) {}

    Stencil stencil(double r, double theta) const;

    double eval(std::span<const double> values, const Stencil& s) const {
        const int nt = grid_.n_theta();
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) {
            const double* row = values.data() + static_cast<std::size_t>(s.i0 + a) * nt;
            const double ring = s.wt[0] * row[s.j[0]] + s.wt[1] * row[s.j[1]] + s.wt[2] * row[s.j[2]] +
                                s.wt[3] * row[s.j[3]];
            acc += s.wr[a] * ring;
        }
        return acc;
    }

    double operator()(std::span<const double> values, double r, double theta) const {
        return eval(values, stencil(r, theta));
    }

    const PolarGrid& grid() const { return grid_; }

private:
    PolarGrid grid_;
};

}  // namespace nrlab
