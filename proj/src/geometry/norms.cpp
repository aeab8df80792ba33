/**
 * @file norms.cpp
 * @brief Discrete sup norms and gradient on the polar grid.
 */
#include "nrlab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace nrlab {

double c0_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

PolarGradient gradient(const ScalarField& f) {
    const PolarGrid& g = f.grid();
    const int nr = g.n_r();
    const int nt = g.n_theta();
    PolarGradient out;
    out.d_r.resize(g.size());
    out.d_theta_over_r.resize(g.size());
    const double inv2dr = 1.0 / (2.0 * g.dr());
    const double inv2dt = 1.0 / (2.0 * g.dtheta());
    for (int i = 0; i < nr; ++i) {
        for (int j = 0; j < nt; ++j) {
            double fr;
            if (i == 0) {
                fr = (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) * inv2dr;
            } else if (i == nr - 1) {
                fr = (3.0 * f(nr - 1, j) - 4.0 * f(nr - 2, j) + f(nr - 3, j)) * inv2dr;
            } else {
                fr = (f(i + 1, j) - f(i - 1, j)) * inv2dr;
            }
            const int jp = (j + 1) % nt;
            const int jm = (j + nt - 1) % nt;
            const double ft = (f(i, jp) - f(i, jm)) * inv2dt;
            out.d_r[g.index(i, j)] = fr;
            out.d_theta_over_r[g.index(i, j)] = ft / g.r(i);
        }
    }
    return out;
}

double c1_norm(const ScalarField& f) {
    const PolarGradient grad = gradient(f);
    double m = c0_norm(f);
    for (std::size_t k = 0; k < grad.d_r.size(); ++k) {
        m = std::max(m, std::hypot(grad.d_r[k], grad.d_theta_over_r[k]));
    }
    return m;
}

}  // namespace nrlab
