/**
 * @file polar_interp.cpp
 */
#include "nrlab/polar_interp.hpp"

#include <algorithm>
#include <cmath>

namespace nrlab {

namespace {

// Lagrange basis on nodes 0, 1, 2, 3 at local coordinate s.
std::array<double, 4> cubic_weights(double s) {
    const double s0 = s, s1 = s - 1.0, s2 = s - 2.0, s3 = s - 3.0;
    return {-s1 * s2 * s3 / 6.0, s0 * s2 * s3 / 2.0, -s0 * s1 * s3 / 2.0, s0 * s1 * s2 / 6.0};
}

}  // namespace

PolarInterpolator::Stencil PolarInterpolator::stencil(double r, double theta) const {
    Stencil st;
    const int nr = grid_.n_r();
    const int nt = grid_.n_theta();

    const double rc = std::clamp(r, Annulus::r_inner, Annulus::r_outer);
    const double x = (rc - Annulus::r_inner) / grid_.dr();
    int i0 = static_cast<int>(std::floor(x)) - 1;
    i0 = std::clamp(i0, 0, nr - 4);
    st.i0 = i0;
    st.ic = std::clamp(static_cast<int>(std::floor(x)), 0, nr - 2);
    st.wr = cubic_weights(x - i0);

    const double t = theta / grid_.dtheta();
    const double tf = std::floor(t);
    const double a = t - tf;
    long j1 = static_cast<long>(tf) % nt;
    if (j1 < 0) j1 += nt;
    for (int b = 0; b < 4; ++b) st.j[b] = static_cast<int>((j1 - 1 + b + nt) % nt);
    st.wt = cubic_weights(a + 1.0);
    return st;
}

}  // namespace nrlab
