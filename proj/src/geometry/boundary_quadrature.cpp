/**
 * @file boundary_quadrature.cpp
 * @brief Periodic trapezoid rule on the circles |x| = 1 and |x| = 2.
 */
#include "nrlab/geometry.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nrlab {

const char* circle_name(Circle c) { return c == Circle::Inner ? "inner" : "outer"; }

double BoundaryQuadrature::total_weight() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

BoundaryQuadrature boundary_quadrature(Circle circle, int n_b) {
    if (n_b < 16) {
        throw std::invalid_argument("boundary_quadrature: n_b = " + std::to_string(n_b) +
                                    " is below the minimum 16");
    }
    BoundaryQuadrature q;
    q.circle = circle;
    q.radius = circle_radius(circle);
    q.n_b = n_b;
    q.theta.resize(n_b);
    q.nodes.resize(n_b);
    q.weights.assign(n_b, kTwoPi * q.radius / n_b);
    const double dtheta = kTwoPi / n_b;
    for (int k = 0; k < n_b; ++k) {
        q.theta[k] = dtheta * k;
        q.nodes[k] = from_polar(q.radius, q.theta[k]);
    }
    return q;
}

}  // namespace nrlab
