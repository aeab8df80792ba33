/**
 * @file xi.cpp
 * @brief The reference state xi and its constraints.
 */
#include "nrlab/recurrence_lab.hpp"

#include <cmath>
#include <cstdio>

namespace nrlab {

namespace {

std::string num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

}  // namespace

XiSpec XiSpec::with_epsilon(double eps) {
    XiSpec s;
    s.epsilon = eps;
    s.amplitude = 2.5 * eps;
    return s;
}

double xi_profile(const XiSpec& spec, double theta) {
    const double a = std::abs(std::remainder(theta, kTwoPi));
    if (a <= spec.theta_plateau) return 1.0;
    if (a >= spec.theta_support) return 0.0;
    const double s = (spec.theta_support - a) / (spec.theta_support - spec.theta_plateau);
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

ScalarField build_xi(const XiSpec& spec, const PolarGrid& grid) {
    if (!(spec.epsilon > 0.0)) throw ConstraintViolation("epsilon", "epsilon = " + num(spec.epsilon) + " must be > 0");
    if (!(spec.theta_support <= kPi / 2.0))
        throw ConstraintViolation("support", "support half-width " + num(spec.theta_support) +
                                                 " exceeds pi/2, so xi does not vanish on M_-");
    if (!(spec.theta_plateau >= 0.0 && spec.theta_plateau < spec.theta_support))
        throw ConstraintViolation("support", "need 0 <= plateau < support, got plateau " +
                                                 num(spec.theta_plateau) + ", support " + num(spec.theta_support));
    if (!(spec.amplitude > 2.0 * spec.epsilon))
        throw ConstraintViolation("amplitude", "xi on the line is " + num(spec.amplitude) + ", needs > 2 eps = " +
                                                   num(2.0 * spec.epsilon));

    const ScalarField xi =
        ScalarField::from_function(grid, [&](double, double th) { return spec.amplitude * xi_profile(spec, th); });
    for (int i = 0; i < grid.n_r(); ++i)
        for (int j = 0; j < grid.n_theta(); ++j)
            if (grid.cos_theta(j) < 0.0 && xi(i, j) != 0.0)
                throw ConstraintViolation("vanish_on_left_half",
                                          "xi = " + num(xi(i, j)) + " at theta = " + num(grid.theta(j)));
    for (int i = 0; i < grid.n_r(); ++i)
        if (!(xi(i, 0) > 2.0 * spec.epsilon))
            throw ConstraintViolation("amplitude", "xi on the line is " + num(xi(i, 0)));
    const double c1 = c1_norm(xi);
    if (!(c1 < 4.0 * spec.epsilon))
        throw ConstraintViolation("c1_norm", "grid C1 norm " + num(c1) + " is not < 4 eps = " +
                                                 num(4.0 * spec.epsilon));
    return xi;
}

}  // namespace nrlab
