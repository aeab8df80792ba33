/**
 * @file svg.cpp
 * @brief Annulus snapshot drawing.
 */
#include "nrlab/recurrence_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nrlab {

namespace {

// Blue-white-red for s in [-1, 1].
std::string color(double s) {
    s = std::clamp(s, -1.0, 1.0);
    int r = 255, g = 255, b = 255;
    if (s > 0) {
        g = b = static_cast<int>(std::lround(255 * (1.0 - s)));
    } else {
        r = g = static_cast<int>(std::lround(255 * (1.0 + s)));
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::string annulus_svg(const ScalarField& omega, std::span<const Vec2> line, double t) {
    const PolarGrid& g = omega.grid();
    const double scale = std::max({std::abs(omega.min()), std::abs(omega.max()), 1e-300});
    std::string s;
    char buf[320];
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-220 -220 440 440\" width=\"440\" height=\"440\">\n";
    std::snprintf(buf, sizeof buf, "<title>t = %.4f</title>\n<g transform=\"scale(100,-100)\">\n", t);
    s += buf;

    const int si = std::max(1, g.n_r() / 32);
    const int sj = std::max(1, g.n_theta() / 128);
    for (int i = 0; i + si < g.n_r(); i += si) {
        const double r0 = g.r(i), r1 = g.r(i + si);
        for (int j = 0; j < g.n_theta(); j += sj) {
            const double a0 = g.theta(j), a1 = g.theta(j) + sj * g.dtheta();
            const double v = 0.25 * (omega(i, j) + omega(i + si, j) + omega(i, (j + sj) % g.n_theta()) +
                                     omega(i + si, (j + sj) % g.n_theta()));
            if (std::abs(v) < 1e-3 * scale) continue;
            std::snprintf(buf, sizeof buf,
                          "<path d=\"M%.4f %.4f L%.4f %.4f L%.4f %.4f L%.4f %.4f Z\" fill=\"%s\" stroke=\"none\"/>\n",
                          r0 * std::cos(a0), r0 * std::sin(a0), r1 * std::cos(a0), r1 * std::sin(a0),
                          r1 * std::cos(a1), r1 * std::sin(a1), r0 * std::cos(a1), r0 * std::sin(a1),
                          color(v / scale).c_str());
            s += buf;
        }
    }
    s += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.01\"/>\n";
    s += "<circle cx=\"0\" cy=\"0\" r=\"2\" fill=\"none\" stroke=\"black\" stroke-width=\"0.01\"/>\n";
    s += "<line x1=\"0\" y1=\"-2.1\" x2=\"0\" y2=\"2.1\" stroke=\"gray\" stroke-width=\"0.005\" stroke-dasharray=\"0.05\"/>\n";
    if (!line.empty()) {
        s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.012\" points=\"";
        for (const Vec2& p : line) {
            std::snprintf(buf, sizeof buf, "%.4f,%.4f ", p.x, p.y);
            s += buf;
        }
        s += "\"/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace nrlab
