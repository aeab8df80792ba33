/**
 * @file pendulum.cpp
 */
#include "nrlab/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace nrlab {

double pendulum_energy(const PendulumState& s) { return 0.5 * s.y * s.y - std::cos(s.x); }

PendulumState pendulum_step(const PendulumState& s, double dt) {
    if (!(dt > 0.0 && dt <= 0.1)) throw std::invalid_argument("pendulum_step: dt must lie in (0, 0.1]");
    const double yh = s.y - 0.5 * dt * std::sin(s.x);
    const double x1 = s.x + dt * yh;
    const double y1 = yh - 0.5 * dt * std::sin(x1);
    return {x1, y1, s.t + dt};
}

const char* orbit_class_name(OrbitClass c) {
    switch (c) {
        case OrbitClass::Libration: return "libration";
        case OrbitClass::Separatrix: return "separatrix";
        case OrbitClass::Rotation: return "rotation";
    }
    return "?";
}

OrbitClass classify_orbit(const PendulumState& s, double tol) {
    const double h = pendulum_energy(s);
    if (std::abs(h - 1.0) <= tol) return OrbitClass::Separatrix;
    return h < 1.0 ? OrbitClass::Libration : OrbitClass::Rotation;
}

RecurrenceResult recurrence_time(const PendulumState& s0, double delta, double t_max, double dt,
                                 RecurrenceMetric metric) {
    if (!(delta > 0.0)) throw std::invalid_argument("recurrence_time: delta must be positive");
    const double x_ref = metric == RecurrenceMetric::Wrapped ? std::remainder(s0.x, 2.0 * std::numbers::pi) : s0.x;
    auto dist2 = [&](const PendulumState& s) {
        const double dx = metric == RecurrenceMetric::Wrapped ? std::remainder(s.x - x_ref, 2.0 * std::numbers::pi)
                                                              : s.x - x_ref;
        const double dy = s.y - s0.y;
        return dx * dx + dy * dy;
    };
    const double d2_ball = delta * delta;

    RecurrenceResult res;
    PendulumState s{s0.x, s0.y, 0.0};
    bool left = false;
    bool inside = false;
    double best = INFINITY;
    // d^2 at the samples before, at and after the running minimum of the episode.
    double dm1 = 0, tb = 0, db = INFINITY, dp1 = 0;
    bool have_after = false;
    double prev_d = dist2(s);
    res.closest = INFINITY;

    const long n = static_cast<long>(std::ceil(t_max / dt - 1e-9));
    for (long k = 1; k <= n; ++k) {
        s = pendulum_step(s, dt);
        const double d2 = dist2(s);
        if (!left && d2 > d2_ball) left = true;
        if (left && !inside && d2 <= d2_ball) {
            inside = true;
            dm1 = prev_d;
            tb = s.t;
            db = d2;
            have_after = false;
        } else if (inside) {
            if (d2 < db) {
                dm1 = db;
                tb = s.t;
                db = d2;
                have_after = false;
            } else if (!have_after) {
                dp1 = d2;
                have_after = true;
            }
            if (d2 > d2_ball) break;
        }
        if (left) best = std::min(best, std::sqrt(d2));
        prev_d = d2;
    }

    if (!left) {
        res.time = dt;
        res.final_state = pendulum_step(PendulumState{s0.x, s0.y, 0.0}, dt);
        res.closest = std::sqrt(dist2(res.final_state));
        return res;
    }
    if (!inside) {
        res.final_state = s;
        res.closest = best;
        return res;
    }
    double t_star = tb;
    if (have_after) {
        // Vertex of the parabola through the three equally spaced samples.
        const double denom = dm1 - 2.0 * db + dp1;
        if (denom > 0.0) t_star = tb + 0.5 * dt * (dm1 - dp1) / denom;
    }
    res.time = t_star;
    res.final_state = s;
    res.closest = std::sqrt(db);
    return res;
}

std::vector<PendulumState> pendulum_trajectory(const PendulumState& s0, double dt, double t_max, long stride) {
    stride = std::max(1L, stride);
    const long n = static_cast<long>(std::ceil(t_max / dt - 1e-9));
    std::vector<PendulumState> out;
    PendulumState s{s0.x, s0.y, 0.0};
    out.push_back(s);
    for (long k = 1; k <= n; ++k) {
        s = pendulum_step(s, dt);
        if (k % stride == 0 || k == n) out.push_back(s);
    }
    return out;
}

double max_energy_drift(const PendulumState& s0, double dt, double t_max) {
    const double h0 = pendulum_energy(s0);
    const long n = static_cast<long>(std::ceil(t_max / dt - 1e-9));
    PendulumState s = s0;
    double m = 0.0;
    for (long k = 0; k < n; ++k) {
        s = pendulum_step(s, dt);
        m = std::max(m, std::abs(pendulum_energy(s) - h0));
    }
    return m;
}

std::string trajectory_csv(const std::vector<PendulumState>& traj) {
    std::string out = "t,x,y,energy\n";
    char buf[128];
    for (const PendulumState& s : traj) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.x, s.y, pendulum_energy(s));
        out += buf;
    }
    return out;
}

std::string phase_portrait_svg(double dt, double t_max) {
    constexpr double pi = std::numbers::pi;
    const double ymax = 3.0;
    std::string s;
    char buf[200];
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-330 -310 660 620\" width=\"660\" height=\"620\">\n";
    s += "<g transform=\"scale(100,-100)\">\n";
    s += "<rect x=\"-3.1416\" y=\"-3\" width=\"6.2832\" height=\"6\" fill=\"none\" stroke=\"black\" stroke-width=\"0.01\"/>\n";

    auto emit = [&](const PendulumState& s0, const char* colour) {
        const auto traj = pendulum_trajectory(s0, dt, t_max, 5);
        std::string pts;
        double prev = 0.0;
        bool open = false;
        for (const PendulumState& p : traj) {
            const double xw = std::remainder(p.x, 2.0 * pi);
            if (std::abs(p.y) > ymax) continue;
            if (open && std::abs(xw - prev) > pi) {
                s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
                     "\" stroke-width=\"0.012\" points=\"" + pts + "\"/>\n";
                pts.clear();
            }
            std::snprintf(buf, sizeof buf, "%.4f,%.4f ", xw, p.y);
            pts += buf;
            prev = xw;
            open = true;
        }
        if (!pts.empty())
            s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"0.012\" points=\"" +
                 pts + "\"/>\n";
    };
    for (int k = 1; k <= 8; ++k) emit({0.0, 0.25 * k, 0.0}, k < 8 ? "steelblue" : "firebrick");
    for (int k = 1; k <= 4; ++k) {
        emit({0.0, 2.0 + 0.25 * k, 0.0}, "darkorange");
        emit({0.0, -2.0 - 0.25 * k, 0.0}, "darkorange");
    }
    // Separatrices: y = +-2 cos(x / 2).
    for (int sign = -1; sign <= 1; sign += 2) {
        std::string pts;
        for (int k = 0; k <= 200; ++k) {
            const double x = -pi + 2.0 * pi * k / 200;
            std::snprintf(buf, sizeof buf, "%.4f,%.4f ", x, sign * 2.0 * std::cos(0.5 * x));
            pts += buf;
        }
        s += "<polyline fill=\"none\" stroke=\"firebrick\" stroke-width=\"0.02\" points=\"" + pts + "\"/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace nrlab
