/**
 * @file pendulum.hpp
 * @brief x' = y, y' = -sin x with a Stormer-Verlet integrator, orbit classes and
 *        recurrence times.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace nrlab {

struct PendulumState {
    double x = 0.0;  ///< unwrapped angle
    double y = 0.0;
    double t = 0.0;
};

/// H = y^2 / 2 - cos x.
double pendulum_energy(const PendulumState& s);

/// One kick-drift-kick step. Throws std::invalid_argument unless 0 < dt <= 0.1.
PendulumState pendulum_step(const PendulumState& s, double dt);

enum class OrbitClass { Libration, Separatrix, Rotation };
const char* orbit_class_name(OrbitClass c);

/// |H - 1| <= tol: separatrix; H < 1: libration; H > 1: rotation.
OrbitClass classify_orbit(const PendulumState& s, double tol = 1e-9);

enum class RecurrenceMetric {
    Wrapped,    ///< x compared mod 2pi (the cylinder)
    Unwrapped,  ///< x on the real line (universal cover)
};

struct RecurrenceResult {
    std::optional<double> time;  ///< empty: NotFound before t_max
    PendulumState final_state;   ///< state at return, or at t_max
    double closest = 0.0;        ///< distance at the returned time (or min after leaving)
};

/**
 * First return into the delta-ball around (x0, y0).
 *
 * The trajectory must first leave the ball; the returned time is the time of
 * closest approach within the first re-entry, refined by a parabola through the
 * three samples around the discrete minimum. If the orbit never leaves the ball
 * the result is dt.
 */
RecurrenceResult recurrence_time(const PendulumState& s0, double delta, double t_max, double dt = 1e-3,
                                 RecurrenceMetric metric = RecurrenceMetric::Wrapped);

/// Samples every `stride` steps from t = 0 to t_max (the last state is always kept).
std::vector<PendulumState> pendulum_trajectory(const PendulumState& s0, double dt, double t_max, long stride = 1);

/// max_t |H(t) - H(0)| over [0, t_max].
double max_energy_drift(const PendulumState& s0, double dt, double t_max);

/// CSV `t,x,y,energy`.
std::string trajectory_csv(const std::vector<PendulumState>& traj);

/// Phase portrait from a grid of initial conditions, x shown mod 2pi in [-pi, pi].
std::string phase_portrait_svg(double dt = 1e-2, double t_max = 20.0);

}  // namespace nrlab
