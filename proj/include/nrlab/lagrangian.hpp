/**
 * @file lagrangian.hpp
 * @brief Marker advection, the material line l_t = g^t(l), winding separation of its
 *        endpoints, and advected patches.
 *
 * Markers are integrated in polar coordinates (r, theta) with theta kept unwrapped,
 * so the angular coordinate is continuous by construction.
 */
#pragma once

#include "nrlab/biot_savart.hpp"
#include "nrlab/geometry.hpp"
#include "nrlab/parallel.hpp"
#include "nrlab/polar_interp.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace nrlab {

/// Polar velocity components (u_r, u_theta) at a point.
struct PolarVelocity {
    double u_r = 0.0;
    double u_theta = 0.0;
};

class VelocityField {
public:
    virtual ~VelocityField() = default;
    /// r is within [1, 2] up to round-off; theta is any real.
    virtual PolarVelocity at(double t, double r, double theta) const = 0;
};

/// (sigma1 / 2pi) u*; with sigma1 = 2pi this is u* itself (theta' = 1/r^2).
class RotationVelocity final : public VelocityField {
public:
    explicit RotationVelocity(double sigma1 = kTwoPi) : c_(sigma1 / kTwoPi) {}
    PolarVelocity at(double, double r, double) const override { return {0.0, c_ / r}; }

private:
    double c_;
};

class ZeroVelocity final : public VelocityField {
public:
    PolarVelocity at(double, double, double) const override { return {}; }
};

/// Grid velocities at two times, bicubic in space and linear in time; the v^ part is
/// evaluated analytically.
class GridVelocityField final : public VelocityField {
public:
    GridVelocityField(double t0, std::shared_ptr<const GridVelocity> v0, double t1,
                      std::shared_ptr<const GridVelocity> v1);
    /// Frozen in time.
    explicit GridVelocityField(std::shared_ptr<const GridVelocity> v);
    PolarVelocity at(double t, double r, double theta) const override;

private:
    double t0_, t1_;
    std::shared_ptr<const GridVelocity> v0_, v1_;
    PolarInterpolator interp_;
};

/// A marker escaped M beyond 1e-6.
class MarkerEscape : public std::runtime_error {
public:
    MarkerEscape(std::size_t index, double r);
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

class RefinementExplosion : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PolarPoint {
    double r = 1.0;
    double theta = 0.0;  ///< unwrapped
    Vec2 cartesian() const { return from_polar(r, theta); }
};

/// Integrates dx/dt = u(t, x) with classical RK4 from t0 to t1 (step <= dt).
/// Markers with `pinned` set are projected back to their starting radius after each
/// step. Throws MarkerEscape if a free marker leaves M by more than 1e-6.
void advect_polar(std::vector<PolarPoint>& pts, const VelocityField& u, double t0, double t1, double dt,
                  const std::vector<bool>& pinned = {}, Exec exec = Exec::OpenMP);

/// Cartesian convenience wrapper over advect_polar.
std::vector<Vec2> advect_points(std::span<const Vec2> points, const VelocityField& u, double t0, double t1,
                                double dt, Exec exec = Exec::OpenMP);

struct MaterialLine {
    std::vector<PolarPoint> markers;
    double threshold = 0.02;
    std::size_t cap = 1000000;

    /// n markers uniformly spaced in r along theta = 0, from r = 1 to r = 2.
    static MaterialLine initial(std::size_t n = 51, double threshold = 0.02, std::size_t cap = 1000000);

    std::vector<Vec2> points() const;
    /// Max Euclidean gap between adjacent markers.
    double max_gap() const;
    bool intersects_left_half() const;

    /// Inserts Catmull-Rom midpoints (in r, theta) until every gap is <= threshold.
    /// Throws RefinementExplosion past `cap` markers.
    void refine();

    /// Advances all markers with the endpoints pinned to their circles.
    void advance(const VelocityField& u, double t0, double t1, double dt, Exec exec = Exec::OpenMP);

    /// CSV rows `t,marker_index,x,y,theta_unwrapped` (no header).
    std::string csv_rows(double t) const;
};

inline constexpr const char* kMaterialLineCsvHeader = "t,marker_index,x,y,theta_unwrapped\n";

/// Advects the line from t0 to t1 in steps of dt, refining every refine_every.
MaterialLine advect_line(MaterialLine line, const VelocityField& u, double t0, double t1, double dt,
                         double refine_every = 0.1, Exec exec = Exec::OpenMP);

/// theta(first marker, on the inner circle) - theta(last marker, on the outer circle).
double winding_separation(const MaterialLine& line);

/// Closed polygon of markers (last vertex connects to the first).
struct Patch {
    std::vector<PolarPoint> markers;
    double threshold = 0.0;  ///< 0 disables refinement
    std::size_t cap = 1000000;

    /// Polygon through `corners` with every edge split uniformly so the total
    /// number of markers is n_markers (a multiple of corners.size()).
    static Patch polygon(const std::vector<Vec2>& corners, std::size_t n_markers);

    std::vector<Vec2> points() const;
    void refine();
    void advance(const VelocityField& u, double t0, double t1, double dt, Exec exec = Exec::OpenMP);
};

/// Shoelace signed area (positive for counterclockwise).
double patch_area(const Patch& patch);
double polygon_area(std::span<const Vec2> poly);

}  // namespace nrlab
