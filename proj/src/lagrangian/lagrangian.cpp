/**
 * @file lagrangian.cpp
 */
#include "nrlab/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nrlab {

namespace {

constexpr double kEscapeTol = 1e-6;

double gap(const PolarPoint& a, const PolarPoint& b) {
    const Vec2 d = a.cartesian() - b.cartesian();
    return norm(d);
}

PolarPoint catmull_rom_mid(const PolarPoint& p0, const PolarPoint& p1, const PolarPoint& p2, const PolarPoint& p3) {
    PolarPoint m;
    m.r = (-p0.r + 9.0 * p1.r + 9.0 * p2.r - p3.r) / 16.0;
    m.theta = (-p0.theta + 9.0 * p1.theta + 9.0 * p2.theta - p3.theta) / 16.0;
    m.r = std::clamp(m.r, Annulus::r_inner, Annulus::r_outer);
    return m;
}

PolarPoint ghost(const PolarPoint& a, const PolarPoint& b) {
    return {2.0 * a.r - b.r, 2.0 * a.theta - b.theta};
}

// One pass of midpoint insertion; returns true if anything was inserted.
bool refine_pass(std::vector<PolarPoint>& m, double threshold, bool closed) {
    const std::size_t n = m.size();
    if (n < 2) return false;
    const std::size_t segs = closed ? n : n - 1;
    auto at = [&](long k) -> PolarPoint {
        if (closed) {
            const long nn = static_cast<long>(n);
            return m[(k % nn + nn) % nn];
        }
        if (k < 0) return ghost(m[0], m[1]);
        if (k >= static_cast<long>(n)) return ghost(m[n - 1], m[n - 2]);
        return m[k];
    };
    std::vector<PolarPoint> out;
    out.reserve(n + n / 2);
    bool inserted = false;
    for (std::size_t k = 0; k < segs; ++k) {
        out.push_back(m[k]);
        const PolarPoint& a = m[k];
        const PolarPoint& b = m[(k + 1) % n];
        if (gap(a, b) > threshold) {
            const long kk = static_cast<long>(k);
            PolarPoint p0 = at(kk - 1), p1 = a, p2 = b, p3 = at(kk + 2);
            if (closed) {
                // Keep the four points on one branch of theta around the segment.
                auto near = [](double th, double ref) { return th + kTwoPi * std::round((ref - th) / kTwoPi); };
                p0.theta = near(p0.theta, p1.theta);
                p2.theta = near(p2.theta, p1.theta);
                p3.theta = near(p3.theta, p2.theta);
            }
            out.push_back(catmull_rom_mid(p0, p1, p2, p3));
            inserted = true;
        }
    }
    if (!closed) out.push_back(m[n - 1]);
    m.swap(out);
    return inserted;
}

void refine_markers(std::vector<PolarPoint>& m, double threshold, std::size_t cap, bool closed) {
    if (!(threshold > 0.0)) return;
    while (refine_pass(m, threshold, closed)) {
        if (m.size() > cap) {
            throw RefinementExplosion("marker count " + std::to_string(m.size()) + " exceeds the cap " +
                                      std::to_string(cap));
        }
    }
}

}  // namespace

GridVelocityField::GridVelocityField(double t0, std::shared_ptr<const GridVelocity> v0, double t1,
                                     std::shared_ptr<const GridVelocity> v1)
    : t0_(t0), t1_(t1), v0_(std::move(v0)), v1_(std::move(v1)), interp_(v0_->grid) {
    if (!(v0_->grid == v1_->grid)) throw std::invalid_argument("GridVelocityField: grid mismatch");
}

GridVelocityField::GridVelocityField(std::shared_ptr<const GridVelocity> v)
    : t0_(0.0), t1_(0.0), v0_(v), v1_(v), interp_(v->grid) {}

PolarVelocity GridVelocityField::at(double t, double r, double theta) const {
    const auto st = interp_.stencil(r, theta);
    const double rc = std::clamp(r, Annulus::r_inner, Annulus::r_outer);
    double s = t1_ != t0_ ? (t - t0_) / (t1_ - t0_) : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    double ur = interp_.eval(v0_->v_r, st);
    double ut = interp_.eval(v0_->v_theta, st);
    if (s > 0.0) {
        ur = (1.0 - s) * ur + s * interp_.eval(v1_->v_r, st);
        ut = (1.0 - s) * ut + s * interp_.eval(v1_->v_theta, st);
    }
    return {ur, ut + v0_->sigma1 / (kTwoPi * rc)};
}

MarkerEscape::MarkerEscape(std::size_t index, double r)
    : std::runtime_error([&] {
          char msg[120];
          std::snprintf(msg, sizeof msg, "marker %zu escaped the annulus: |x| = %.12g", index, r);
          return std::string(msg);
      }()),
      index_(index) {}

void advect_polar(std::vector<PolarPoint>& pts, const VelocityField& u, double t0, double t1, double dt,
                  const std::vector<bool>& pinned, Exec exec) {
    if (t1 == t0) return;
    if (!(dt > 0.0)) throw std::invalid_argument("advect: dt must be positive");
    const long n = static_cast<long>(std::ceil(std::abs(t1 - t0) / dt - 1e-9));
    const double h = (t1 - t0) / static_cast<double>(std::max(1L, n));
    std::vector<double> escaped(pts.size(), 0.0);

    auto f = [&](double t, double r, double th, double& dr, double& dth) {
        const PolarVelocity v = u.at(t, r, th);
        dr = v.u_r;
        dth = v.u_theta / r;
    };
    for_each_index(exec, pts.size(), [&](std::size_t k) {
        double r = pts[k].r;
        double th = pts[k].theta;
        const double r_pin = r;
        const bool pin = !pinned.empty() && pinned[k];
        for (long s = 0; s < std::max(1L, n); ++s) {
            const double t = t0 + s * h;
            double a1, b1, a2, b2, a3, b3, a4, b4;
            f(t, r, th, a1, b1);
            f(t + 0.5 * h, r + 0.5 * h * a1, th + 0.5 * h * b1, a2, b2);
            f(t + 0.5 * h, r + 0.5 * h * a2, th + 0.5 * h * b2, a3, b3);
            f(t + h, r + h * a3, th + h * b3, a4, b4);
            r += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
            th += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
            if (pin) {
                r = r_pin;
            } else if (r < Annulus::r_inner - kEscapeTol || r > Annulus::r_outer + kEscapeTol) {
                escaped[k] = r;
                break;
            } else {
                r = std::clamp(r, Annulus::r_inner, Annulus::r_outer);
            }
        }
        pts[k] = {r, th};
    });
    for (std::size_t k = 0; k < pts.size(); ++k)
        if (escaped[k] != 0.0) throw MarkerEscape(k, escaped[k]);
}

std::vector<Vec2> advect_points(std::span<const Vec2> points, const VelocityField& u, double t0, double t1,
                                double dt, Exec exec) {
    std::vector<PolarPoint> p(points.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double r = norm(points[k]);
        if (r < Annulus::r_inner - kEscapeTol || r > Annulus::r_outer + kEscapeTol) throw MarkerEscape(k, r);
        p[k] = {r, std::atan2(points[k].y, points[k].x)};
    }
    advect_polar(p, u, t0, t1, dt, {}, exec);
    std::vector<Vec2> out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) out[k] = p[k].cartesian();
    return out;
}

MaterialLine MaterialLine::initial(std::size_t n, double threshold, std::size_t cap) {
    if (n < 2) throw std::invalid_argument("MaterialLine: needs at least 2 markers");
    MaterialLine l;
    l.threshold = threshold;
    l.cap = cap;
    l.markers.resize(n);
    for (std::size_t k = 0; k < n; ++k) l.markers[k] = {1.0 + static_cast<double>(k) / (n - 1), 0.0};
    l.markers.back().r = Annulus::r_outer;
    l.refine();
    return l;
}

std::vector<Vec2> MaterialLine::points() const {
    std::vector<Vec2> p(markers.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = markers[k].cartesian();
    return p;
}

double MaterialLine::max_gap() const {
    double g = 0.0;
    for (std::size_t k = 0; k + 1 < markers.size(); ++k) g = std::max(g, gap(markers[k], markers[k + 1]));
    return g;
}

bool MaterialLine::intersects_left_half() const {
    return std::any_of(markers.begin(), markers.end(), [](const PolarPoint& p) { return std::cos(p.theta) < 0.0; });
}

void MaterialLine::refine() { refine_markers(markers, threshold, cap, false); }

void MaterialLine::advance(const VelocityField& u, double t0, double t1, double dt, Exec exec) {
    std::vector<bool> pinned(markers.size(), false);
    if (!pinned.empty()) pinned.front() = pinned.back() = true;
    advect_polar(markers, u, t0, t1, dt, pinned, exec);
}

std::string MaterialLine::csv_rows(double t) const {
    std::string out;
    char buf[160];
    for (std::size_t k = 0; k < markers.size(); ++k) {
        const Vec2 p = markers[k].cartesian();
        std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g,%.17g\n", t, k, p.x, p.y, markers[k].theta);
        out += buf;
    }
    return out;
}

MaterialLine advect_line(MaterialLine line, const VelocityField& u, double t0, double t1, double dt,
                         double refine_every, Exec exec) {
    if (t1 == t0) return line;
    const long n = refine_every > 0.0 ? static_cast<long>(std::ceil(std::abs(t1 - t0) / refine_every - 1e-9)) : 1;
    for (long k = 0; k < n; ++k) {
        const double a = t0 + (t1 - t0) * k / n;
        const double b = k + 1 == n ? t1 : t0 + (t1 - t0) * (k + 1) / n;
        line.advance(u, a, b, dt, exec);
        line.refine();
    }
    return line;
}

double winding_separation(const MaterialLine& line) {
    if (line.markers.size() < 2) throw std::invalid_argument("winding_separation: needs at least 2 markers");
    return line.markers.front().theta - line.markers.back().theta;
}

Patch Patch::polygon(const std::vector<Vec2>& corners, std::size_t n_markers) {
    if (corners.size() < 3) throw std::invalid_argument("Patch: needs at least 3 corners");
    const std::size_t per = std::max<std::size_t>(1, n_markers / corners.size());
    Patch p;
    for (std::size_t c = 0; c < corners.size(); ++c) {
        const Vec2 a = corners[c];
        const Vec2 b = corners[(c + 1) % corners.size()];
        for (std::size_t k = 0; k < per; ++k) {
            const double s = static_cast<double>(k) / per;
            const Vec2 q = a + s * (b - a);
            double th = std::atan2(q.y, q.x);
            if (!p.markers.empty()) {
                const double prev = p.markers.back().theta;
                th += kTwoPi * std::round((prev - th) / kTwoPi);
            }
            p.markers.push_back({norm(q), th});
        }
    }
    return p;
}

std::vector<Vec2> Patch::points() const {
    std::vector<Vec2> p(markers.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = markers[k].cartesian();
    return p;
}

void Patch::refine() { refine_markers(markers, threshold, cap, true); }

void Patch::advance(const VelocityField& u, double t0, double t1, double dt, Exec exec) {
    advect_polar(markers, u, t0, t1, dt, {}, exec);
}

double polygon_area(std::span<const Vec2> poly) {
    double s = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& a = poly[k];
        const Vec2& b = poly[(k + 1) % n];
        s += a.x * b.y - a.y * b.x;
    }
    return 0.5 * s;
}

double patch_area(const Patch& patch) {
    const std::vector<Vec2> p = patch.points();
    return polygon_area(p);
}

}  // namespace nrlab
