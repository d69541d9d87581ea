#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace hyst {

/// A point of the admissible half-plane P = {(alpha, beta) : alpha > beta}.
/// alpha is the upper switching threshold, beta the lower one.
struct PlanePoint {
    double alpha{};
    double beta{};

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

inline bool in_plane(const PlanePoint& p) { return p.alpha > p.beta; }

/// Axis-aligned rectangle in (beta, alpha) coordinates.
struct Rect {
    double beta_lo{}, beta_hi{};
    double alpha_lo{}, alpha_hi{};

    bool empty() const { return beta_lo >= beta_hi || alpha_lo >= alpha_hi; }
    double width() const { return beta_hi - beta_lo; }
    double height() const { return alpha_hi - alpha_lo; }
    double area() const { return empty() ? 0.0 : width() * height(); }

    Rect intersect(const Rect& o) const {
        return Rect{std::max(beta_lo, o.beta_lo), std::min(beta_hi, o.beta_hi),
                    std::max(alpha_lo, o.alpha_lo), std::min(alpha_hi, o.alpha_hi)};
    }
    bool contains(double beta, double alpha) const {
        return beta >= beta_lo && beta <= beta_hi && alpha >= alpha_lo && alpha <= alpha_hi;
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

// --- small polygon toolkit, (x, y) = (beta, alpha) ---

using Pt2 = std::array<double, 2>;
using Polygon = std::vector<Pt2>;

/// Half-plane nx*x + ny*y <= c.
struct HalfPlane {
    double nx{}, ny{}, c{};
};

/// Sutherland-Hodgman clip of a simple polygon against one half-plane.
Polygon clip(const Polygon& poly, const HalfPlane& h);

Polygon clip_rect(Polygon poly, const Rect& r);

/// signed area (positive for counterclockwise vertex order)
double polygon_area(const Polygon& poly);

/// ∬ x^p y^q dA over the polygon interior, p+q <= 3.
/// Sign follows vertex orientation; normalize with ensure_ccw first if needed.
double polygon_moment(const Polygon& poly, int p, int q);

void ensure_ccw(Polygon& poly);

}  // namespace hyst
