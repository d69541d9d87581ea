#pragma once

#include <functional>

#include "hyst/geometry.hpp"

namespace hyst {

struct QuadResult {
    double value{};
    double abs_error{};
    int panels{};
};

/// Adaptive 2-D panel quadrature over an axis-aligned rectangle: embedded
/// tensor Gauss-Legendre 5/3 estimate, splitting the longest edge first.
/// Suited to piecewise-smooth integrands; panel splits align with kinks after
/// a few levels.
QuadResult integrate2d(const std::function<double(double, double)>& f, const Rect& r,
                       double abs_tol = 1e-10, int max_panels = 200000);

}  // namespace hyst
