#include "hyst/geometry.hpp"

namespace hyst {

namespace {
constexpr double kClipEps = 1e-14;
}

Polygon clip(const Polygon& poly, const HalfPlane& h) {
    Polygon out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    out.reserve(n + 2);
    auto side = [&](const Pt2& p) { return h.nx * p[0] + h.ny * p[1] - h.c; };
    for (std::size_t i = 0; i < n; ++i) {
        const Pt2& a = poly[i];
        const Pt2& b = poly[(i + 1) % n];
        const double sa = side(a);
        const double sb = side(b);
        if (sa <= kClipEps) out.push_back(a);
        if ((sa < -kClipEps && sb > kClipEps) || (sa > kClipEps && sb < -kClipEps)) {
            const double t = sa / (sa - sb);
            out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
        }
    }
    return out;
}

Polygon clip_rect(Polygon poly, const Rect& r) {
    poly = clip(poly, {1.0, 0.0, r.beta_hi});    // x <= beta_hi
    poly = clip(poly, {-1.0, 0.0, -r.beta_lo});  // x >= beta_lo
    poly = clip(poly, {0.0, 1.0, r.alpha_hi});
    poly = clip(poly, {0.0, -1.0, -r.alpha_lo});
    return poly;
}

double polygon_area(const Polygon& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Pt2& a = poly[i];
        const Pt2& b = poly[(i + 1) % n];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * s;
}

void ensure_ccw(Polygon& poly) {
    if (polygon_area(poly) < 0.0) {
        Polygon rev(poly.rbegin(), poly.rend());
        poly.swap(rev);
    }
}

double polygon_moment(const Polygon& poly, int p, int q) {
    // Green's theorem: ∬ x^p y^q dA = 1/(p+1) ∮ x^(p+1) y^q dy.
    // Edge integrands are polynomials of degree <= p+q+1 <= 4 in the edge
    // parameter, so 3-point Gauss-Legendre per edge is exact.
    static const double gl_t[3] = {0.5 - 0.3872983346207417, 0.5, 0.5 + 0.3872983346207417};
    static const double gl_w[3] = {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};

    const std::size_t n = poly.size();
    if (n < 3) return 0.0;
    auto ipow = [](double x, int e) {
        double r = 1.0;
        for (int k = 0; k < e; ++k) r *= x;
        return r;
    };
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Pt2& a = poly[i];
        const Pt2& b = poly[(i + 1) % n];
        const double dy = b[1] - a[1];
        if (dy == 0.0) continue;
        double edge = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double x = a[0] + gl_t[k] * (b[0] - a[0]);
            const double y = a[1] + gl_t[k] * (b[1] - a[1]);
            edge += gl_w[k] * ipow(x, p + 1) * ipow(y, q);
        }
        total += edge * dy;
    }
    return total / static_cast<double>(p + 1);
}

}  // namespace hyst
