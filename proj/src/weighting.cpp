#include "hyst/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hyst {

namespace {

constexpr double kW = 2.0 * std::numbers::pi;  // angular frequency of the sine builtin

double S(double x) { return std::sin(kW * x); }
double Co(double x) { return std::cos(kW * x); }

// ---- closed forms for mu = sin(w(a-b)) + sin(w(a+b)) = 2 sin(w a) cos(w b) ----

// plain integral over a rectangle beta in [p,q], alpha in [r,s] inside P
double sin_rect_plain(double p, double q, double r, double s) {
    const double I1 = (S(r - p) - S(r - q) - S(s - p) + S(s - q)) / (kW * kW);
    const double I2 = (S(r + q) - S(r + p) - S(s + q) + S(s + p)) / (kW * kW);
    return I1 + I2;
}

// plain integral over the triangle {a < beta < alpha < b}
double sin_tri_plain(double a, double b) {
    auto S2 = [](double x) { return std::sin(2.0 * kW * x); };
    const double J1 = (b - a) / kW - S(b - a) / (kW * kW);
    const double J2 = (-(S2(b) + S2(a)) / 2.0 + S(a + b)) / (kW * kW);
    return J1 + J2;
}

// antiderivative helpers for the (alpha-beta)-weighted forms
double Acal(double x) { return -2.0 * Co(x) / (kW * kW * kW) - x * S(x) / (kW * kW); }
double Dfun(double c, double beta) { return beta * S(c + beta) / kW + Co(c + beta) / (kW * kW); }

double sin_rect_weighted(double p, double q, double r, double s) {
    const double K1 = (Acal(s - p) - Acal(s - q)) - (Acal(r - p) - Acal(r - q));
    const double K2 = (Acal(s + q) - Acal(s + p)) - (Acal(r + q) - Acal(r + p)) +
                      (2.0 / kW) * ((Dfun(s, q) - Dfun(s, p)) - (Dfun(r, q) - Dfun(r, p)));
    return K1 + K2;
}

double sin_tri_weighted(double a, double b) {
    auto E = [](double beta) {
        return beta * std::sin(2.0 * kW * beta) / (2.0 * kW) + std::cos(2.0 * kW * beta) / (4.0 * kW * kW);
    };
    const double L1 = Acal(b - a) + 2.0 / (kW * kW * kW);
    const double L2 = (Acal(2.0 * b) - Acal(a + b)) - 0.5 * (Acal(2.0 * b) - Acal(2.0 * a)) +
                      (2.0 / kW) * (Dfun(b, b) - Dfun(b, a)) - (2.0 / kW) * (E(b) - E(a));
    return L1 + L2;
}

// sign of mu = 2 sin(w a) cos(w b) on the open lattice cell containing the point
int sin_sign(double alpha, double beta) {
    const double sa = std::sin(kW * alpha);
    const double cb = std::cos(kW * beta);
    const double v = sa * cb;
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

// cut points of sign changes within [lo, hi]: sin(w a) flips at multiples of
// 1/2, cos(w b) flips at 1/4 + multiples of 1/2
void sign_cuts(double lo, double hi, double offset, std::vector<double>& out) {
    out.clear();
    out.push_back(lo);
    const double k0 = std::ceil((lo - offset) / 0.5);
    for (double k = k0;; k += 1.0) {
        const double x = offset + 0.5 * k;
        if (x >= hi) break;
        if (x > lo) out.push_back(x);
    }
    out.push_back(hi);
}

}  // namespace

// ---------------------------------------------------------------------------

WeightingFunction WeightingFunction::piecewise_constant(std::vector<Region> regions) {
    WeightingFunction w;
    w.kind_ = Kind::piecewise_constant;
    w.regions_ = std::move(regions);
    double blo = std::numeric_limits<double>::infinity(), bhi = -blo;
    double alo = blo, ahi = -blo;
    for (Region& r : w.regions_) {
        ensure_ccw(r.polygon);
        for (const Pt2& p : r.polygon) {
            blo = std::min(blo, p[0]);
            bhi = std::max(bhi, p[0]);
            alo = std::min(alo, p[1]);
            ahi = std::max(ahi, p[1]);
        }
    }
    if (w.regions_.empty()) { blo = bhi = alo = ahi = 0.0; }
    if (!std::isfinite(blo) || !std::isfinite(bhi) || !std::isfinite(alo) || !std::isfinite(ahi))
        throw UnboundedSupport("piecewise-constant regions must have finite vertices");
    w.support_ = Rect{blo, bhi, alo, ahi};
    return w;
}

WeightingFunction WeightingFunction::butterfly_sym(double b1) {
    // -1 on the wedge alpha <= -beta of the triangle {-b1 < beta < alpha < b1},
    // +1 on the rest of it
    std::vector<Region> regions;
    regions.push_back({Polygon{{-b1, -b1}, {0.0, 0.0}, {-b1, b1}}, -1.0});
    regions.push_back({Polygon{{0.0, 0.0}, {b1, b1}, {-b1, b1}}, 1.0});
    WeightingFunction w = piecewise_constant(std::move(regions));
    w.kind_ = Kind::analytic_builtin;
    w.builtin_name_ = "butterfly_sym";
    return w;
}

WeightingFunction WeightingFunction::double_loop_same_orientation(double b1) {
    // lens {-b1 < beta < 0, 0 < alpha < beta + b1} carries -1; the remainder
    // of the support triangle carries +1 (split into lens-free polygons)
    std::vector<Region> regions;
    regions.push_back({Polygon{{-b1, 0.0}, {0.0, 0.0}, {0.0, b1}}, -1.0});
    // below the lens: alpha <= 0
    regions.push_back({Polygon{{-b1, -b1}, {0.0, 0.0}, {-b1, 0.0}}, 1.0});
    // above the lens hypotenuse: alpha >= beta + b1, beta <= 0
    regions.push_back({Polygon{{-b1, 0.0}, {0.0, b1}, {-b1, b1}}, 1.0});
    // right half: beta >= 0
    regions.push_back({Polygon{{0.0, 0.0}, {b1, b1}, {0.0, b1}}, 1.0});
    WeightingFunction w = piecewise_constant(std::move(regions));
    w.kind_ = Kind::analytic_builtin;
    w.builtin_name_ = "double_loop_same_orientation";
    return w;
}

WeightingFunction WeightingFunction::multiloop_sin() {
    WeightingFunction w;
    w.kind_ = Kind::analytic_builtin;
    w.builtin_name_ = "multiloop_sin";
    w.sin_builtin_ = true;
    w.support_ = Rect{-1.0, 1.0, -1.0, 1.0};
    return w;
}

WeightingFunction WeightingFunction::sampled_grid(Rect support, int n, std::vector<double> samples,
                                                  GridInterp interp) {
    if (n < 1) throw ValidationError("sampled_grid: n must be positive");
    if (static_cast<int>(samples.size()) != n * n)
        throw ValidationError("sampled_grid: expected n*n samples");
    if (support.empty()) throw UnboundedSupport("sampled_grid: empty support rectangle");
    WeightingFunction w;
    w.kind_ = Kind::sampled_grid;
    w.support_ = support;
    w.grid_n_ = n;
    w.grid_samples_ = std::move(samples);
    w.grid_interp_ = interp;
    return w;
}

WeightingFunction WeightingFunction::absolute() const {
    WeightingFunction w = *this;
    switch (kind_) {
        case Kind::piecewise_constant:
            for (Region& r : w.regions_) r.density = std::abs(r.density);
            break;
        case Kind::analytic_builtin:
            if (sin_builtin_)
                w.abs_ = true;
            else
                for (Region& r : w.regions_) r.density = std::abs(r.density);
            break;
        case Kind::sampled_grid:
            for (double& s : w.grid_samples_) s = std::abs(s);
            break;
    }
    return w;
}

double WeightingFunction::grid_sample(int i, int j) const {
    i = std::clamp(i, 0, grid_n_ - 1);
    j = std::clamp(j, 0, grid_n_ - 1);
    return grid_samples_[static_cast<std::size_t>(j) * grid_n_ + i];  // i: beta index, j: alpha index
}

double WeightingFunction::eval(double alpha, double beta) const {
    if (alpha <= beta) return 0.0;  // outside the admissible plane
    switch (kind_) {
        case Kind::piecewise_constant:
        case Kind::analytic_builtin: {
            if (sin_builtin_) {
                if (!support_.contains(beta, alpha)) return 0.0;
                const double v = std::sin(kW * (alpha - beta)) + std::sin(kW * (alpha + beta));
                return abs_ ? std::abs(v) : v;
            }
            // point-in-polygon by even-odd crossings; overlapping regions add
            double total = 0.0;
            for (const Region& reg : regions_) {
                bool inside = false;
                const std::size_t n = reg.polygon.size();
                for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                    const Pt2& a = reg.polygon[i];
                    const Pt2& b = reg.polygon[j];
                    if ((a[1] > alpha) != (b[1] > alpha)) {
                        const double x = a[0] + (alpha - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                        if (beta < x) inside = !inside;
                    }
                }
                if (inside) total += reg.density;
            }
            return total;
        }
        case Kind::sampled_grid: {
            if (!support_.contains(beta, alpha)) return 0.0;
            const double hx = support_.width() / grid_n_;
            const double hy = support_.height() / grid_n_;
            const double fx = (beta - support_.beta_lo) / hx - 0.5;
            const double fy = (alpha - support_.alpha_lo) / hy - 0.5;
            if (grid_interp_ == GridInterp::piecewise_constant) {
                return grid_sample(static_cast<int>(std::floor(fx + 0.5)),
                                   static_cast<int>(std::floor(fy + 0.5)));
            }
            const int i0 = static_cast<int>(std::floor(fx));
            const int j0 = static_cast<int>(std::floor(fy));
            const double tx = std::clamp(fx - i0, 0.0, 1.0);
            const double ty = std::clamp(fy - j0, 0.0, 1.0);
            const double v00 = grid_sample(i0, j0), v10 = grid_sample(i0 + 1, j0);
            const double v01 = grid_sample(i0, j0 + 1), v11 = grid_sample(i0 + 1, j0 + 1);
            return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 + (1 - tx) * ty * v01 + tx * ty * v11;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// region (polygon) integration

double WeightingFunction::regions_integral(const Rect& r, bool weighted) const {
    double total = 0.0;
    for (const Region& reg : regions_) {
        Polygon poly = clip_rect(reg.polygon, r);
        poly = clip(poly, {1.0, -1.0, 0.0});  // beta - alpha <= 0, keep alpha >= beta
        if (poly.size() < 3) continue;
        if (weighted) {
            total += reg.density * (polygon_moment(poly, 0, 1) - polygon_moment(poly, 1, 0));
        } else {
            total += reg.density * polygon_area(poly);
        }
    }
    return total;
}

double WeightingFunction::regions_line(bool row, double level, double lo, double hi) const {
    // measure of {t in [lo,hi] : point(t) in region}, region by region, where
    // point(t) = (level, t) for rows and (t, level) for columns; even-odd
    // pairing of the edge crossings at the scan level
    double total = 0.0;
    for (const Region& reg : regions_) {
        std::vector<double> xs;
        const std::size_t n = reg.polygon.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Pt2& a = reg.polygon[i];
            const Pt2& b = reg.polygon[j];
            const double ya = row ? a[1] : a[0];
            const double yb = row ? b[1] : b[0];
            const double xa = row ? a[0] : a[1];
            const double xb = row ? b[0] : b[1];
            if ((ya > level) != (yb > level)) xs.push_back(xa + (level - ya) / (yb - ya) * (xb - xa));
        }
        if (xs.size() < 2) continue;
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const double a = std::max(lo, xs[k]);
            const double b = std::min(hi, xs[k + 1]);
            if (b > a) total += reg.density * (b - a);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// sine builtin integration (support box [-1,1]^2 clipped upstream)

double WeightingFunction::sin_rect(const Rect& r, bool weighted) const {
    if (r.empty()) return 0.0;
    if (!abs_) return weighted ? sin_rect_weighted(r.beta_lo, r.beta_hi, r.alpha_lo, r.alpha_hi)
                               : sin_rect_plain(r.beta_lo, r.beta_hi, r.alpha_lo, r.alpha_hi);
    // |mu|: split at the sign lattice so each cell is single-signed
    std::vector<double> bc, ac;
    sign_cuts(r.beta_lo, r.beta_hi, 0.25, bc);
    sign_cuts(r.alpha_lo, r.alpha_hi, 0.0, ac);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < bc.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ac.size(); ++j) {
            const int sg = sin_sign(0.5 * (ac[j] + ac[j + 1]), 0.5 * (bc[i] + bc[i + 1]));
            if (sg == 0) continue;
            const double v = weighted ? sin_rect_weighted(bc[i], bc[i + 1], ac[j], ac[j + 1])
                                      : sin_rect_plain(bc[i], bc[i + 1], ac[j], ac[j + 1]);
            total += sg * v;
        }
    }
    return total;
}

double WeightingFunction::sin_tri(double a, double b, bool weighted) const {
    if (a >= b) return 0.0;
    if (!abs_) return weighted ? sin_tri_weighted(a, b) : sin_tri_plain(a, b);
    // split the triangle at the union of both cut lattices
    std::vector<double> c1, c2, cuts;
    sign_cuts(a, b, 0.25, c1);
    sign_cuts(a, b, 0.0, c2);
    cuts.reserve(c1.size() + c2.size());
    std::merge(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(cuts));
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (std::size_t j = 0; j < cuts.size() - 1; ++j) {        // alpha band
        for (std::size_t i = 0; i <= j && i + 1 < cuts.size(); ++i) {  // beta band
            double piece;
            if (i == j) {
                const int sg = sin_sign(cuts[j] + (cuts[j + 1] - cuts[j]) * 0.75,
                                        cuts[i] + (cuts[i + 1] - cuts[i]) * 0.25);
                piece = sg * (weighted ? sin_tri_weighted(cuts[i], cuts[i + 1])
                                       : sin_tri_plain(cuts[i], cuts[i + 1]));
            } else {
                const int sg = sin_sign(0.5 * (cuts[j] + cuts[j + 1]), 0.5 * (cuts[i] + cuts[i + 1]));
                piece = sg * (weighted ? sin_rect_weighted(cuts[i], cuts[i + 1], cuts[j], cuts[j + 1])
                                       : sin_rect_plain(cuts[i], cuts[i + 1], cuts[j], cuts[j + 1]));
            }
            total += piece;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// sampled grid integration: exact per-cell overlap

double WeightingFunction::grid_integral(const Rect& r, bool weighted) const {
    const Rect q = r.intersect(support_);
    if (q.empty()) return 0.0;
    const double hx = support_.width() / grid_n_;
    const double hy = support_.height() / grid_n_;

    const bool bilinear = grid_interp_ == GridInterp::bilinear;
    // integration patches: cells for piecewise-constant, the cell-center
    // lattice (with clamped margins) for bilinear
    const int nx = bilinear ? grid_n_ + 1 : grid_n_;
    auto patch_x = [&](int i) {
        if (!bilinear) return support_.beta_lo + i * hx;
        if (i <= 0) return support_.beta_lo;
        if (i >= grid_n_ + 1) return support_.beta_hi;
        return support_.beta_lo + (i - 0.5) * hx;
    };
    auto patch_y = [&](int j) {
        if (!bilinear) return support_.alpha_lo + j * hy;
        if (j <= 0) return support_.alpha_lo;
        if (j >= grid_n_ + 1) return support_.alpha_hi;
        return support_.alpha_lo + (j - 0.5) * hy;
    };

    const int i0 = std::clamp(static_cast<int>(std::floor((q.beta_lo - support_.beta_lo) / hx - (bilinear ? 0.5 : 0.0))), 0, nx - 1);
    const int i1 = std::clamp(static_cast<int>(std::ceil((q.beta_hi - support_.beta_lo) / hx + (bilinear ? 0.5 : 0.0))), 1, nx);
    const int j0 = std::clamp(static_cast<int>(std::floor((q.alpha_lo - support_.alpha_lo) / hy - (bilinear ? 0.5 : 0.0))), 0, nx - 1);
    const int j1 = std::clamp(static_cast<int>(std::ceil((q.alpha_hi - support_.alpha_lo) / hy + (bilinear ? 0.5 : 0.0))), 1, nx);

    double total = 0.0;
    for (int j = j0; j < j1; ++j) {
        const double y0 = patch_y(j), y1 = patch_y(j + 1);
        if (y1 <= q.alpha_lo || y0 >= q.alpha_hi || y0 >= y1) continue;
        for (int i = i0; i < i1; ++i) {
            const double x0 = patch_x(i), x1 = patch_x(i + 1);
            if (x1 <= q.beta_lo || x0 >= q.beta_hi || x0 >= x1) continue;
            if (x0 >= y1) continue;  // patch entirely below the diagonal
            Polygon poly{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
            poly = clip_rect(std::move(poly), q);
            poly = clip(poly, {1.0, -1.0, 0.0});  // alpha >= beta
            if (poly.size() < 3) continue;

            if (!bilinear) {
                const double d = grid_sample(i, j);
                total += d * (weighted ? (polygon_moment(poly, 0, 1) - polygon_moment(poly, 1, 0))
                                       : polygon_area(poly));
                continue;
            }
            // bilinear patch mu(x,y) = c00 + c10 x + c01 y + c11 xy from the
            // four corner samples (margins collapse to constant/linear)
            const double v00 = grid_sample(i - 1, j - 1), v10 = grid_sample(i, j - 1);
            const double v01 = grid_sample(i - 1, j), v11 = grid_sample(i, j);
            const double dx = x1 - x0, dy = y1 - y0;
            const double ax = (v10 - v00) / dx, ay = (v01 - v00) / dy;
            const double axy = (v11 - v10 - v01 + v00) / (dx * dy);
            const double c00 = v00 - ax * x0 - ay * y0 + axy * x0 * y0;
            const double c10 = ax - axy * y0;
            const double c01 = ay - axy * x0;
            const double c11 = axy;
            auto M = [&](int px, int py) { return polygon_moment(poly, px, py); };
            if (!weighted) {
                total += c00 * M(0, 0) + c10 * M(1, 0) + c01 * M(0, 1) + c11 * M(1, 1);
            } else {  // additional factor (y - x)
                total += c00 * (M(0, 1) - M(1, 0)) + c10 * (M(1, 1) - M(2, 0)) +
                         c01 * (M(0, 2) - M(1, 1)) + c11 * (M(1, 2) - M(2, 1));
            }
        }
    }
    return total;
}

double WeightingFunction::grid_line(bool row, double level, double lo, double hi) const {
    // 1-D exact integral along a row (alpha = level) or column (beta = level)
    const double level_lo = row ? support_.alpha_lo : support_.beta_lo;
    const double level_hi = row ? support_.alpha_hi : support_.beta_hi;
    if (level <= level_lo || level >= level_hi) return 0.0;
    const double run_lo = row ? support_.beta_lo : support_.alpha_lo;
    const double run_hi = row ? support_.beta_hi : support_.alpha_hi;
    lo = std::max(lo, run_lo);
    hi = std::min(hi, run_hi);
    if (row) hi = std::min(hi, level);  // beta < alpha
    else lo = std::max(lo, level);
    if (lo >= hi) return 0.0;

    const double h = (run_hi - run_lo) / grid_n_;
    const bool bilinear = grid_interp_ == GridInterp::bilinear;
    auto sample_at = [&](double t) { return eval(row ? level : t, row ? t : level); };

    // integrate piecewise over knot intervals; integrand is constant or
    // linear there, so the midpoint value is exact
    double total = 0.0;
    const double offset = bilinear ? 0.5 * h : 0.0;
    int k0 = static_cast<int>(std::floor((lo - run_lo - offset) / h));
    for (int k = k0;; ++k) {
        const double a = std::max(lo, run_lo + offset + k * h);
        const double b = std::min(hi, run_lo + offset + (k + 1) * h);
        if (a >= hi) break;
        if (b > a) total += sample_at(0.5 * (a + b)) * (b - a);
    }
    return total;
}

// ---------------------------------------------------------------------------
// integral dispatch with diagonal decomposition

double WeightingFunction::tri_integral(double a, double b, bool weighted) const {
    a = std::max(a, support_.beta_lo);
    b = std::min(b, std::max(support_.alpha_hi, support_.beta_hi));
    if (a >= b) return 0.0;
    switch (kind_) {
        case Kind::piecewise_constant:
        case Kind::analytic_builtin:
            if (sin_builtin_) return sin_tri(a, b, weighted);
            return regions_integral(Rect{a, b, a, b}, weighted);
        case Kind::sampled_grid:
            return grid_integral(Rect{a, b, a, b}, weighted);
    }
    return 0.0;
}

double WeightingFunction::integral(const Rect& r0, bool weighted) const {
    Rect r = r0;
    if (r.empty()) return 0.0;
    switch (kind_) {
        case Kind::piecewise_constant:
        case Kind::analytic_builtin: {
            if (!sin_builtin_) return regions_integral(r, weighted);
            r = r.intersect(support_);
            if (r.empty()) return 0.0;
            if (r.beta_hi <= r.alpha_lo) return sin_rect(r, weighted);
            // straddles the diagonal: full rectangle part + triangle strip
            double total = 0.0;
            if (r.beta_lo < r.alpha_lo)
                total += sin_rect(Rect{r.beta_lo, r.alpha_lo, r.alpha_lo, r.alpha_hi}, weighted);
            const double c = std::max(r.beta_lo, r.alpha_lo);
            total += sin_tri(c, r.alpha_hi, weighted) - sin_tri(r.beta_hi, r.alpha_hi, weighted);
            return total;
        }
        case Kind::sampled_grid:
            return grid_integral(r, weighted);
    }
    return 0.0;
}

RegionIntegralResult WeightingFunction::integrate_rectangle(const Rect& r) const {
    const double v = integral(r, false);
    const Rect q = r.intersect(support_);
    const double scale = std::max(1.0, std::abs(v)) + q.area();
    return RegionIntegralResult{v, 32.0 * std::numeric_limits<double>::epsilon() * scale};
}

double WeightingFunction::triangle(double a, double b) const { return tri_integral(a, b, false); }

double WeightingFunction::integrate_triangle_weighted(double u_min, double u_max) const {
    return 2.0 * tri_integral(u_min, u_max, true);
}

// ---------------------------------------------------------------------------
// scanline integrals

double WeightingFunction::row_integral(double gamma, double b1, double b2) const {
    if (b1 > b2) return -row_integral(gamma, b2, b1);
    double lo = b1, hi = std::min(b2, gamma);  // beta < alpha on P
    switch (kind_) {
        case Kind::piecewise_constant:
        case Kind::analytic_builtin: {
            if (!sin_builtin_) return regions_line(true, gamma, lo, hi);
            if (gamma <= support_.alpha_lo || gamma >= support_.alpha_hi) return 0.0;
            lo = std::max(lo, support_.beta_lo);
            hi = std::min(hi, support_.beta_hi);
            if (lo >= hi) return 0.0;
            if (!abs_) return (Co(gamma - hi) - Co(gamma + hi) - Co(gamma - lo) + Co(gamma + lo)) / kW;
            // |2 sin(w gamma) cos(w beta)|: split at cos sign flips
            std::vector<double> cuts;
            sign_cuts(lo, hi, 0.25, cuts);
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
                const int sg = sin_sign(gamma, mid);
                total += sg * (Co(gamma - cuts[i + 1]) - Co(gamma + cuts[i + 1]) - Co(gamma - cuts[i]) +
                               Co(gamma + cuts[i])) / kW;
            }
            return total;
        }
        case Kind::sampled_grid:
            return grid_line(true, gamma, lo, hi);
    }
    return 0.0;
}

double WeightingFunction::col_integral(double kappa, double a1, double a2) const {
    if (a1 > a2) return -col_integral(kappa, a2, a1);
    double lo = std::max(a1, kappa), hi = a2;  // alpha > beta on P
    switch (kind_) {
        case Kind::piecewise_constant:
        case Kind::analytic_builtin: {
            if (!sin_builtin_) return regions_line(false, kappa, lo, hi);
            if (kappa <= support_.beta_lo || kappa >= support_.beta_hi) return 0.0;
            lo = std::max(lo, support_.alpha_lo);
            hi = std::min(hi, support_.alpha_hi);
            if (lo >= hi) return 0.0;
            if (!abs_) return (-Co(hi - kappa) - Co(hi + kappa) + Co(lo - kappa) + Co(lo + kappa)) / kW;
            std::vector<double> cuts;
            sign_cuts(lo, hi, 0.0, cuts);
            double total = 0.0;
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
                const int sg = sin_sign(mid, kappa);
                total += sg * (-Co(cuts[i + 1] - kappa) - Co(cuts[i + 1] + kappa) + Co(cuts[i] - kappa) +
                               Co(cuts[i] + kappa)) / kW;
            }
            return total;
        }
        case Kind::sampled_grid:
            return grid_line(false, kappa, lo, hi);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// structure knots

std::pair<std::vector<double>, std::vector<double>> WeightingFunction::scan_knots() const {
    std::vector<double> ka, kb;
    switch (kind_) {
        case Kind::piecewise_constant:
        case Kind::analytic_builtin:
            if (sin_builtin_) {
                // sign lattice of 2 sin(w a) cos(w b): half-integers in alpha,
                // quarter-offset half-integers in beta
                for (double x = -1.0; x <= 1.0 + 1e-12; x += 0.5) ka.push_back(x);
                for (double x = -0.75; x <= 1.0 + 1e-12; x += 0.5) kb.push_back(x);
                kb.push_back(-1.0);
                kb.push_back(1.0);
                break;
            }
            for (const Region& reg : regions_) {
                for (const Pt2& p : reg.polygon) {
                    kb.push_back(p[0]);
                    ka.push_back(p[1]);
                }
            }
            break;
        case Kind::sampled_grid: {
            const double hb = support_.width() / grid_n_;
            const double ha = support_.height() / grid_n_;
            const double off = grid_interp_ == GridInterp::bilinear ? 0.5 : 0.0;
            kb.push_back(support_.beta_lo);
            ka.push_back(support_.alpha_lo);
            for (int i = 0; i <= grid_n_; ++i) {
                kb.push_back(support_.beta_lo + (off + i) * hb);
                ka.push_back(support_.alpha_lo + (off + i) * ha);
            }
            kb.push_back(support_.beta_hi);
            ka.push_back(support_.alpha_hi);
            break;
        }
    }
    std::sort(ka.begin(), ka.end());
    ka.erase(std::unique(ka.begin(), ka.end()), ka.end());
    std::sort(kb.begin(), kb.end());
    kb.erase(std::unique(kb.begin(), kb.end()), kb.end());
    return {std::move(ka), std::move(kb)};
}

// ---------------------------------------------------------------------------
// slope bounds

namespace {

struct Candidate {
    double value, g, k;
    bool row;
};

double golden_min(const std::function<double(double)>& f, double a, double b, bool minimize) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if ((fc < fd) == minimize) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

LambdaBounds lambda_bounds(const WeightingFunction& mu, int grid_n) {
    if (grid_n < 64) throw ValidationError("lambda_bounds: grid_n must be >= 64");
    const Rect s = mu.support();
    if (!(std::isfinite(s.beta_lo) && std::isfinite(s.beta_hi) && std::isfinite(s.alpha_lo) &&
          std::isfinite(s.alpha_hi)))
        throw UnboundedSupport("lambda_bounds: support rectangle required");

    const double m = std::min(s.beta_lo, s.alpha_lo);
    const double M = std::max(s.beta_hi, s.alpha_hi);
    if (!(M > m)) return LambdaBounds{0.0, 0.0};

    auto f_row = [&](double g, double k) { return mu.row_integral(g, k, g); };
    auto f_col = [&](double g, double k) { return mu.col_integral(k, k, g); };

    // scan coordinates: uniform lattice plus the structure knots straddled by
    // +-delta, so one-sided limits across jump lines become candidates
    const double step = (M - m) / (grid_n - 1);
    const double delta = 1e-11 * std::max(1.0, M - m);
    std::vector<double> coords;
    coords.reserve(grid_n + 64);
    for (int i = 0; i < grid_n; ++i) coords.push_back(m + i * step);
    const auto [knots_a, knots_b] = mu.scan_knots();
    for (double x : knots_a) {
        coords.push_back(x - delta);
        coords.push_back(x + delta);
    }
    for (double x : knots_b) {
        coords.push_back(x - delta);
        coords.push_back(x + delta);
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::remove_if(coords.begin(), coords.end(),
                                [&](double x) { return x < m || x > M; }),
                 coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());

    const std::size_t topk = 24;
    std::vector<Candidate> lows, highs;
    auto prune = [&](std::vector<Candidate>& pool, bool low) {
        if (pool.size() <= 8192) return;
        auto cmp_lo = [](const Candidate& a, const Candidate& b) { return a.value < b.value; };
        auto cmp_hi = [](const Candidate& a, const Candidate& b) { return a.value > b.value; };
        if (low)
            std::nth_element(pool.begin(), pool.begin() + topk, pool.end(), cmp_lo);
        else
            std::nth_element(pool.begin(), pool.begin() + topk, pool.end(), cmp_hi);
        pool.resize(topk);
    };
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double g = coords[i], k = coords[j];
            const double vr = f_row(g, k), vc = f_col(g, k);
            lows.push_back({vr, g, k, true});
            lows.push_back({vc, g, k, false});
            highs.push_back({vr, g, k, true});
            highs.push_back({vc, g, k, false});
            prune(lows, true);
            prune(highs, false);
        }
    }
    std::sort(lows.begin(), lows.end(),
              [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
    if (lows.size() > topk) lows.resize(topk);
    std::sort(highs.begin(), highs.end(),
              [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
    if (highs.size() > topk) highs.resize(topk);

    // coordinate-wise golden-section polish; the raw candidate value stays a
    // floor (ceiling) because the objective need not be unimodal nearby
    auto polish = [&](const Candidate& c0, bool minimize) {
        double g = c0.g, k = c0.k;
        auto fun = [&](double gg, double kk) { return c0.row ? f_row(gg, kk) : f_col(gg, kk); };
        double span = 2.0 * step;
        double best = c0.value;
        double val = best;
        for (int it = 0; it < 40; ++it) {
            g = golden_min([&](double x) { return fun(x, k); }, std::max(m, g - span),
                           std::min(M, g + span), minimize);
            k = golden_min([&](double x) { return fun(g, x); }, std::max(m, k - span),
                           std::min(g, k + span), minimize);
            const double v = fun(g, k);
            best = minimize ? std::min(best, v) : std::max(best, v);
            if (std::abs(v - val) < 1e-15) break;
            val = v;
            span *= 0.7;
        }
        return best;
    };

    double lo = 0.0, hi = 0.0;  // segments of vanishing length contribute 0
    for (const Candidate& c : lows) lo = std::min(lo, polish(c, true));
    for (const Candidate& c : highs) hi = std::max(hi, polish(c, false));
    return LambdaBounds{2.0 * lo, 2.0 * hi};
}

}  // namespace hyst
