#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyst/errors.hpp"
#include "hyst/geometry.hpp"

namespace hyst {

struct RegionIntegralResult {
    double value{};
    double abs_error_estimate{};
};

enum class GridInterp { piecewise_constant, bilinear };

/// Density mu(alpha, beta) on the half-plane P, compactly supported.
///
/// Three representations:
///  - piecewise-constant polygonal regions (edges axis-aligned or slope +-1),
///  - analytic builtins (`butterfly_sym`, `double_loop_same_orientation`,
///    `multiloop_sin`), integrated in closed form,
///  - sampled N x N grid with piecewise-constant or bilinear interpolation.
///
/// All integrals are taken over (query region) ∩ P ∩ support and are exact up
/// to rounding for every representation.
class WeightingFunction {
public:
    enum class Kind { piecewise_constant, analytic_builtin, sampled_grid };

    struct Region {
        Polygon polygon;  // (beta, alpha) vertices, simple; normalized to ccw
        double density{};
    };
    // where regions overlap, their densities add

    static WeightingFunction piecewise_constant(std::vector<Region> regions);

    /// Anti-symmetric two-sided density on the triangle {-b1 < beta < alpha < b1}:
    /// -1 where alpha <= -beta, +1 where alpha > -beta.
    static WeightingFunction butterfly_sym(double b1 = 1.0);

    /// +1 on the same triangle except -1 on the lens {-b1<beta<0, 0<alpha<beta+b1};
    /// produces two same-oriented subloops joined at a crossover.
    static WeightingFunction double_loop_same_orientation(double b1 = 1.0);

    /// sin(2*pi*(alpha-beta)) + sin(2*pi*(alpha+beta)) on {-1<beta<alpha<1}.
    static WeightingFunction multiloop_sin();

    /// Cell-centered samples over the support rectangle, row-major with beta
    /// varying fastest.
    static WeightingFunction sampled_grid(Rect support, int n, std::vector<double> samples,
                                          GridInterp interp);

    Kind kind() const { return kind_; }
    const std::string& builtin_name() const { return builtin_name_; }
    const Rect& support() const { return support_; }

    double eval(double alpha, double beta) const;
    double operator()(double alpha, double beta) const { return eval(alpha, beta); }

    /// ∬ mu over rect ∩ P ∩ support.
    RegionIntegralResult integrate_rectangle(const Rect& r) const;

    /// 2 * ∬ mu(a,b) (a-b) over the triangle {u_min < beta < alpha < u_max};
    /// this equals the signed area of the steady loop spanning [u_min, u_max].
    double integrate_triangle_weighted(double u_min, double u_max) const;

    /// ∬ mu over the triangle {a < beta < alpha < b} (support-clipped).
    double triangle(double a, double b) const;

    /// 1-D line integrals along axis-parallel segments (support-clipped):
    /// row:    ∫ mu(gamma, beta) dbeta over beta in [b1, b2] at fixed alpha=gamma
    /// column: ∫ mu(alpha, kappa) dalpha over alpha in [a1, a2] at fixed beta=kappa
    double row_integral(double gamma, double b1, double b2) const;
    double col_integral(double kappa, double a1, double a2) const;

    /// Same density with |mu| in place of mu.  For piecewise-constant regions
    /// this takes per-region absolute values, which upper-bounds |mu| where
    /// regions overlap (and equals it where they do not).
    WeightingFunction absolute() const;

    /// Scan lines where the density changes structure (region edges, grid
    /// cell boundaries, sign lattice of the sine builtin).  Segment-extremum
    /// searches must include them as candidates: the scanline integrals jump
    /// across these lines, so a pure lattice can miss thin extremal slivers.
    /// Returned as (alpha knots, beta knots), sorted.
    std::pair<std::vector<double>, std::vector<double>> scan_knots() const;

private:
    WeightingFunction() = default;

    double integral(const Rect& r, bool weighted) const;         // over r ∩ P ∩ support
    double tri_integral(double a, double b, bool weighted) const;  // over T(a,b) ∩ support

    // piecewise-constant path
    double regions_integral(const Rect& r, bool weighted) const;
    double regions_line(bool row, double level, double lo, double hi) const;

    // multiloop_sin closed forms
    double sin_rect(const Rect& r, bool weighted) const;
    double sin_tri(double a, double b, bool weighted) const;

    // sampled grid path
    double grid_integral(const Rect& r, bool weighted) const;
    double grid_line(bool row, double level, double lo, double hi) const;
    double grid_sample(int i, int j) const;

    Kind kind_{Kind::piecewise_constant};
    std::string builtin_name_;
    std::vector<Region> regions_;  // also backs the piecewise-constant builtins
    Rect support_{};
    bool sin_builtin_{false};
    bool abs_{false};  // integrate |mu| (sin builtin only; others materialize)

    int grid_n_{0};
    std::vector<double> grid_samples_;
    GridInterp grid_interp_{GridInterp::piecewise_constant};
};

inline double eval_mu(const WeightingFunction& mu, const PlanePoint& p) { return mu.eval(p.alpha, p.beta); }

inline RegionIntegralResult integrate_rectangle(const WeightingFunction& mu, const Rect& r) {
    return mu.integrate_rectangle(r);
}

inline double integrate_triangle_weighted(const WeightingFunction& mu, double u_min, double u_max) {
    return mu.integrate_triangle_weighted(u_min, u_max);
}

struct LambdaBounds {
    double lambda_m{};
    double lambda_M{};
};

/// Slope bounds of the Preisach operator: extrema over (gamma, kappa) in P of
/// twice the diagonal-anchored segment integrals of mu (horizontal family
/// ∫_kappa^gamma mu(gamma, b) db and vertical family ∫_kappa^gamma mu(a, kappa) da).
/// Lattice scan refined by coordinate-wise golden-section polish.
LambdaBounds lambda_bounds(const WeightingFunction& mu, int grid_n = 256);

}  // namespace hyst
