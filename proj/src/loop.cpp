#include "hyst/loop.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace hyst {

namespace {

double golden_min_abs(const std::function<double(double)>& f, double a, double b, double* xmin) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = std::abs(f(c)), fd = std::abs(f(d));
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = std::abs(f(c));
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = std::abs(f(d));
        }
    }
    *xmin = 0.5 * (a + b);
    return std::abs(f(*xmin));
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<std::pair<double, double>> HysteresisLoop::closed_polyline() const {
    std::vector<std::pair<double, double>> poly = ascending;
    // the shared extremes live in both branches; drop them from the return leg
    for (std::size_t i = 1; i + 1 < descending.size(); ++i) poly.push_back(descending[i]);
    if (!descending.empty()) poly.push_back(descending.back());
    if (poly.size() > 1 && poly.back() == poly.front()) poly.pop_back();
    return poly;
}

HysteresisLoop run_periodic(PreisachState state, double u_min, double u_max, int samples_per_branch) {
    if (!(u_min < u_max)) throw ValidationError("run_periodic: u_min must be below u_max");
    if (samples_per_branch < 2) throw ValidationError("run_periodic: samples_per_branch must be >= 2");

    // one transient period erases the initial relay states inside the span
    state.apply(u_min);
    state.apply(u_max);
    state.apply(u_min);

    HysteresisLoop loop;
    loop.u_min = u_min;
    loop.u_max = u_max;
    loop.t1 = 3.0;
    loop.t2 = 4.0;
    loop.period = 2.0;
    const double span = u_max - u_min;
    loop.ascending.reserve(samples_per_branch + 1);
    loop.descending.reserve(samples_per_branch + 1);
    for (int k = 0; k <= samples_per_branch; ++k) {
        const double v = (k == samples_per_branch) ? u_max : u_min + span * k / samples_per_branch;
        loop.ascending.emplace_back(v, state.apply(v));
    }
    for (int k = 0; k <= samples_per_branch; ++k) {
        const double v = (k == samples_per_branch) ? u_min : u_max - span * k / samples_per_branch;
        loop.descending.emplace_back(v, state.apply(v));
    }
    return loop;
}

double signed_area(const std::vector<std::pair<double, double>>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [x0, y0] = poly[i];
        const auto& [x1, y1] = poly[(i + 1) % n];
        s += x0 * y1 - x1 * y0;
    }
    return 0.5 * s;
}

double signed_area(const HysteresisLoop& loop) { return signed_area(loop.closed_polyline()); }

std::vector<std::pair<double, double>> phase_polyline(const SampledSignal& u, const SampledSignal& y) {
    std::vector<double> times;
    times.reserve(u.size() + y.size());
    times.insert(times.end(), u.times.begin(), u.times.end());
    times.insert(times.end(), y.times.begin(), y.times.end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::vector<std::pair<double, double>> pts;
    pts.reserve(times.size() + y.size());
    const bool step = y.interp == SampledSignal::Interp::step;
    std::size_t k = 0;  // next y breakpoint
    for (const double t : times) {
        const double ut = u.value_at(t);
        while (k < y.size() && y.times[k] < t) ++k;
        if (step && k > 0 && k < y.size() && y.times[k] == t) {
            pts.emplace_back(ut, y.values[k - 1]);  // jump edge
            pts.emplace_back(ut, y.values[k]);
        } else {
            pts.emplace_back(ut, y.value_at(t));
        }
    }
    return pts;
}

double crossover_integral(const WeightingFunction& mu, double u_min, double u_max, double u_c) {
    if (!(u_min <= u_c && u_c <= u_max)) throw ValidationError("crossover_integral: u_c outside range");
    return mu.integrate_rectangle(Rect{u_min, u_c, u_c, u_max}).value;
}

CrossoverSet find_crossovers(const WeightingFunction& mu, double u_min, double u_max, int scan_n,
                             double tol) {
    if (scan_n < 64) throw ValidationError("find_crossovers: scan_n must be >= 64");
    if (!(u_min < u_max)) throw ValidationError("find_crossovers: u_min must be below u_max");

    auto F = [&](double c) { return crossover_integral(mu, u_min, u_max, c); };

    const double span = u_max - u_min;
    std::vector<double> xs(scan_n + 1), fv(scan_n + 1);
    double fmax = 0.0;
    for (int i = 0; i <= scan_n; ++i) {
        xs[i] = (i == scan_n) ? u_max : u_min + span * i / scan_n;
        fv[i] = F(xs[i]);
        fmax = std::max(fmax, std::abs(fv[i]));
    }
    const double scale = std::max(1.0, fmax);
    const double f_zero = tol * scale;

    // coincidence plateaus: interior runs where F vanishes along the lattice
    std::vector<char> in_plateau(scan_n + 1, 0);
    CrossoverSet out;
    bool merged_lo = false, merged_hi = false;
    {
        int i = 1;
        while (i < scan_n) {
            if (std::abs(fv[i]) <= f_zero) {
                int j = i;
                while (j + 1 < scan_n && std::abs(fv[j + 1]) <= f_zero) ++j;
                if (j > i) {  // at least two consecutive lattice points
                    for (int k = i; k <= j; ++k) in_plateau[k] = 1;
                    const bool lo_touch = (i <= 1);
                    const bool hi_touch = (j >= scan_n - 1);
                    out.segments.emplace_back(xs[i], xs[j]);
                    merged_lo = merged_lo || lo_touch;
                    merged_hi = merged_hi || hi_touch;
                }
                i = j + 1;
            } else {
                ++i;
            }
        }
    }

    std::vector<double> roots;
    // sign-change brackets, polished by bisection
    for (int i = 0; i < scan_n; ++i) {
        if (in_plateau[i] || in_plateau[i + 1]) continue;
        if (fv[i] == 0.0 && i > 0 && !in_plateau[i]) {
            roots.push_back(xs[i]);
            continue;
        }
        if (fv[i] * fv[i + 1] < 0.0) roots.push_back(bisect_root(F, xs[i], xs[i + 1], tol));
    }
    // tangential touches: local minima of |F| polished by golden section
    for (int i = 1; i < scan_n; ++i) {
        if (in_plateau[i]) continue;
        const double am = std::abs(fv[i - 1]), a0 = std::abs(fv[i]), ap = std::abs(fv[i + 1]);
        if (a0 < am && a0 < ap && fv[i - 1] * fv[i] > 0.0 && fv[i] * fv[i + 1] > 0.0) {
            double xstar = xs[i];
            const double fstar = golden_min_abs(F, xs[i - 1], xs[i + 1], &xstar);
            if (fstar <= f_zero) roots.push_back(xstar);
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double a, double b) { return std::abs(a - b) < 4.0 * tol + 1e-12 * span; }),
                roots.end());
    // drop roots swallowed by a coincidence segment or hugging an extreme
    std::erase_if(roots, [&](double r) {
        if (r - u_min < span / scan_n * 0.5 || u_max - r < span / scan_n * 0.5) return true;
        for (const auto& [lo, hi] : out.segments)
            if (r >= lo - span / scan_n && r <= hi + span / scan_n) return true;
        return false;
    });

    // y_c values from the ascending branch of the steady loop
    PreisachState base(mu, MemoryInterface::from_value(u_min));
    base.apply(u_min);
    base.apply(u_max);
    base.apply(u_min);
    const double y_base = base.output();
    for (const double r : roots) out.points.emplace_back(r, y_base + 2.0 * mu.triangle(u_min, r));

    int components = 2;  // the two trivial extremes
    components += static_cast<int>(roots.size());
    components += static_cast<int>(out.segments.size());
    if (merged_lo) --components;
    if (merged_hi) --components;
    out.maximal_components = std::max(components, 1);
    out.scan_scale = scale;
    return out;
}

LoopClassification classify(const WeightingFunction& mu, double u_min, double u_max,
                            const ClassifyOptions& opts) {
    LoopClassification result;
    result.crossovers = find_crossovers(mu, u_min, u_max, opts.scan_n, opts.tol);

    double area_tol = opts.area_tol;
    if (area_tol <= 0.0) {
        const double span = u_max - u_min;
        area_tol = mu.kind() == WeightingFunction::Kind::sampled_grid ? 1e-6 * span * span : 1e-9;
    }

    // steady loop sampled through the crossover inputs so subloops close there
    std::set<double> cuts{u_min, u_max};
    for (const auto& [uc, yc] : result.crossovers.points) cuts.insert(uc);
    std::vector<double> grid;
    const double span = u_max - u_min;
    for (int k = 0; k <= opts.samples_per_branch; ++k)
        grid.push_back(k == opts.samples_per_branch ? u_max : u_min + span * k / opts.samples_per_branch);
    for (const double c : cuts) grid.push_back(c);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    PreisachState state(mu, MemoryInterface::from_value(u_min));
    state.apply(u_min);
    state.apply(u_max);
    state.apply(u_min);
    HysteresisLoop loop;
    loop.u_min = u_min;
    loop.u_max = u_max;
    loop.t1 = 3.0;
    loop.t2 = 4.0;
    loop.period = 2.0;
    for (const double v : grid) loop.ascending.emplace_back(v, state.apply(v));
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) loop.descending.emplace_back(*it, state.apply(*it));

    result.total_area = signed_area(loop);

    const double y_lo = std::min_element(loop.ascending.begin(), loop.ascending.end(),
                                         [](auto& a, auto& b) { return a.second < b.second; })
                            ->second;
    const double y_hi = std::max_element(loop.ascending.begin(), loop.ascending.end(),
                                         [](auto& a, auto& b) { return a.second < b.second; })
                            ->second;

    // branches coinciding everywhere (or a mute operator) enclose nothing
    double seg_cover = 0.0;
    for (const auto& [lo, hi] : result.crossovers.segments) seg_cover += hi - lo;
    const bool flat = (y_hi - y_lo) <= 1e-12 * std::max(1.0, std::abs(y_hi) + std::abs(y_lo));
    if (flat || seg_cover >= span * (1.0 - 2.0 / opts.scan_n)) {
        result.kind = LoopKind::degenerate_line;
        result.subloop_count = 0;
        return result;
    }

    // split the closed polyline at the interior crossovers
    std::vector<double> cut_list(cuts.begin(), cuts.end());
    result.subloop_count = static_cast<int>(cut_list.size()) - 1;
    for (std::size_t k = 0; k + 1 < cut_list.size(); ++k) {
        const double lo = cut_list[k], hi = cut_list[k + 1];
        std::vector<std::pair<double, double>> poly;
        for (const auto& p : loop.ascending)
            if (p.first >= lo && p.first <= hi) poly.push_back(p);
        for (const auto& p : loop.descending)
            if (p.first >= lo && p.first <= hi) poly.push_back(p);
        result.subloop_areas.push_back(signed_area(poly));
    }

    // certified interior components: isolated crossovers with the integral
    // bounded away from zero at flanking probes, plus interior segments
    const double delta = span / opts.scan_n;
    const double cert = std::max(100.0 * opts.tol, 1e-8) * result.crossovers.scan_scale;
    int certified = 0;
    for (const auto& [uc, yc] : result.crossovers.points) {
        const double fm = std::abs(crossover_integral(mu, u_min, u_max, std::max(u_min, uc - delta)));
        const double fp = std::abs(crossover_integral(mu, u_min, u_max, std::min(u_max, uc + delta)));
        if (fm > cert && fp > cert) ++certified;
    }
    for (const auto& [lo, hi] : result.crossovers.segments)
        if (lo > u_min + delta && hi < u_max - delta) ++certified;

    if (certified == 0) {
        result.kind = result.total_area >= 0.0 ? LoopKind::simple_ccw : LoopKind::simple_cw;
        return result;
    }
    const bool two_opposite = result.subloop_count == 2 && result.subloop_areas.size() == 2 &&
                              result.subloop_areas[0] * result.subloop_areas[1] < 0.0;
    if (two_opposite && std::abs(result.total_area) <= area_tol)
        result.kind = LoopKind::butterfly;
    else
        result.kind = LoopKind::multi_loop;
    return result;
}

std::pair<double, double> design_zero_area_input(const WeightingFunction& mu, double alpha1,
                                                 double beta1, double tol) {
    if (!(alpha1 > beta1)) throw ValidationError("design_zero_area_input: need alpha1 > beta1");
    const WeightingFunction abs_mu = mu.absolute();
    const Rect s = mu.support();
    const double lo_lim = std::min(s.beta_lo, s.alpha_lo);
    const double hi_lim = std::max(s.beta_hi, s.alpha_hi);

    const double A0 = mu.integrate_triangle_weighted(beta1, alpha1);
    const double scale = std::max(1.0, abs_mu.integrate_triangle_weighted(lo_lim, hi_lim));
    if (std::abs(A0) <= tol * scale) return {beta1, alpha1};

    if (A0 < 0.0) {
        // negative weight dominates: widen the maximum until the added
        // positive-signed band cancels the deficit
        auto A = [&](double lam) { return mu.integrate_triangle_weighted(beta1, lam); };
        const double a_end = A(hi_lim);
        if (a_end < -tol * scale)
            throw MomentExhausted("design_zero_area_input: support exhausted extending u_max");
        if (std::abs(a_end) <= tol * scale) return {beta1, hi_lim};
        const double lam = bisect_root(A, alpha1, hi_lim, 1e-15 * (hi_lim - alpha1 + 1.0));
        return {beta1, lam};
    }
    auto A = [&](double lam) { return mu.integrate_triangle_weighted(lam, alpha1); };
    const double a_end = A(lo_lim);
    if (a_end > tol * scale)
        throw MomentExhausted("design_zero_area_input: support exhausted extending u_min");
    if (std::abs(a_end) <= tol * scale) return {lo_lim, alpha1};
    const double lam = bisect_root(A, lo_lim, beta1, 1e-15 * (beta1 - lo_lim + 1.0));
    return {lam, alpha1};
}

}  // namespace hyst
