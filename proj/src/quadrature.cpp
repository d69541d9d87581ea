#include "hyst/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hyst {

namespace {

// tensor Gauss-Legendre on a panel, 5x5 with an embedded 3x3 error estimate
const double kN5[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                       0.9061798459386640};
const double kW5[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                       0.4786286704993665, 0.2369268850561891};
const double kN3[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
const double kW3[3] = {0.5555555555555556, 0.8888888888888888, 0.5555555555555556};

struct Panel {
    Rect r;
    double value, err;
};

Panel eval_panel(const std::function<double(double, double)>& f, const Rect& r) {
    const double cx = 0.5 * (r.beta_lo + r.beta_hi), hx = 0.5 * r.width();
    const double cy = 0.5 * (r.alpha_lo + r.alpha_hi), hy = 0.5 * r.height();
    double s5 = 0.0;
    double cache[5][5];
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            cache[i][j] = f(cx + hx * kN5[i], cy + hy * kN5[j]);
            s5 += kW5[i] * kW5[j] * cache[i][j];
        }
    double s3 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s3 += kW3[i] * kW3[j] * f(cx + hx * kN3[i], cy + hy * kN3[j]);
    const double scale = hx * hy;
    return Panel{r, s5 * scale, std::abs(s5 - s3) * scale};
}

}  // namespace

QuadResult integrate2d(const std::function<double(double, double)>& f, const Rect& r, double abs_tol,
                       int max_panels) {
    QuadResult out;
    if (r.empty()) return out;
    std::vector<Panel> heap{eval_panel(f, r)};
    auto cmp = [](const Panel& a, const Panel& b) { return a.err < b.err; };
    std::make_heap(heap.begin(), heap.end(), cmp);
    int evals = 1;
    double total_err = heap.front().err;
    while (total_err > abs_tol && evals < max_panels && !heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const Panel p = heap.back();
        heap.pop_back();
        total_err -= p.err;
        Rect a = p.r, b = p.r;
        if (p.r.width() >= p.r.height()) {
            const double mid = 0.5 * (p.r.beta_lo + p.r.beta_hi);
            a.beta_hi = mid;
            b.beta_lo = mid;
        } else {
            const double mid = 0.5 * (p.r.alpha_lo + p.r.alpha_hi);
            a.alpha_hi = mid;
            b.alpha_lo = mid;
        }
        for (const Rect& half : {a, b}) {
            heap.push_back(eval_panel(f, half));
            total_err += heap.back().err;
            std::push_heap(heap.begin(), heap.end(), cmp);
            ++evals;
        }
    }
    for (const Panel& p : heap) out.value += p.value;
    out.abs_error = total_err;
    out.panels = evals;
    return out;
}

}  // namespace hyst
