#include "hyst/plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyst {

namespace {
constexpr double kMergeTol = 1e-12;

bool close(double a, double b) { return std::abs(a - b) <= kMergeTol; }
}  // namespace

MemoryInterface MemoryInterface::from_value(double v) {
    MemoryInterface L;
    L.corners_ = {PlanePoint{v, v}};
    return L;
}

MemoryInterface MemoryInterface::from_corners(std::span<const PlanePoint> corners) {
    if (corners.empty()) throw NonMonotoneStaircase("empty corner sequence");

    // expand compact corners (both coordinates change, read as outer
    // maximum/minimum pairs) with the implied inner vertex, merging
    // near-duplicates as we go; a merge always keeps the later corner when it
    // is the terminal
    std::vector<PlanePoint> pts;
    pts.reserve(corners.size() * 2);
    for (std::size_t idx = 0; idx < corners.size(); ++idx) {
        const PlanePoint& c = corners[idx];
        if (!pts.empty()) {
            const PlanePoint& prev = pts.back();
            if (close(prev.alpha, c.alpha) && close(prev.beta, c.beta)) {
                if (idx + 1 == corners.size()) pts.back() = c;
                continue;
            }
            const bool alpha_moves = !close(prev.alpha, c.alpha);
            const bool beta_moves = !close(prev.beta, c.beta);
            if (alpha_moves && beta_moves) pts.push_back({c.alpha, prev.beta});
        }
        pts.push_back(c);
    }

    // ordering: alpha non-increasing, beta non-decreasing
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].alpha > pts[i - 1].alpha + kMergeTol || pts[i].beta < pts[i - 1].beta - kMergeTol)
            throw NonMonotoneStaircase("corner sequence is not a decreasing staircase");
    }
    for (const PlanePoint& p : pts) {
        if (p.beta > p.alpha + kMergeTol) throw NonMonotoneStaircase("corner outside the admissible half-plane");
    }
    const PlanePoint& last = pts.back();
    if (!close(last.alpha, last.beta))
        throw NonMonotoneStaircase("terminal corner must lie on the diagonal (alpha = beta)");
    const double v = 0.5 * (last.alpha + last.beta);
    pts.back() = {v, v};

    // drop collinear interior vertices
    std::vector<PlanePoint> out;
    out.reserve(pts.size());
    for (const PlanePoint& p : pts) {
        while (out.size() >= 2) {
            const PlanePoint& a = out[out.size() - 2];
            const PlanePoint& b = out[out.size() - 1];
            const bool h = close(a.alpha, b.alpha) && close(b.alpha, p.alpha);
            const bool vseg = close(a.beta, b.beta) && close(b.beta, p.beta);
            if (h || vseg)
                out.pop_back();
            else
                break;
        }
        out.push_back(p);
    }

    MemoryInterface L;
    L.corners_ = std::move(out);
    return L;
}

void MemoryInterface::update(double v_new) {
    const double v = terminal();
    if (v_new == v) return;

    std::vector<PlanePoint> next;
    if (v_new > v) {
        // horizontal sweep upward: keep vertices strictly above, bridge down
        for (const PlanePoint& c : corners_)
            if (c.alpha > v_new) next.push_back(c);
        if (next.empty()) {
            corners_ = {PlanePoint{v_new, v_new}};
            return;
        }
        const double b_cross = next.back().beta;
        if (b_cross < v_new) next.push_back({v_new, b_cross});
        next.push_back({v_new, v_new});
    } else {
        // vertical sweep leftward; the crossing may land on the tail
        for (const PlanePoint& c : corners_)
            if (c.beta < v_new) next.push_back(c);
        const double a_cross = next.empty() ? corners_.front().alpha : next.back().alpha;
        if (a_cross > v_new) next.push_back({a_cross, v_new});
        next.push_back({v_new, v_new});
    }

    // merge a bridge vertex that coincides with the kept run; the terminal
    // always survives a merge so the staircase keeps its diagonal endpoint
    std::vector<PlanePoint> out;
    for (std::size_t idx = 0; idx < next.size(); ++idx) {
        const PlanePoint& p = next[idx];
        while (out.size() >= 2) {
            const PlanePoint& a = out[out.size() - 2];
            const PlanePoint& b = out[out.size() - 1];
            if ((a.alpha == b.alpha && b.alpha == p.alpha) || (a.beta == b.beta && b.beta == p.beta))
                out.pop_back();
            else
                break;
        }
        if (!out.empty() && close(out.back().alpha, p.alpha) && close(out.back().beta, p.beta)) {
            if (idx + 1 == next.size()) out.back() = p;
            continue;
        }
        out.push_back(p);
    }
    corners_ = std::move(out);
}

MemoryInterface MemoryInterface::updated(double v_new) const {
    MemoryInterface L = *this;
    L.update(v_new);
    return L;
}

double MemoryInterface::height_at(double b) const {
    // alphas are non-increasing along the corner list, so the upper envelope
    // at abscissa b is the alpha of the first corner with beta >= b; left of
    // the first corner the tail continues at its alpha
    if (b <= corners_.front().beta) return corners_.front().alpha;
    for (const PlanePoint& c : corners_)
        if (c.beta >= b) return c.alpha;
    return -std::numeric_limits<double>::infinity();  // right of the terminal
}

RelayState MemoryInterface::relay_state_at(const PlanePoint& p) const {
    return RelayState{height_at(p.beta) >= p.alpha ? +1 : -1};
}

std::vector<MemoryInterface::Strip> MemoryInterface::strips(double beta_floor) const {
    double floor = beta_floor;
    if (tail_mode_ == TailMode::truncated && tail_box_) floor = std::max(floor, tail_box_->beta_lo);

    std::vector<Strip> out;
    const PlanePoint& first = corners_.front();
    if (floor < first.beta) out.push_back({floor, first.beta, first.alpha});
    for (std::size_t i = 0; i + 1 < corners_.size(); ++i) {
        const PlanePoint& a = corners_[i];
        const PlanePoint& b = corners_[i + 1];
        if (a.alpha == b.alpha && b.beta > a.beta) out.push_back({a.beta, b.beta, a.alpha});
    }
    return out;
}

}  // namespace hyst
