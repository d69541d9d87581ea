#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hyst/errors.hpp"
#include "hyst/geometry.hpp"

namespace hyst {

struct RelayState {
    int value{-1};  // -1 or +1
};

enum class TailMode { unbounded, truncated };

/// Monotonically decreasing staircase splitting P into a +1 region (below the
/// curve) and a -1 region (above it).  This is the Preisach operator's entire
/// state.
///
/// Representation: the full vertex list of the staircase, walking from the
/// upper-left tail anchor down to the terminal point (v, v) on the diagonal,
/// where v is the last input value.  Consecutive vertices differ in exactly
/// one coordinate; alpha never increases and beta never decreases along the
/// list.  The tail continues horizontally (constant alpha) to the left of the
/// first vertex.
class MemoryInterface {
public:
    struct Strip {
        double beta_lo, beta_hi;
        double alpha;  // staircase height over [beta_lo, beta_hi]
    };

    /// Virgin staircase through (v, v): horizontal at alpha = v for beta < v.
    static MemoryInterface from_value(double v);

    /// Build from a corner sequence.  Accepts either the full vertex list or
    /// the compact form where consecutive corners differ in both coordinates
    /// (the implied inner vertex is inserted).  Corners closer than 1e-12 in
    /// both coordinates are merged; collinear vertices are dropped.
    /// Throws NonMonotoneStaircase when ordering is violated or the last
    /// corner is off the diagonal.
    static MemoryInterface from_corners(std::span<const PlanePoint> corners);

    const std::vector<PlanePoint>& corners() const { return corners_; }
    double terminal() const { return corners_.back().beta; }

    /// Wiping-out update to a new input value.  Monotone moves of any size.
    void update(double v_new);
    MemoryInterface updated(double v_new) const;

    /// Relay state from the set-intersection rule: +1 iff the staircase meets
    /// the quadrant {alpha1 >= p.alpha, beta1 >= p.beta}.  Points exactly on
    /// the staircase get +1.
    RelayState relay_state_at(const PlanePoint& p) const;

    /// Staircase height at abscissa b (upper value at jumps); the tail height
    /// left of the first vertex, -inf right of the terminal.
    double height_at(double b) const;

    /// Horizontal runs of the staircase including the tail, which is cut at
    /// beta_floor (or at the truncation box when configured).
    std::vector<Strip> strips(double beta_floor) const;

    TailMode tail_mode() const { return tail_mode_; }
    const std::optional<Rect>& tail_box() const { return tail_box_; }
    void truncate_tail(const Rect& box) { tail_mode_ = TailMode::truncated; tail_box_ = box; }

    friend bool operator==(const MemoryInterface&, const MemoryInterface&) = default;

private:
    MemoryInterface() = default;
    std::vector<PlanePoint> corners_;
    TailMode tail_mode_{TailMode::unbounded};
    std::optional<Rect> tail_box_;
};

inline MemoryInterface initial_interface_from_value(double v) { return MemoryInterface::from_value(v); }

inline MemoryInterface interface_from_staircase(std::span<const PlanePoint> corners) {
    return MemoryInterface::from_corners(corners);
}

inline MemoryInterface interface_update(const MemoryInterface& L, double v_new) { return L.updated(v_new); }

inline RelayState relay_state_at(const MemoryInterface& L, const PlanePoint& p) { return L.relay_state_at(p); }

}  // namespace hyst
