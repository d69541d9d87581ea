#pragma once

#include <limits>
#include <utility>

#include "hyst/plane.hpp"
#include "hyst/signal.hpp"
#include "hyst/weighting.hpp"

namespace hyst {

/// Preisach operator state: weighting function, memory interface, and the
/// current output value.  Output updates are incremental: a monotone input
/// move changes the output by +-2x the mu-integral over the swept region
/// between the old and new interface, which is exact for every closed-form
/// weighting representation.
class PreisachState {
public:
    PreisachState(WeightingFunction mu, MemoryInterface L0);

    const WeightingFunction& mu() const { return mu_; }
    const MemoryInterface& interface() const { return L_; }
    double output() const { return y_; }
    double input() const { return L_.terminal(); }

    /// Output after a virtual monotone move to v, without committing it.
    double peek(double v) const;

    /// Commit a monotone move to v; returns the new output.
    double apply(double v);

    /// Plane measure of the region swept by a move to v (sub-step control).
    double swept_area(double v) const;

    /// Full recomputation of the output from the interface (cross-check path).
    double recompute_output() const;

private:
    double swept_integral(double v) const;  // signed: +∬ for up, -∬ for down

    WeightingFunction mu_;
    MemoryInterface L_;
    double y_{};
};

struct EvalOptions {
    /// Insert output sub-samples so that each sub-step sweeps at most this
    /// plane area.  Infinity = sample at input breakpoints only.
    double max_swept_area{std::numeric_limits<double>::infinity()};
};

/// Drive the operator along a piecewise-linear input.  The first input value
/// must equal the interface terminal (throws InitialValueMismatch otherwise).
/// Returns the output trace and the final state.
std::pair<SampledSignal, PreisachState> preisach_eval(PreisachState state, const SampledSignal& u,
                                                      const EvalOptions& opts = {});

/// Independent relay-lattice oracle: midpoint Riemann sum over a
/// grid_n x grid_n lattice of elementary relays covering the support box,
/// initialized from the interface and stepped exactly per monotone input
/// segment.  Converges to the interface path at rate O(1/grid_n).
SampledSignal preisach_eval_oracle(const WeightingFunction& mu, const MemoryInterface& L0,
                                   const SampledSignal& u, int grid_n);

}  // namespace hyst
