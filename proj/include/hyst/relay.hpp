#pragma once

#include "hyst/signal.hpp"

namespace hyst {

enum class RelayOrientation { ccw, cw };

/// Elementary relay (hysteron) with switching thresholds alpha > beta.
/// ccw: +1 above alpha, -1 below beta, memory in between, r0 at t=0.
/// cw is the pointwise negative: -1 above alpha, +1 below beta, -r0 at t=0.
struct RelayConfig {
    double alpha{};
    double beta{};
    RelayOrientation orientation{RelayOrientation::ccw};
    int r0{-1};
};

/// Piecewise-constant relay response to a piecewise-linear input.  Switch
/// instants are located exactly by linear interpolation of the threshold
/// crossings; samples carry the post-switch value.  Threshold equality never
/// switches (strict inequalities).
SampledSignal relay_eval(const RelayConfig& cfg, const SampledSignal& u);

}  // namespace hyst
