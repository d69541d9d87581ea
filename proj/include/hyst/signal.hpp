#pragma once

#include <cstddef>
#include <vector>

#include "hyst/errors.hpp"

namespace hyst {

/// Time-stamped scalar signal.  `linear` interpolates between breakpoints;
/// `step` holds the value of the latest breakpoint (relay outputs).
struct SampledSignal {
    enum class Interp { linear, step };

    std::vector<double> times;
    std::vector<double> values;
    Interp interp{Interp::linear};

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }

    void push(double t, double v) {
        if (!times.empty() && t <= times.back())
            throw ValidationError("SampledSignal: times must be strictly increasing");
        times.push_back(t);
        values.push_back(v);
    }

    double value_at(double t) const;

    void validate() const;
};

/// Convenience: piecewise-linear signal through the given (time, value) breakpoints.
SampledSignal make_signal(std::vector<double> times, std::vector<double> values);

/// Unit-rate piecewise-linear signal visiting the given values at t = 0, 1, 2, ...
SampledSignal signal_from_values(const std::vector<double>& values);

}  // namespace hyst
