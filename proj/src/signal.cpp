#include "hyst/signal.hpp"

#include <algorithm>

namespace hyst {

void SampledSignal::validate() const {
    if (times.size() != values.size()) throw ValidationError("SampledSignal: times/values size mismatch");
    if (times.empty()) throw ValidationError("SampledSignal: empty signal");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ValidationError("SampledSignal: times must be strictly increasing");
}

double SampledSignal::value_at(double t) const {
    if (times.empty()) throw ValidationError("SampledSignal: empty signal");
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times.begin());
    if (interp == Interp::step) return values[i - 1];
    const double t0 = times[i - 1], t1 = times[i];
    const double f = (t - t0) / (t1 - t0);
    return values[i - 1] + f * (values[i] - values[i - 1]);
}

SampledSignal make_signal(std::vector<double> times, std::vector<double> values) {
    SampledSignal s;
    s.times = std::move(times);
    s.values = std::move(values);
    s.validate();
    return s;
}

SampledSignal signal_from_values(const std::vector<double>& values) {
    SampledSignal s;
    for (std::size_t i = 0; i < values.size(); ++i) s.push(static_cast<double>(i), values[i]);
    return s;
}

}  // namespace hyst
