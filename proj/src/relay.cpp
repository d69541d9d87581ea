#include "hyst/relay.hpp"

#include <cmath>

namespace hyst {

namespace {

// end state of one relay after a monotone input move a -> b (ccw convention);
// strict inequalities, so threshold equality never switches
int step_state(int s, double alpha, double beta, double a, double b) {
    if (b >= a) {
        if (b > alpha) return +1;
        if (a < beta) return -1;
    } else {
        if (b < beta) return -1;
        if (a > alpha) return +1;
    }
    return s;
}

}  // namespace

SampledSignal relay_eval(const RelayConfig& cfg, const SampledSignal& u) {
    u.validate();
    if (!(cfg.alpha > cfg.beta)) throw ValidationError("relay_eval: alpha must exceed beta");
    const bool cw = cfg.orientation == RelayOrientation::cw;
    auto emit_value = [&](int s) { return cw ? -static_cast<double>(s) : static_cast<double>(s); };

    // initial condition at t = 0
    int s;
    const double u0 = u.values.front();
    if (u0 > cfg.alpha)
        s = +1;
    else if (u0 < cfg.beta)
        s = -1;
    else
        s = cfg.r0;  // cw emits -r0 through the sign flip below

    SampledSignal y;
    y.interp = SampledSignal::Interp::step;
    y.push(u.times.front(), emit_value(s));

    for (std::size_t i = 1; i < u.size(); ++i) {
        const double t0 = u.times[i - 1], t1 = u.times[i];
        const double a = u.values[i - 1], b = u.values[i];
        const int s_new = step_state(s, cfg.alpha, cfg.beta, a, b);
        if (s_new != s) {
            // locate the crossing of the threshold that fired
            const double thr = s_new > 0 ? cfg.alpha : cfg.beta;
            const double f = (thr - a) / (b - a);
            double t_cross = t0 + f * (t1 - t0);
            if (t_cross <= y.times.back())
                t_cross = std::nextafter(y.times.back(), u.times.back());
            y.push(t_cross, emit_value(s_new));
            s = s_new;
        }
    }
    if (y.times.back() < u.times.back()) y.push(u.times.back(), emit_value(s));
    return y;
}

}  // namespace hyst
