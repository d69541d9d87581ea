#include "hyst/preisach.hpp"

#include <algorithm>
#include <cmath>

#include "hyst/kernels.hpp"

namespace hyst {

PreisachState::PreisachState(WeightingFunction mu, MemoryInterface L0)
    : mu_(std::move(mu)), L_(std::move(L0)) {
    y_ = recompute_output();
}

double PreisachState::recompute_output() const {
    // y = ∬_{P+} mu - ∬_{P-} mu = 2 ∬_{below L} mu - ∬_{P ∩ supp} mu
    const Rect s = mu_.support();
    const double floor_b = s.beta_lo - 1.0;
    const double floor_a = std::min(s.alpha_lo, s.beta_lo) - 1.0;
    double below = 0.0;
    for (const auto& st : L_.strips(floor_b))
        below += mu_.integrate_rectangle(Rect{st.beta_lo, st.beta_hi, floor_a, st.alpha}).value;
    const double total =
        mu_.integrate_rectangle(Rect{floor_b, s.beta_hi + 1.0, floor_a, s.alpha_hi + 1.0}).value;
    return 2.0 * below - total;
}

double PreisachState::swept_integral(double v) const {
    const double v0 = L_.terminal();
    if (v == v0) return 0.0;
    const Rect s = mu_.support();
    const double floor_b = s.beta_lo - 1.0;
    double acc;
    if (v > v0) {
        // relays flipping up: triangle above the terminal plus the columns
        // between the old staircase and the sweep line alpha = v
        acc = mu_.triangle(v0, v);
        for (const auto& st : L_.strips(floor_b))
            if (st.alpha < v) acc += mu_.integrate_rectangle(Rect{st.beta_lo, st.beta_hi, st.alpha, v}).value;
        return acc;
    }
    // relays flipping down: triangle below the terminal plus the strips of
    // the region under the staircase right of the sweep line beta = v
    acc = mu_.triangle(v, v0);
    for (const auto& st : L_.strips(floor_b)) {
        const double blo = std::max(st.beta_lo, v);
        if (blo < st.beta_hi && st.alpha > v0)
            acc += mu_.integrate_rectangle(Rect{blo, st.beta_hi, v0, st.alpha}).value;
    }
    return -acc;
}

double PreisachState::peek(double v) const { return y_ + 2.0 * swept_integral(v); }

double PreisachState::apply(double v) {
    y_ = peek(v);
    L_.update(v);
    return y_;
}

double PreisachState::swept_area(double v) const {
    const double v0 = L_.terminal();
    if (v == v0) return 0.0;
    const Rect s = mu_.support();
    const double floor_b = s.beta_lo - 1.0;
    const double lo = std::min(v0, v), hi = std::max(v0, v);
    double area = 0.5 * (hi - lo) * (hi - lo);
    for (const auto& st : L_.strips(floor_b)) {
        if (v > v0 && st.alpha < v)
            area += Rect{std::max(st.beta_lo, floor_b), st.beta_hi, st.alpha, v}.area();
        if (v < v0 && st.beta_hi > v && st.alpha > v0)
            area += Rect{std::max(st.beta_lo, v), st.beta_hi, v0, st.alpha}.area();
    }
    return area;
}

std::pair<SampledSignal, PreisachState> preisach_eval(PreisachState state, const SampledSignal& u,
                                                      const EvalOptions& opts) {
    u.validate();
    const double v0 = state.input();
    if (std::abs(u.values.front() - v0) > 1e-12 * std::max(1.0, std::abs(v0)))
        throw InitialValueMismatch("preisach_eval: u(0) does not match the interface terminal value");

    SampledSignal y;
    y.push(u.times.front(), state.output());
    for (std::size_t i = 1; i < u.size(); ++i) {
        const double t0 = u.times[i - 1], t1 = u.times[i];
        const double a = u.values[i - 1], b = u.values[i];
        int subdiv = 1;
        if (std::isfinite(opts.max_swept_area) && opts.max_swept_area > 0.0 && b != a) {
            const double area = state.swept_area(b);
            subdiv = std::max(1, static_cast<int>(std::ceil(area / opts.max_swept_area)));
            subdiv = std::min(subdiv, 100000);
        }
        for (int k = 1; k <= subdiv; ++k) {
            const double f = static_cast<double>(k) / subdiv;
            const double v = (k == subdiv) ? b : a + f * (b - a);
            const double t = (k == subdiv) ? t1 : t0 + f * (t1 - t0);
            const double out = state.apply(v);
            if (t > y.times.back()) y.push(t, out);
        }
    }
    return {std::move(y), std::move(state)};
}

SampledSignal preisach_eval_oracle(const WeightingFunction& mu, const MemoryInterface& L0,
                                   const SampledSignal& u, int grid_n) {
    u.validate();
    if (grid_n < 16) throw ValidationError("preisach_eval_oracle: grid_n must be >= 16");

    const Rect s = mu.support();
    const double hb = s.width() / grid_n;
    const double ha = s.height() / grid_n;

    // one relay per lattice cell with nonzero weight mu(center) * cell_area
    std::vector<double> alpha, beta, weight, state;
    alpha.reserve(static_cast<std::size_t>(grid_n) * grid_n / 2);
    beta.reserve(alpha.capacity());
    weight.reserve(alpha.capacity());
    for (int j = 0; j < grid_n; ++j) {
        const double a = s.alpha_lo + (j + 0.5) * ha;
        for (int i = 0; i < grid_n; ++i) {
            const double b = s.beta_lo + (i + 0.5) * hb;
            if (b >= a) continue;
            const double w = mu.eval(a, b) * hb * ha;
            if (w == 0.0) continue;
            alpha.push_back(a);
            beta.push_back(b);
            weight.push_back(w);
        }
    }
    state.resize(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        state[i] = static_cast<double>(L0.relay_state_at({alpha[i], beta[i]}).value);

    // t = 0: apply the first input value through the relay clauses
    const std::size_t n = alpha.size();
    kernels::relay_segment_update(alpha.data(), beta.data(), state.data(), n, u.values.front(),
                                  u.values.front());

    SampledSignal y;
    y.push(u.times.front(), kernels::weighted_sum(weight.data(), state.data(), n));
    for (std::size_t i = 1; i < u.size(); ++i) {
        kernels::relay_segment_update(alpha.data(), beta.data(), state.data(), n, u.values[i - 1],
                                      u.values[i]);
        y.push(u.times[i], kernels::weighted_sum(weight.data(), state.data(), n));
    }
    return y;
}

}  // namespace hyst
