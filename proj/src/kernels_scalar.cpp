#include "hyst/kernels.hpp"

namespace hyst::kernels::scalar {

void relay_segment_update(const double* alpha, const double* beta, double* state,
                          std::size_t n, double a, double b) {
    if (b >= a) {
        for (std::size_t i = 0; i < n; ++i) {
            const double s = state[i];
            state[i] = alpha[i] < b ? 1.0 : (beta[i] > a ? -1.0 : s);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double s = state[i];
            state[i] = beta[i] > b ? -1.0 : (alpha[i] < a ? 1.0 : s);
        }
    }
}

double weighted_sum(const double* w, const double* s, std::size_t n) {
    // fixed 4-lane reduction tree; the AVX2 variant reproduces it bit for bit
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        acc[0] += w[i] * s[i];
        acc[1] += w[i + 1] * s[i + 1];
        acc[2] += w[i + 2] * s[i + 2];
        acc[3] += w[i + 3] * s[i + 3];
    }
    for (std::size_t i = n4; i < n; ++i) acc[i - n4] += w[i] * s[i];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

}  // namespace hyst::kernels::scalar
