#include "hyst/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace hyst::kernels::avx2 {

void relay_segment_update(const double* alpha, const double* beta, double* state,
                          std::size_t n, double a, double b) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d neg = _mm256_set1_pd(-1.0);
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const std::size_t n4 = n - n % 4;

    if (b >= a) {
        for (std::size_t i = 0; i < n4; i += 4) {
            const __m256d al = _mm256_loadu_pd(alpha + i);
            const __m256d be = _mm256_loadu_pd(beta + i);
            __m256d s = _mm256_loadu_pd(state + i);
            const __m256d m_dn = _mm256_cmp_pd(be, va, _CMP_GT_OQ);  // beta > a
            const __m256d m_up = _mm256_cmp_pd(al, vb, _CMP_LT_OQ);  // alpha < b
            s = _mm256_blendv_pd(s, neg, m_dn);
            s = _mm256_blendv_pd(s, one, m_up);
            _mm256_storeu_pd(state + i, s);
        }
        for (std::size_t i = n4; i < n; ++i) {
            const double s = state[i];
            state[i] = alpha[i] < b ? 1.0 : (beta[i] > a ? -1.0 : s);
        }
    } else {
        for (std::size_t i = 0; i < n4; i += 4) {
            const __m256d al = _mm256_loadu_pd(alpha + i);
            const __m256d be = _mm256_loadu_pd(beta + i);
            __m256d s = _mm256_loadu_pd(state + i);
            const __m256d m_up = _mm256_cmp_pd(al, va, _CMP_LT_OQ);  // alpha < a
            const __m256d m_dn = _mm256_cmp_pd(be, vb, _CMP_GT_OQ);  // beta > b
            s = _mm256_blendv_pd(s, one, m_up);
            s = _mm256_blendv_pd(s, neg, m_dn);
            _mm256_storeu_pd(state + i, s);
        }
        for (std::size_t i = n4; i < n; ++i) {
            const double s = state[i];
            state[i] = beta[i] > b ? -1.0 : (alpha[i] < a ? 1.0 : s);
        }
    }
}

double weighted_sum(const double* w, const double* s, std::size_t n) {
    // lane j accumulates elements i = j (mod 4), matching the scalar tree;
    // multiply and add are kept separate so no FMA contraction can differ
    __m256d acc = _mm256_setzero_pd();
    const std::size_t n4 = n - n % 4;
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(s + i));
        acc = _mm256_add_pd(acc, p);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    for (std::size_t i = n4; i < n; ++i) lanes[i - n4] += w[i] * s[i];
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace hyst::kernels::avx2

#endif  // x86_64
