#include "hyst/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace hyst::kernels {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

Isa detect() {
    if (const char* env = std::getenv("HYST_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (isa == Isa::avx2 && !cpu_has_avx2()) isa = Isa::scalar;
    current().store(isa, std::memory_order_relaxed);
}

std::string isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void relay_segment_update(const double* alpha, const double* beta, double* state,
                          std::size_t n, double a, double b) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_isa() == Isa::avx2) {
        avx2::relay_segment_update(alpha, beta, state, n, a, b);
        return;
    }
#endif
    scalar::relay_segment_update(alpha, beta, state, n, a, b);
}

double weighted_sum(const double* w, const double* s, std::size_t n) {
#if defined(__x86_64__) || defined(_M_X64)
    if (active_isa() == Isa::avx2) return avx2::weighted_sum(w, s, n);
#endif
    return scalar::weighted_sum(w, s, n);
}

}  // namespace hyst::kernels
