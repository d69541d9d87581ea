#pragma once

#include <cstddef>
#include <string>

namespace hyst::kernels {

enum class Isa { scalar, avx2 };

/// Instruction set selected at startup: AVX2 when the CPU supports it, scalar
/// otherwise.  Overridable with HYST_SIMD=scalar|avx2 or set_isa() (tests).
Isa active_isa();
void set_isa(Isa isa);
std::string isa_name(Isa isa);
bool cpu_has_avx2();

/// Relay lattice step for one monotone input move a -> b:
///   up   (b > a): state = +1 if alpha < b, -1 if beta > a, else unchanged
///   down (b < a): state = -1 if beta > b,  +1 if alpha < a, else unchanged
/// States are stored as +-1.0 doubles.
void relay_segment_update(const double* alpha, const double* beta, double* state,
                          std::size_t n, double a, double b);

/// sum_i w[i] * s[i] with a fixed 4-accumulator reduction tree; the scalar and
/// AVX2 variants produce bit-identical results.
double weighted_sum(const double* w, const double* s, std::size_t n);

// reference implementations (always available; SIMD variants are
// equivalence-tested against these)
namespace scalar {
void relay_segment_update(const double* alpha, const double* beta, double* state,
                          std::size_t n, double a, double b);
double weighted_sum(const double* w, const double* s, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void relay_segment_update(const double* alpha, const double* beta, double* state,
                          std::size_t n, double a, double b);
double weighted_sum(const double* w, const double* s, std::size_t n);
}  // namespace avx2
#endif

}  // namespace hyst::kernels
