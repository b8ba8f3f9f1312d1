#pragma once

#include <cstddef>

namespace modec::kern {

// =============================================================================
// Vector primitives over double, used by the distribution layer.
//
// One scalar reference implementation plus SIMD variants chosen once at
// startup from CPU capabilities. Variants are interchangeable: max, argmax
// and scale are bit-exact against the scalar reference; sum and dot may
// differ only by floating-point accumulation order.
// =============================================================================

struct Ops {
  double (*sum)(const double* x, std::size_t n);
  double (*max)(const double* x, std::size_t n);          // requires n > 0
  std::size_t (*argmax)(const double* x, std::size_t n);  // requires n > 0;
                                                          // lowest index wins ties
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*scale)(double* x, std::size_t n, double s);
  const char* name;
};

// Portable reference implementation; always available.
const Ops& scalar_ops();

// AVX2/NEON tables, or nullptr when the binary lacks the variant or the CPU
// does not support it.
const Ops* avx2_ops();
const Ops* neon_ops();

// Best variant available on this machine, falling back to scalar.
const Ops& active_ops();
const char* active_isa();

}  // namespace modec::kern
