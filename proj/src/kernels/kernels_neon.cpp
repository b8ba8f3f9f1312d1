#include "modec/kernels.hpp"

#if defined(MODEC_WITH_NEON)

#include <arm_neon.h>

#include <cstdint>

namespace modec::kern {

namespace {

double sum_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double out = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) out += x[i];
  return out;
}

double max_neon(const double* x, std::size_t n) {
  if (n < 2) return x[0];
  float64x2_t best = vld1q_f64(x);
  std::size_t i = 2;
  for (; i + 2 <= n; i += 2) best = vmaxq_f64(best, vld1q_f64(x + i));
  double out = vgetq_lane_f64(best, 0);
  const double hi = vgetq_lane_f64(best, 1);
  if (hi > out) out = hi;
  for (; i < n; ++i)
    if (x[i] > out) out = x[i];
  return out;
}

// Same tie policy as the AVX2 variant: strict greater-than per lane keeps the
// first occurrence, the reduction prefers the lower index on equal values.
std::size_t argmax_neon(const double* x, std::size_t n) {
  if (n < 4) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] > x[best]) best = i;
    return best;
  }
  float64x2_t best_val = vld1q_f64(x);
  uint64x2_t best_idx = {0, 1};
  uint64x2_t idx = best_idx;
  const uint64x2_t two = vdupq_n_u64(2);
  std::size_t i = 2;
  for (; i + 2 <= n; i += 2) {
    idx = vaddq_u64(idx, two);
    const float64x2_t v = vld1q_f64(x + i);
    const uint64x2_t gt = vcgtq_f64(v, best_val);
    best_val = vbslq_f64(gt, v, best_val);
    best_idx = vbslq_u64(gt, idx, best_idx);
  }
  double bv = vgetq_lane_f64(best_val, 0);
  std::size_t bi = static_cast<std::size_t>(vgetq_lane_u64(best_idx, 0));
  const double v1 = vgetq_lane_f64(best_val, 1);
  const auto i1 = static_cast<std::size_t>(vgetq_lane_u64(best_idx, 1));
  if (v1 > bv || (v1 == bv && i1 < bi)) {
    bv = v1;
    bi = i1;
  }
  for (; i < n; ++i)
    if (x[i] > bv) {
      bv = x[i];
      bi = i;
    }
  return bi;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  double out = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) out += x[i] * y[i];
  return out;
}

void scale_neon(double* x, std::size_t n, double s) {
  const float64x2_t sv = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(vld1q_f64(x + i), sv));
  for (; i < n; ++i) x[i] *= s;
}

constexpr Ops kNeonOps{sum_neon, max_neon, argmax_neon, dot_neon, scale_neon,
                       "neon"};

}  // namespace

// aarch64 guarantees NEON; no runtime probe needed.
const Ops* neon_ops() { return &kNeonOps; }

}  // namespace modec::kern

#endif  // MODEC_WITH_NEON
