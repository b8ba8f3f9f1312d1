#include "modec/kernels.hpp"

#if defined(MODEC_WITH_AVX2)

#include <immintrin.h>

#include <cstdint>

namespace modec::kern {

namespace {

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail;
}

double max_avx2(const double* x, std::size_t n) {
  if (n < 4) {
    double best = x[0];
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] > best) best = x[i];
    return best;
  }
  __m256d best = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) best = _mm256_max_pd(best, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > out) out = lanes[l];
  for (; i < n; ++i)
    if (x[i] > out) out = x[i];
  return out;
}

// Each lane tracks its running maximum with a strict greater-than update, so
// within a lane the first occurrence wins; the cross-lane reduction then
// takes the lowest index among equal lane maxima. Matches scalar argmax
// exactly, including ties.
std::size_t argmax_avx2(const double* x, std::size_t n) {
  if (n < 8) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] > x[best]) best = i;
    return best;
  }
  __m256d best_val = _mm256_loadu_pd(x);
  __m256i best_idx = _mm256_set_epi64x(3, 2, 1, 0);
  __m256i idx = best_idx;
  const __m256i four = _mm256_set1_epi64x(4);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    idx = _mm256_add_epi64(idx, four);
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d gt = _mm256_cmp_pd(v, best_val, _CMP_GT_OQ);
    best_val = _mm256_blendv_pd(best_val, v, gt);
    best_idx = _mm256_blendv_epi8(best_idx, idx, _mm256_castpd_si256(gt));
  }
  alignas(32) double vals[4];
  alignas(32) std::int64_t idcs[4];
  _mm256_store_pd(vals, best_val);
  _mm256_store_si256(reinterpret_cast<__m256i*>(idcs), best_idx);
  double bv = vals[0];
  std::size_t bi = static_cast<std::size_t>(idcs[0]);
  for (int l = 1; l < 4; ++l) {
    const auto li = static_cast<std::size_t>(idcs[l]);
    if (vals[l] > bv || (vals[l] == bv && li < bi)) {
      bv = vals[l];
      bi = li;
    }
  }
  for (; i < n; ++i)
    if (x[i] > bv) {
      bv = x[i];
      bi = i;
    }
  return bi;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return ((lanes[0] + lanes[1]) + (lanes[2] + lanes[3])) + tail;
}

void scale_avx2(double* x, std::size_t n, double s) {
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), sv));
  for (; i < n; ++i) x[i] *= s;
}

constexpr Ops kAvx2Ops{sum_avx2, max_avx2, argmax_avx2, dot_avx2, scale_avx2,
                       "avx2"};

}  // namespace

const Ops* avx2_ops() {
  static const Ops* table =
      __builtin_cpu_supports("avx2") ? &kAvx2Ops : nullptr;
  return table;
}

}  // namespace modec::kern

#endif  // MODEC_WITH_AVX2
