#include "modec/kernels.hpp"

namespace modec::kern {

namespace {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double max_scalar(const double* x, std::size_t n) {
  double best = x[0];
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] > best) best = x[i];
  return best;
}

std::size_t argmax_scalar(const double* x, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] > x[best]) best = i;
  return best;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void scale_scalar(double* x, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= s;
}

constexpr Ops kScalarOps{sum_scalar,  max_scalar,   argmax_scalar,
                         dot_scalar,  scale_scalar, "scalar"};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

#if !defined(MODEC_WITH_AVX2)
const Ops* avx2_ops() { return nullptr; }
#endif

#if !defined(MODEC_WITH_NEON)
const Ops* neon_ops() { return nullptr; }
#endif

const Ops& active_ops() {
  static const Ops* chosen = [] {
    if (const Ops* v = avx2_ops()) return v;
    if (const Ops* v = neon_ops()) return v;
    return &scalar_ops();
  }();
  return *chosen;
}

const char* active_isa() { return active_ops().name; }

}  // namespace modec::kern
