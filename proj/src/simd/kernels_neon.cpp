// NEON variants for aarch64. Baseline on that target, so no runtime feature
// probe is needed; dispatch still honors ALKR_SIMD=scalar.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "alkr/simd/kernels.hpp"

namespace alkr::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
  }
  double total = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_neon(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* out) {
  for (std::size_t i = 0; i < rows; ++i) {
    out[i] = dot_neon(a + i * cols, x, cols);
  }
}

void sqdist_row_neon(const double* x, const double* z, std::size_t m,
                     std::size_t d, double x_norm, const double* z_norms,
                     double* out) {
  for (std::size_t j = 0; j < m; ++j) {
    const double cross = dot_neon(x, z + j * d, d);
    const double dist = x_norm + z_norms[j] - 2.0 * cross;
    out[j] = dist > 0.0 ? dist : 0.0;
  }
}

}  // namespace

const Ops& neon_ops() {
  static const Ops table{"neon", dot_neon, axpy_neon, matvec_neon,
                         sqdist_row_neon};
  return table;
}

}  // namespace alkr::simd

#endif  // __aarch64__
