// AVX2/FMA variants. Compiled with -mavx2 -mfma in its own translation unit;
// callers must route through dispatch so non-AVX2 machines never reach this
// code.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "alkr/simd/kernels.hpp"

namespace alkr::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(sum2, sum2);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  acc0 = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
  double total = hsum(acc0);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_avx2(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* out) {
  for (std::size_t i = 0; i < rows; ++i) {
    out[i] = dot_avx2(a + i * cols, x, cols);
  }
}

void sqdist_row_avx2(const double* x, const double* z, std::size_t m,
                     std::size_t d, double x_norm, const double* z_norms,
                     double* out) {
  // Cross terms reuse dot_avx2 so that when z_norms were produced by the
  // same table's dot, identical points cancel to exactly zero.
  for (std::size_t j = 0; j < m; ++j) {
    const double cross = dot_avx2(x, z + j * d, d);
    const double dist = x_norm + z_norms[j] - 2.0 * cross;
    out[j] = dist > 0.0 ? dist : 0.0;
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{"avx2", dot_avx2, axpy_avx2, matvec_avx2,
                         sqdist_row_avx2};
  return table;
}

}  // namespace alkr::simd

#endif  // x86_64
