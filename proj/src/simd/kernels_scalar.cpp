#include "alkr/simd/kernels.hpp"

namespace alkr::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matvec_scalar(const double* a, std::size_t rows, std::size_t cols,
                   const double* x, double* out) {
  for (std::size_t i = 0; i < rows; ++i) {
    out[i] = dot_scalar(a + i * cols, x, cols);
  }
}

void sqdist_row_scalar(const double* x, const double* z, std::size_t m,
                       std::size_t d, double x_norm, const double* z_norms,
                       double* out) {
  for (std::size_t j = 0; j < m; ++j) {
    const double cross = dot_scalar(x, z + j * d, d);
    const double dist = x_norm + z_norms[j] - 2.0 * cross;
    out[j] = dist > 0.0 ? dist : 0.0;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{"scalar", dot_scalar, axpy_scalar, matvec_scalar,
                         sqdist_row_scalar};
  return table;
}

}  // namespace alkr::simd
