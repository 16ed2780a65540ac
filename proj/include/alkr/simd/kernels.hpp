#pragma once

#include <cstddef>

namespace alkr::simd {

// The arithmetic inner loops everything upstream is built on: kernel-matrix
// assembly, Cholesky factorization, dual-weight predictions, and the
// diversity-strategy distance scans all bottom out here.
//
// Each entry has a scalar reference implementation and, where the target
// supports it, a vectorized variant. Variants are interchangeable up to
// floating-point summation order; tests/test_simd_kernels.cpp checks their
// agreement against the scalar reference.
struct Ops {
  const char* name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // out[i] = <row i of a, x> for a row-major `rows x cols` matrix.
  void (*matvec)(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* out);

  // Squared Euclidean distances from point x to every row of the row-major
  // `m x d` matrix z, via ||x||^2 + ||z_j||^2 - 2<x, z_j> with negative
  // round-off clamped to zero. x_norm and z_norms carry the precomputed
  // squared norms; compute them with this table's dot so identical points
  // cancel to exactly zero.
  void (*sqdist_row)(const double* x, const double* z, std::size_t m,
                     std::size_t d, double x_norm, const double* z_norms,
                     double* out);
};

// Scalar reference implementation. Always available.
const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available();
const Ops& avx2_ops();  // valid only when avx2_available()
#endif

#if defined(__aarch64__)
const Ops& neon_ops();
#endif

// Best implementation for this machine, selected once on first use. The
// ALKR_SIMD environment variable ("scalar", "avx2", "neon", "auto")
// overrides the automatic choice.
const Ops& ops();

}  // namespace alkr::simd
