#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace alkr {

// Raised when a computation is mathematically defined but fails numerically
// (e.g. a kernel system that stays indefinite through the whole jitter
// ladder).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Row-major dense matrix of doubles. Rows are contiguous so the simd kernels
// can stream them directly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  // New matrix holding the given rows, in the given order.
  Matrix gather_rows(const std::vector<int>& indices) const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct CholeskyFactor {
  Matrix lower;              // L with A + jitter_used*I = L L^T
  double jitter_used = 0.0;
};

// Lower Cholesky of the symmetric matrix held in `a` (only the lower
// triangle is read), written over `a`. Returns false on a non-positive
// pivot.
bool cholesky_in_place(Matrix& a);

// Triangular solves against a lower factor; `b` is overwritten.
void solve_lower_in_place(const Matrix& lower, std::vector<double>& b);
void solve_lower_transposed_in_place(const Matrix& lower, std::vector<double>& b);

// (L L^T) x = b.
std::vector<double> cholesky_solve(const CholeskyFactor& factor, std::vector<double> b);

// (L L^T)^{-1}, dense.
Matrix cholesky_inverse(const CholeskyFactor& factor);

// Solves (A + jitter*I) X = B for symmetric positive-definite A. Jitter
// starts at zero; on factorization failure it escalates geometrically from
// 1e-10 * mean(diag(A)) by factors of ten, at most six retries, then throws
// NumericalError.
struct CholSolveResult {
  Matrix solution;
  CholeskyFactor factor;
};
CholSolveResult chol_solve(const Matrix& a, const Matrix& b);

struct CholSolveVectorResult {
  std::vector<double> solution;
  CholeskyFactor factor;
};
CholSolveVectorResult chol_solve(const Matrix& a, const std::vector<double>& b);

// Factorization half of chol_solve, same jitter ladder.
CholeskyFactor cholesky_with_jitter(const Matrix& a);

double mean_diagonal(const Matrix& a);

}  // namespace alkr
