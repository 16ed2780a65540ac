#include "alkr/linalg.hpp"

#include <cmath>
#include <sstream>

#include "alkr/simd/kernels.hpp"

namespace alkr {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::gather_rows(const std::vector<int>& indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = static_cast<std::size_t>(indices[i]);
    if (src >= rows_) throw std::invalid_argument("Matrix::gather_rows: index out of range");
    const double* from = row(src);
    double* to = out.row(i);
    for (std::size_t j = 0; j < cols_; ++j) to[j] = from[j];
  }
  return out;
}

bool cholesky_in_place(Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("cholesky_in_place: matrix must be square");
  const auto& k = simd::ops();
  for (std::size_t j = 0; j < n; ++j) {
    double* row_j = a.row(j);
    const double pivot = a(j, j) - k.dot(row_j, row_j, j);
    if (!(pivot > 0.0) || !std::isfinite(pivot)) return false;
    const double ljj = std::sqrt(pivot);
    row_j[j] = ljj;
    const double inv = 1.0 / ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double* row_i = a.row(i);
      row_i[j] = (row_i[j] - k.dot(row_i, row_j, j)) * inv;
    }
  }
  // Zero the strict upper triangle so the factor is a clean lower matrix.
  for (std::size_t i = 0; i < n; ++i) {
    double* row_i = a.row(i);
    for (std::size_t j = i + 1; j < n; ++j) row_i[j] = 0.0;
  }
  return true;
}

void solve_lower_in_place(const Matrix& lower, std::vector<double>& b) {
  const std::size_t n = lower.rows();
  if (b.size() != n) throw std::invalid_argument("solve_lower_in_place: size mismatch");
  const auto& k = simd::ops();
  for (std::size_t i = 0; i < n; ++i) {
    const double* row_i = lower.row(i);
    b[i] = (b[i] - k.dot(row_i, b.data(), i)) / row_i[i];
  }
}

void solve_lower_transposed_in_place(const Matrix& lower, std::vector<double>& b) {
  const std::size_t n = lower.rows();
  if (b.size() != n) throw std::invalid_argument("solve_lower_transposed_in_place: size mismatch");
  const auto& k = simd::ops();
  // L^T x = b, row-major L: x[i] = (b[i] - sum_{r>i} L(r,i) x[r]) / L(i,i).
  // Done as a column sweep so the inner update is an axpy over contiguous b.
  for (std::size_t ii = n; ii-- > 0;) {
    const double* row_i = lower.row(ii);
    b[ii] /= row_i[ii];
    const double xi = b[ii];
    // Subtract xi * L(ii, 0..ii) from b[0..ii).
    if (ii > 0) k.axpy(-xi, row_i, b.data(), ii);
  }
}

std::vector<double> cholesky_solve(const CholeskyFactor& factor, std::vector<double> b) {
  solve_lower_in_place(factor.lower, b);
  solve_lower_transposed_in_place(factor.lower, b);
  return b;
}

Matrix cholesky_inverse(const CholeskyFactor& factor) {
  const std::size_t n = factor.lower.rows();
  Matrix inv(n, n);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = (i == j) ? 1.0 : 0.0;
    solve_lower_in_place(factor.lower, col);
    solve_lower_transposed_in_place(factor.lower, col);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

double mean_diagonal(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a(i, i);
  return sum / static_cast<double>(n);
}

namespace {

constexpr int kMaxJitterRetries = 6;

CholeskyFactor factorize_with_ladder(const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("chol_solve: matrix must be square");
  const double diag_mean = mean_diagonal(a);
  const double base_jitter = diag_mean > 0.0 ? 1e-10 * diag_mean : 1e-10;
  double jitter = 0.0;
  for (int attempt = 0; attempt <= kMaxJitterRetries; ++attempt) {
    Matrix work = a;
    if (jitter > 0.0) {
      for (std::size_t i = 0; i < n; ++i) work(i, i) += jitter;
    }
    if (cholesky_in_place(work)) {
      return CholeskyFactor{std::move(work), jitter};
    }
    jitter = (jitter == 0.0) ? base_jitter : jitter * 10.0;
  }
  std::ostringstream msg;
  msg << "chol_solve: factorization failed for " << n << "x" << n
      << " matrix (mean diagonal " << diag_mean << ") even with jitter up to "
      << base_jitter * 1e5 << "; matrix is likely indefinite";
  throw NumericalError(msg.str());
}

}  // namespace

CholeskyFactor cholesky_with_jitter(const Matrix& a) { return factorize_with_ladder(a); }

CholSolveResult chol_solve(const Matrix& a, const Matrix& b) {
  if (b.rows() != a.rows()) throw std::invalid_argument("chol_solve: rhs row count mismatch");
  CholeskyFactor factor = factorize_with_ladder(a);
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  Matrix x(n, m);
  std::vector<double> col(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    solve_lower_in_place(factor.lower, col);
    solve_lower_transposed_in_place(factor.lower, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = col[i];
  }
  return CholSolveResult{std::move(x), std::move(factor)};
}

CholSolveVectorResult chol_solve(const Matrix& a, const std::vector<double>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("chol_solve: rhs size mismatch");
  CholeskyFactor factor = factorize_with_ladder(a);
  std::vector<double> x = cholesky_solve(factor, b);
  return CholSolveVectorResult{std::move(x), std::move(factor)};
}

}  // namespace alkr
