#include "alkr/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "alkr/simd/kernels.hpp"

namespace alkr {

void validate(const KernelParams& params) {
  if (!(params.lengthscale > 0.0) || !std::isfinite(params.lengthscale)) {
    throw std::invalid_argument("KernelParams: lengthscale must be positive and finite");
  }
  if (!(params.signal_variance > 0.0) || !std::isfinite(params.signal_variance)) {
    throw std::invalid_argument("KernelParams: signal_variance must be positive and finite");
  }
}

double rbf(std::span<const double> x, std::span<const double> z, const KernelParams& params) {
  validate(params);
  if (x.size() != z.size() || x.empty()) {
    throw std::invalid_argument("rbf: inputs must share a dimension d >= 1");
  }
  const auto& k = simd::ops();
  const double xn = k.dot(x.data(), x.data(), x.size());
  const double zn = k.dot(z.data(), z.data(), z.size());
  double dist = 0.0;
  k.sqdist_row(x.data(), z.data(), 1, x.size(), xn, &zn, &dist);
  return params.signal_variance * std::exp(-dist / (2.0 * params.lengthscale * params.lengthscale));
}

std::vector<double> row_squared_norms(const Matrix& x) {
  const auto& k = simd::ops();
  std::vector<double> norms(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    norms[i] = k.dot(x.row(i), x.row(i), x.cols());
  }
  return norms;
}

Matrix pairwise_sqdist(const Matrix& x, const Matrix& z) {
  if (x.cols() != z.cols()) {
    throw std::invalid_argument("pairwise_sqdist: dimension mismatch");
  }
  const auto& k = simd::ops();
  const std::vector<double> xn = row_squared_norms(x);
  const std::vector<double> zn = row_squared_norms(z);
  Matrix out(x.rows(), z.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    k.sqdist_row(x.row(i), z.data(), z.rows(), z.cols(), xn[i], zn.data(), out.row(i));
  }
  return out;
}

Matrix kernel_matrix(const Matrix& x, const Matrix& z, const KernelParams& params) {
  validate(params);
  if (x.cols() != z.cols() || x.cols() == 0) {
    throw std::invalid_argument("kernel_matrix: inputs must share a dimension d >= 1");
  }
  const double inv_two_ls2 = 1.0 / (2.0 * params.lengthscale * params.lengthscale);
  Matrix out = pairwise_sqdist(x, z);
  double* data = out.data();
  const std::size_t total = x.rows() * z.rows();
  for (std::size_t i = 0; i < total; ++i) {
    data[i] = params.signal_variance * std::exp(-data[i] * inv_two_ls2);
  }
  return out;
}

Matrix kernel_matrix_self(const Matrix& x, const KernelParams& params) {
  validate(params);
  if (x.cols() == 0) throw std::invalid_argument("kernel_matrix_self: d >= 1 required");
  const auto& k = simd::ops();
  const std::vector<double> norms = row_squared_norms(x);
  const double inv_two_ls2 = 1.0 / (2.0 * params.lengthscale * params.lengthscale);
  const std::size_t n = x.rows();
  Matrix out(n, n);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Row i against rows 0..i, mirrored into column i.
    k.sqdist_row(x.row(i), x.data(), i + 1, x.cols(), norms[i], norms.data(), dist.data());
    double* row_i = out.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      const double v = params.signal_variance * std::exp(-dist[j] * inv_two_ls2);
      row_i[j] = v;
      out(j, i) = v;
    }
    row_i[i] = params.signal_variance;
  }
  return out;
}

double median_pairwise_distance(const Matrix& x, std::size_t max_rows) {
  const std::size_t n = std::min(x.rows(), max_rows);
  if (n < 2) return 1.0;
  const auto& k = simd::ops();
  const std::vector<double> norms = row_squared_norms(x);
  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  std::vector<double> row(n);
  for (std::size_t i = 1; i < n; ++i) {
    k.sqdist_row(x.row(i), x.data(), i, x.cols(), norms[i], norms.data(), row.data());
    for (std::size_t j = 0; j < i; ++j) dists.push_back(std::sqrt(row[j]));
  }
  const std::size_t mid = dists.size() / 2;
  std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(mid), dists.end());
  const double median = dists[mid];
  return median > 0.0 ? median : 1.0;
}

}  // namespace alkr
