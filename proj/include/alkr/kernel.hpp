#pragma once

#include <span>
#include <vector>

#include "alkr/linalg.hpp"

namespace alkr {

// RBF kernel hyperparameters. A single scalar lengthscale is shared across
// dimensions.
struct KernelParams {
  double lengthscale = 1.0;
  double signal_variance = 1.0;
};

// Throws std::invalid_argument unless both fields are positive and finite.
void validate(const KernelParams& params);

// signal_variance * exp(-||x - z||^2 / (2 lengthscale^2))
double rbf(std::span<const double> x, std::span<const double> z, const KernelParams& params);

// Entry (i, j) = rbf(row i of x, row j of z).
Matrix kernel_matrix(const Matrix& x, const Matrix& z, const KernelParams& params);

// kernel_matrix(x, x) computed on the lower triangle and mirrored; the
// diagonal is exactly signal_variance.
Matrix kernel_matrix_self(const Matrix& x, const KernelParams& params);

// Squared Euclidean distances, entry (i, j) = ||x_i - z_j||^2, computed via
// the norm expansion with negative round-off clamped to zero.
Matrix pairwise_sqdist(const Matrix& x, const Matrix& z);

std::vector<double> row_squared_norms(const Matrix& x);

// Median of the pairwise Euclidean distances over the first
// min(max_rows, n) rows. Zero distances (duplicate rows) are included;
// returns 1.0 if every pair coincides so callers get a usable lengthscale.
double median_pairwise_distance(const Matrix& x, std::size_t max_rows = 500);

}  // namespace alkr
