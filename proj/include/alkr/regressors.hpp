#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alkr/kernel.hpp"
#include "alkr/linalg.hpp"

namespace alkr {

// Past this many training samples both regressors keep working but emit a
// warning; dense kernel methods stop being practical well before the warning
// threshold matters.
inline constexpr std::size_t kTrainingSizeSoftCap = 5000;

// ---------------------------------------------------------------------------
// Kernel ridge regression
// ---------------------------------------------------------------------------

struct KrrModel {
  KernelParams kernel_params;
  double ridge_lambda = 0.0;
  std::vector<double> dual_weights;  // solves (K + n*lambda*I) a = y_std
  Matrix training_inputs;
  double target_mean = 0.0;
  double target_scale = 1.0;
  std::vector<std::string> warnings;
};

// Targets are standardized to zero mean / unit variance internally and
// de-standardized on prediction. The ridge is scaled by n so lambda grids
// keep their meaning as the training set grows.
KrrModel krr_train(const Matrix& x, const std::vector<double>& y,
                   const KernelParams& params, double ridge_lambda);

std::vector<double> krr_predict(const KrrModel& model, const Matrix& xq);

struct KrrTuneResult {
  KernelParams kernel_params;
  double ridge_lambda = 0.0;
  double cv_rmse = 0.0;
};

// Grid search minimizing mean cross-validated RMSE over contiguous folds.
// Ties go to the larger lengthscale, then the larger lambda. KRR fixes
// signal_variance at 1; it is redundant against the ridge scale.
KrrTuneResult krr_tune(const Matrix& x, const std::vector<double>& y,
                       const std::vector<double>& lengthscale_grid,
                       const std::vector<double>& lambda_grid, int folds);

// ---------------------------------------------------------------------------
// Gaussian process regression
// ---------------------------------------------------------------------------

struct GprHyperparams {
  KernelParams kernel_params;
  double noise_variance = 0.1;
};

struct GprOptions {
  int restarts = 3;                 // starts drawn from {1, 0.5, 2} x median lengthscale
  int max_iterations = 200;
  double gradient_tolerance = 1e-5;  // infinity norm in log-parameter space
};

struct LogMlResult {
  double value = 0.0;
  // d/d(log lengthscale), d/d(log signal_variance), d/d(log noise_variance)
  std::array<double, 3> gradient{};
};

// Log marginal likelihood -1/2 y'K_n^{-1}y - 1/2 log|K_n| - n/2 log(2pi)
// with K_n = K + noise_variance*I, evaluated on y as given (no target
// standardization), plus its gradient in log-parameter space.
LogMlResult gpr_log_ml(const KernelParams& params, double noise_variance,
                       const Matrix& x, const std::vector<double>& y);

// Hyperparameters are expressed against the internally standardized targets,
// so noise_variance is directly comparable with KRR's n*lambda ridge.
struct GprModel {
  KernelParams kernel_params;
  double noise_variance = 0.0;
  std::vector<double> dual_weights;  // (K + noise_variance*I)^{-1} y_std
  CholeskyFactor chol;
  Matrix training_inputs;
  double target_mean = 0.0;
  double target_scale = 1.0;
  double log_marginal_likelihood = 0.0;
  std::vector<std::string> warnings;
};

// Posterior at fixed hyperparameters (in standardized-target units).
GprModel gpr_fit(const Matrix& x, const std::vector<double>& y,
                 const KernelParams& params, double noise_variance);

// Multi-start gradient ascent on the marginal likelihood in log-parameter
// space with backtracking line search. When init is given the optimizer
// starts there only.
GprModel gpr_train(const Matrix& x, const std::vector<double>& y,
                   const std::optional<GprHyperparams>& init = std::nullopt,
                   const GprOptions& options = {});

struct GprPrediction {
  std::vector<double> mean;
  std::vector<double> variance;  // includes the noise term, clamped at zero
};

GprPrediction gpr_predict(const GprModel& model, const Matrix& xq);

}  // namespace alkr
