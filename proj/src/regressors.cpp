#include "alkr/regressors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "alkr/simd/kernels.hpp"

namespace alkr {

namespace {

struct TargetStats {
  double mean = 0.0;
  double scale = 1.0;
  bool degenerate = false;
};

TargetStats standardize_targets(const std::vector<double>& y, std::vector<double>& y_std) {
  const std::size_t n = y.size();
  TargetStats stats;
  double sum = 0.0;
  for (double v : y) sum += v;
  stats.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : y) {
    const double c = v - stats.mean;
    ss += c * c;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n));
  if (sd > 0.0) {
    stats.scale = sd;
  } else {
    stats.scale = 1.0;
    stats.degenerate = true;
  }
  y_std.resize(n);
  for (std::size_t i = 0; i < n; ++i) y_std[i] = (y[i] - stats.mean) / stats.scale;
  return stats;
}

void check_training_inputs(const Matrix& x, const std::vector<double>& y, std::size_t min_n,
                           const char* who) {
  if (x.rows() != y.size()) {
    throw std::invalid_argument(std::string(who) + ": row count does not match target count");
  }
  if (x.rows() < min_n) {
    throw std::invalid_argument(std::string(who) + ": needs at least " + std::to_string(min_n) +
                                " samples");
  }
  if (x.cols() == 0) {
    throw std::invalid_argument(std::string(who) + ": feature dimension must be >= 1");
  }
}

void maybe_warn_soft_cap(std::size_t n, std::vector<std::string>& warnings) {
  if (n > kTrainingSizeSoftCap) {
    std::ostringstream msg;
    msg << "training set of " << n << " samples exceeds the documented soft cap of "
        << kTrainingSizeSoftCap << "; expect superlinear cost";
    warnings.push_back(msg.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// KRR
// ---------------------------------------------------------------------------

KrrModel krr_train(const Matrix& x, const std::vector<double>& y, const KernelParams& params,
                   double ridge_lambda) {
  validate(params);
  check_training_inputs(x, y, 2, "krr_train");
  if (!(ridge_lambda > 0.0)) {
    throw std::invalid_argument("krr_train: ridge_lambda must be positive");
  }
  KrrModel model;
  model.kernel_params = params;
  model.ridge_lambda = ridge_lambda;
  model.training_inputs = x;
  maybe_warn_soft_cap(x.rows(), model.warnings);

  std::vector<double> y_std;
  const TargetStats stats = standardize_targets(y, y_std);
  model.target_mean = stats.mean;
  model.target_scale = stats.scale;
  if (stats.degenerate) {
    model.warnings.push_back("krr_train: targets have zero variance; training on raw targets");
  }

  const std::size_t n = x.rows();
  Matrix system = kernel_matrix_self(x, params);
  const double ridge = static_cast<double>(n) * ridge_lambda;
  for (std::size_t i = 0; i < n; ++i) system(i, i) += ridge;
  model.dual_weights = chol_solve(system, y_std).solution;
  return model;
}

std::vector<double> krr_predict(const KrrModel& model, const Matrix& xq) {
  if (xq.cols() != model.training_inputs.cols()) {
    throw std::invalid_argument("krr_predict: query dimension does not match training dimension");
  }
  const Matrix kq = kernel_matrix(xq, model.training_inputs, model.kernel_params);
  std::vector<double> out(xq.rows());
  simd::ops().matvec(kq.data(), kq.rows(), kq.cols(), model.dual_weights.data(), out.data());
  for (double& v : out) v = model.target_mean + model.target_scale * v;
  return out;
}

KrrTuneResult krr_tune(const Matrix& x, const std::vector<double>& y,
                       const std::vector<double>& lengthscale_grid,
                       const std::vector<double>& lambda_grid, int folds) {
  check_training_inputs(x, y, 2, "krr_tune");
  if (folds < 2) throw std::invalid_argument("krr_tune: folds must be >= 2");
  if (x.rows() < static_cast<std::size_t>(folds)) {
    throw std::invalid_argument("krr_tune: fewer samples than folds");
  }
  if (lengthscale_grid.empty() || lambda_grid.empty()) {
    throw std::invalid_argument("krr_tune: grids must be non-empty");
  }
  const std::size_t n = x.rows();

  // Contiguous fold boundaries; deterministic for a given row order.
  std::vector<std::pair<std::size_t, std::size_t>> fold_ranges;
  for (int f = 0; f < folds; ++f) {
    const std::size_t lo = n * static_cast<std::size_t>(f) / static_cast<std::size_t>(folds);
    const std::size_t hi = n * static_cast<std::size_t>(f + 1) / static_cast<std::size_t>(folds);
    fold_ranges.emplace_back(lo, hi);
  }

  KrrTuneResult best;
  bool have_best = false;
  for (double lengthscale : lengthscale_grid) {
    for (double lambda : lambda_grid) {
      const KernelParams params{lengthscale, 1.0};
      double rmse_sum = 0.0;
      for (const auto& [lo, hi] : fold_ranges) {
        std::vector<int> train_idx, valid_idx;
        train_idx.reserve(n - (hi - lo));
        valid_idx.reserve(hi - lo);
        for (std::size_t i = 0; i < n; ++i) {
          if (i >= lo && i < hi) {
            valid_idx.push_back(static_cast<int>(i));
          } else {
            train_idx.push_back(static_cast<int>(i));
          }
        }
        const Matrix x_train = x.gather_rows(train_idx);
        const Matrix x_valid = x.gather_rows(valid_idx);
        std::vector<double> y_train(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) {
          y_train[i] = y[static_cast<std::size_t>(train_idx[i])];
        }
        const KrrModel fold_model = krr_train(x_train, y_train, params, lambda);
        const std::vector<double> pred = krr_predict(fold_model, x_valid);
        double sse = 0.0;
        for (std::size_t i = 0; i < valid_idx.size(); ++i) {
          const double err = pred[i] - y[static_cast<std::size_t>(valid_idx[i])];
          sse += err * err;
        }
        rmse_sum += std::sqrt(sse / static_cast<double>(valid_idx.size()));
      }
      const double mean_rmse = rmse_sum / static_cast<double>(folds);
      const bool better =
          !have_best || mean_rmse < best.cv_rmse ||
          (mean_rmse == best.cv_rmse &&
           (lengthscale > best.kernel_params.lengthscale ||
            (lengthscale == best.kernel_params.lengthscale && lambda > best.ridge_lambda)));
      if (better) {
        best = KrrTuneResult{params, lambda, mean_rmse};
        have_best = true;
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// GPR
// ---------------------------------------------------------------------------

namespace {

// Shared evaluation core: D is the matrix of pairwise squared distances of
// the training inputs.
LogMlResult log_ml_from_distances(const Matrix& d, const KernelParams& params,
                                  double noise_variance, const std::vector<double>& y) {
  const std::size_t n = y.size();
  const double ls2 = params.lengthscale * params.lengthscale;
  const double inv_two_ls2 = 1.0 / (2.0 * ls2);

  Matrix kf(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* drow = d.row(i);
    double* krow = kf.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      krow[j] = params.signal_variance * std::exp(-drow[j] * inv_two_ls2);
    }
  }

  Matrix kn = kf;
  for (std::size_t i = 0; i < n; ++i) kn(i, i) += noise_variance;
  if (!cholesky_in_place(kn)) {
    throw NumericalError("gpr_log_ml: K + noise_variance*I is not positive definite");
  }
  const CholeskyFactor factor{std::move(kn), 0.0};

  const std::vector<double> alpha = cholesky_solve(factor, y);
  double data_fit = 0.0;
  for (std::size_t i = 0; i < n; ++i) data_fit += y[i] * alpha[i];

  double log_det_half = 0.0;
  for (std::size_t i = 0; i < n; ++i) log_det_half += std::log(factor.lower(i, i));

  LogMlResult result;
  result.value = -0.5 * data_fit - log_det_half -
                 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);

  // Gradient via G = alpha alpha' - K_n^{-1}: d/dtheta = 1/2 tr(G dK/dtheta).
  const Matrix k_inv = cholesky_inverse(factor);
  double g_ls = 0.0, g_sv = 0.0, g_nv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* kfr = kf.row(i);
    const double* dr = d.row(i);
    const double* invr = k_inv.row(i);
    const double ai = alpha[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double g = ai * alpha[j] - invr[j];
      g_sv += g * kfr[j];
      g_ls += g * kfr[j] * dr[j];
    }
    g_nv += ai * ai - invr[i];
  }
  result.gradient[0] = 0.5 * g_ls / ls2;
  result.gradient[1] = 0.5 * g_sv;
  result.gradient[2] = 0.5 * noise_variance * g_nv;
  return result;
}

constexpr double kMinNoiseVariance = 1e-10;
constexpr double kMaxLogParam = 40.0;

}  // namespace

LogMlResult gpr_log_ml(const KernelParams& params, double noise_variance, const Matrix& x,
                       const std::vector<double>& y) {
  validate(params);
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("gpr_log_ml: noise_variance must be positive");
  }
  check_training_inputs(x, y, 1, "gpr_log_ml");
  const Matrix d = pairwise_sqdist(x, x);
  return log_ml_from_distances(d, params, noise_variance, y);
}

GprModel gpr_fit(const Matrix& x, const std::vector<double>& y, const KernelParams& params,
                 double noise_variance) {
  validate(params);
  if (!(noise_variance > 0.0)) {
    throw std::invalid_argument("gpr_fit: noise_variance must be positive");
  }
  check_training_inputs(x, y, 2, "gpr_fit");

  GprModel model;
  model.kernel_params = params;
  model.noise_variance = noise_variance;
  model.training_inputs = x;
  maybe_warn_soft_cap(x.rows(), model.warnings);

  std::vector<double> y_std;
  const TargetStats stats = standardize_targets(y, y_std);
  model.target_mean = stats.mean;
  model.target_scale = stats.scale;
  if (stats.degenerate) {
    model.warnings.push_back("gpr_fit: targets have zero variance; training on raw targets");
  }

  const std::size_t n = x.rows();
  Matrix kn = kernel_matrix_self(x, params);
  for (std::size_t i = 0; i < n; ++i) kn(i, i) += noise_variance;
  model.chol = cholesky_with_jitter(kn);
  model.dual_weights = cholesky_solve(model.chol, y_std);

  double data_fit = 0.0;
  for (std::size_t i = 0; i < n; ++i) data_fit += y_std[i] * model.dual_weights[i];
  double log_det_half = 0.0;
  for (std::size_t i = 0; i < n; ++i) log_det_half += std::log(model.chol.lower(i, i));
  model.log_marginal_likelihood = -0.5 * data_fit - log_det_half -
                                  0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return model;
}

GprModel gpr_train(const Matrix& x, const std::vector<double>& y,
                   const std::optional<GprHyperparams>& init, const GprOptions& options) {
  check_training_inputs(x, y, 2, "gpr_train");

  std::vector<double> y_std;
  std::vector<std::string> warnings;
  const TargetStats stats = standardize_targets(y, y_std);
  if (stats.degenerate) {
    warnings.push_back("gpr_train: targets have zero variance; training on raw targets");
  }

  const Matrix d = pairwise_sqdist(x, x);

  // theta = (log lengthscale, log signal_variance, log noise_variance)
  const auto eval = [&](const std::array<double, 3>& theta) -> std::optional<LogMlResult> {
    const KernelParams params{std::exp(theta[0]), std::exp(theta[1])};
    const double noise = std::exp(theta[2]);
    try {
      return log_ml_from_distances(d, params, noise, y_std);
    } catch (const NumericalError&) {
      return std::nullopt;
    }
  };

  std::vector<std::array<double, 3>> starts;
  if (init.has_value()) {
    validate(init->kernel_params);
    if (!(init->noise_variance > 0.0)) {
      throw std::invalid_argument("gpr_train: init noise_variance must be positive");
    }
    starts.push_back({std::log(init->kernel_params.lengthscale),
                      std::log(init->kernel_params.signal_variance),
                      std::log(init->noise_variance)});
  } else {
    const double median = median_pairwise_distance(x);
    const double factors[] = {1.0, 0.5, 2.0};
    const int count = std::clamp(options.restarts, 1, 3);
    for (int s = 0; s < count; ++s) {
      // Standardized targets have unit variance, hence signal 1.0, noise 0.1.
      starts.push_back({std::log(median * factors[s]), std::log(1.0), std::log(0.1)});
    }
  }

  double best_value = -std::numeric_limits<double>::infinity();
  double best_initial_value = -std::numeric_limits<double>::infinity();
  std::array<double, 3> best_theta = starts.front();
  bool improved = false;

  for (const auto& start : starts) {
    auto current = eval(start);
    if (!current.has_value()) {
      warnings.push_back("gpr_train: a restart failed to factorize at its initial point");
      continue;
    }
    best_initial_value = std::max(best_initial_value, current->value);
    std::array<double, 3> theta = start;
    if (current->value > best_value) {
      best_value = current->value;
      best_theta = theta;
    }

    for (int iter = 0; iter < options.max_iterations; ++iter) {
      const auto& g = current->gradient;
      const double g_inf = std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
      if (g_inf < options.gradient_tolerance) break;
      const double g_norm2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];

      double step = 1.0;
      bool accepted = false;
      while (step >= 1e-12) {
        std::array<double, 3> candidate{
            std::clamp(theta[0] + step * g[0], -kMaxLogParam, kMaxLogParam),
            std::clamp(theta[1] + step * g[1], -kMaxLogParam, kMaxLogParam),
            std::clamp(theta[2] + step * g[2], std::log(kMinNoiseVariance), kMaxLogParam)};
        const auto trial = eval(candidate);
        if (trial.has_value() && trial->value >= current->value + 1e-4 * step * g_norm2) {
          theta = candidate;
          current = trial;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // line search stalled: local optimum within resolution
      if (current->value > best_value) {
        best_value = current->value;
        best_theta = theta;
        improved = true;
      }
    }
  }

  if (!std::isfinite(best_value)) {
    throw NumericalError("gpr_train: no restart produced a usable starting point");
  }
  if (!improved || best_value <= best_initial_value) {
    warnings.push_back("gpr_train: optimizer failed to improve on initialization");
  }

  GprModel model = gpr_fit(x, y, KernelParams{std::exp(best_theta[0]), std::exp(best_theta[1])},
                           std::exp(best_theta[2]));
  model.warnings.insert(model.warnings.begin(), warnings.begin(), warnings.end());
  return model;
}

GprPrediction gpr_predict(const GprModel& model, const Matrix& xq) {
  if (xq.cols() != model.training_inputs.cols()) {
    throw std::invalid_argument("gpr_predict: query dimension does not match training dimension");
  }
  const std::size_t n = model.training_inputs.rows();
  const std::size_t m = xq.rows();
  const Matrix kq = kernel_matrix(xq, model.training_inputs, model.kernel_params);

  GprPrediction out;
  out.mean.resize(m);
  simd::ops().matvec(kq.data(), m, n, model.dual_weights.data(), out.mean.data());

  out.variance.resize(m);
  const double scale2 = model.target_scale * model.target_scale;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < m; ++i) {
    out.mean[i] = model.target_mean + model.target_scale * out.mean[i];
    v.assign(kq.row(i), kq.row(i) + n);
    solve_lower_in_place(model.chol.lower, v);
    const double reduction = simd::ops().dot(v.data(), v.data(), n);
    double variance =
        model.kernel_params.signal_variance - reduction + model.noise_variance;
    if (variance < 0.0) variance = 0.0;
    out.variance[i] = scale2 * variance;
  }
  return out;
}

}  // namespace alkr
