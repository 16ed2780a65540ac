#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "alkr/kernel.hpp"
#include "alkr/rng.hpp"

using namespace alkr;

TEST_CASE("rbf at zero distance equals the signal variance") {
  const std::vector<double> x{0.3, -1.2, 4.0};
  CHECK(rbf(x, x, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<double> origin{0.0, 0.0};
  CHECK(rbf(origin, origin, {2.0, 3.0}) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("rbf unit-distance value") {
  const std::vector<double> x{1.0, 0.0};
  const std::vector<double> z{0.0, 0.0};
  CHECK(rbf(x, z, {1.0, 1.0}) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("rbf rejects mismatched dimensions and bad params") {
  const std::vector<double> x{1.0, 0.0};
  const std::vector<double> z{0.0};
  CHECK_THROWS_AS(rbf(x, z, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(rbf(x, x, {-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(rbf(x, x, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("rbf decreases strictly with distance") {
  const std::vector<double> z{0.0, 0.0};
  double prev = 2.0;
  for (double r = 0.0; r < 5.0; r += 0.25) {
    const std::vector<double> x{r, 0.0};
    const double v = rbf(x, z, {1.3, 1.7});
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("kernel_matrix basic shapes and values") {
  Matrix one(1, 1);
  one(0, 0) = 0.7;
  const Matrix k1 = kernel_matrix(one, one, {1.0, 2.5});
  CHECK(k1.rows() == 1);
  CHECK(k1(0, 0) == doctest::Approx(2.5).epsilon(1e-15));

  Matrix two(2, 1);
  two(0, 0) = 0.4;
  two(1, 0) = 0.4;
  const Matrix k2 = kernel_matrix(two, two, {1.0, 1.0});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(k2(i, j) == doctest::Approx(1.0).epsilon(1e-15));

  Matrix x(2, 1), z(1, 1);
  x(0, 0) = 0.0;
  x(1, 0) = 1.0;
  z(0, 0) = 0.0;
  const Matrix col = kernel_matrix(x, z, {1.0, 1.0});
  CHECK(col(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(col(1, 0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("self kernel matrix is symmetric with exact diagonal") {
  Rng rng(77);
  Matrix x(60, 18);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
  const KernelParams params{1.7, 2.2};
  const Matrix k = kernel_matrix_self(x, params);
  const Matrix k2 = kernel_matrix(x, x, params);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    CHECK(k(i, i) == params.signal_variance);
    for (std::size_t j = 0; j < k.cols(); ++j) {
      CHECK(std::abs(k(i, j) - k(j, i)) <= 1e-12);
      CHECK(std::abs(k(i, j) - k2(i, j)) <= 1e-12);
    }
  }
}

TEST_CASE("kernel systems with a small ridge factorize without jitter") {
  Rng rng(123);
  Matrix x(200, 6);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = rng.uniform(-2.0, 2.0);
  Matrix k = kernel_matrix_self(x, {1.0, 1.0});
  for (std::size_t i = 0; i < k.rows(); ++i) k(i, i) += 1e-8;
  std::vector<double> b(k.rows());
  for (auto& v : b) v = rng.normal();
  const auto result = chol_solve(k, b);
  CHECK(result.factor.jitter_used == 0.0);
}

TEST_CASE("pairwise_sqdist clamps negatives and matches direct evaluation") {
  Rng rng(9);
  Matrix x(20, 5), z(30, 5);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = rng.uniform(-1, 1);
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) z(i, j) = rng.uniform(-1, 1);
  const Matrix d = pairwise_sqdist(x, z);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < z.rows(); ++j) {
      double direct = 0.0;
      for (std::size_t c = 0; c < 5; ++c) {
        const double diff = x(i, c) - z(j, c);
        direct += diff * diff;
      }
      CHECK(d(i, j) >= 0.0);
      CHECK(std::abs(d(i, j) - direct) <= 1e-12 * (1.0 + direct));
    }
  }
}

TEST_CASE("median_pairwise_distance on a known configuration") {
  // Three collinear points at 0, 3, 4: pairwise distances {3, 1, 4},
  // median 3.
  Matrix x(3, 1);
  x(0, 0) = 0.0;
  x(1, 0) = 3.0;
  x(2, 0) = 4.0;
  CHECK(median_pairwise_distance(x) == doctest::Approx(3.0));

  Matrix dup(4, 2, 0.5);
  CHECK(median_pairwise_distance(dup) == 1.0);  // degenerate fallback
}
