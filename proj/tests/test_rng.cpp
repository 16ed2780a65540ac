#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "alkr/rng.hpp"

using namespace alkr;

TEST_CASE("derive_seed decorrelates nearby inputs") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
}

TEST_CASE("uniform01 stays in [0, 1) and is reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(u == b.uniform01());
  }
}

TEST_CASE("uniform_int is unbiased enough over a small support") {
  Rng rng(7);
  const int buckets = 10;
  const int draws = 100000;
  std::vector<int> counts(buckets, 0);
  for (int i = 0; i < draws; ++i) counts[rng.uniform_int(buckets)]++;
  const double expected = static_cast<double>(draws) / buckets;
  const double sigma = std::sqrt(expected * (1.0 - 1.0 / buckets));
  for (int c : counts) {
    CHECK(std::abs(c - expected) < 5.0 * sigma);
  }
}

TEST_CASE("normal moments") {
  Rng rng(11);
  double sum = 0.0, sumsq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    sum += v;
    sumsq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sumsq / n - 1.0) < 0.02);
}

TEST_CASE("truncated_normal respects its range") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double v = rng.truncated_normal(3.0, 2.0, 0.1, 7.0);
    CHECK(v >= 0.1);
    CHECK(v <= 7.0);
  }
}

TEST_CASE("sample_without_replacement draws distinct indices") {
  Rng rng(13);
  const auto sample = rng.sample_without_replacement(100, 40);
  CHECK(sample.size() == 40);
  std::set<int> unique(sample.begin(), sample.end());
  CHECK(unique.size() == 40);
  CHECK(*unique.begin() >= 0);
  CHECK(*unique.rbegin() < 100);

  const auto all = Rng(5).sample_without_replacement(10, 10);
  std::set<int> every(all.begin(), all.end());
  CHECK(every.size() == 10);
}
