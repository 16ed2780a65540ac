#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "alkr/rng.hpp"
#include "alkr/simd/kernels.hpp"

using namespace alkr;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}

// Every variant that dispatch could hand out on this machine.
std::vector<const simd::Ops*> all_variants() {
  std::vector<const simd::Ops*> variants{&simd::scalar_ops()};
#if defined(__x86_64__) || defined(_M_X64)
  if (simd::avx2_available()) variants.push_back(&simd::avx2_ops());
#endif
#if defined(__aarch64__)
  variants.push_back(&simd::neon_ops());
#endif
  return variants;
}

}  // namespace

TEST_CASE("all variants agree with the scalar reference") {
  Rng rng(2024);
  const auto& reference = simd::scalar_ops();
  // Sizes straddling the unroll widths, including remainders.
  const std::vector<std::size_t> sizes{0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 18, 31, 64, 257, 1000};
  for (const auto* variant : all_variants()) {
    CAPTURE(variant->name);
    for (std::size_t n : sizes) {
      const auto a = random_vector(rng, n);
      const auto b = random_vector(rng, n);

      const double want = reference.dot(a.data(), b.data(), n);
      const double got = variant->dot(a.data(), b.data(), n);
      CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));

      auto y_ref = random_vector(rng, n);
      auto y_var = y_ref;
      reference.axpy(0.37, a.data(), y_ref.data(), n);
      variant->axpy(0.37, a.data(), y_var.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(y_var[i] - y_ref[i]) <= 1e-14 * (1.0 + std::abs(y_ref[i])));
      }
    }
  }
}

TEST_CASE("matvec and sqdist_row variants agree") {
  Rng rng(99);
  for (const auto* variant : all_variants()) {
    CAPTURE(variant->name);
    for (const auto& [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 1}, {3, 18}, {4, 18}, {5, 7}, {17, 33}, {50, 18}}) {
      const auto a = random_vector(rng, rows * cols);
      const auto x = random_vector(rng, cols);

      std::vector<double> want(rows), got(rows);
      simd::scalar_ops().matvec(a.data(), rows, cols, x.data(), want.data());
      variant->matvec(a.data(), rows, cols, x.data(), got.data());
      for (std::size_t i = 0; i < rows; ++i) {
        CHECK(std::abs(got[i] - want[i]) <= 1e-12 * (1.0 + std::abs(want[i])));
      }

      std::vector<double> norms(rows, 0.0);
      for (std::size_t i = 0; i < rows; ++i) {
        norms[i] = simd::scalar_ops().dot(a.data() + i * cols, a.data() + i * cols, cols);
      }
      const double xn = simd::scalar_ops().dot(x.data(), x.data(), cols);
      std::vector<double> dwant(rows), dgot(rows);
      simd::scalar_ops().sqdist_row(x.data(), a.data(), rows, cols, xn, norms.data(), dwant.data());
      variant->sqdist_row(x.data(), a.data(), rows, cols, xn, norms.data(), dgot.data());
      for (std::size_t i = 0; i < rows; ++i) {
        CHECK(std::abs(dgot[i] - dwant[i]) <= 1e-12 * (1.0 + std::abs(dwant[i])));
        CHECK(dgot[i] >= 0.0);
      }
    }
  }
}

TEST_CASE("sqdist_row clamps the self-distance to exactly zero") {
  Rng rng(5);
  const auto x = random_vector(rng, 18);
  for (const auto* variant : all_variants()) {
    // Norms from the same table's dot, as the library does.
    const double xn = variant->dot(x.data(), x.data(), 18);
    double out = -1.0;
    variant->sqdist_row(x.data(), x.data(), 1, 18, xn, &xn, &out);
    CHECK(out == 0.0);
  }
}

TEST_CASE("dispatch returns a usable table") {
  const auto& k = simd::ops();
  const double a[3] = {1.0, 2.0, 3.0};
  const double b[3] = {4.0, 5.0, 6.0};
  CHECK(k.dot(a, b, 3) == doctest::Approx(32.0));
}
