#include "alkr/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alkr {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

std::uint64_t Rng::uniform_int(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::uniform_int: n must be >= 1");
  const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % n;
  }
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double Rng::normal(double mean, double sd) { return mean + sd * normal(); }

double Rng::truncated_normal(double mean, double sd, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("Rng::truncated_normal: empty range");
  if (!(sd > 0.0)) throw std::invalid_argument("Rng::truncated_normal: sd must be positive");
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double draw = normal(mean, sd);
    if (draw >= lo && draw <= hi) return draw;
  }
  throw std::runtime_error("Rng::truncated_normal: acceptance rate too low for range");
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
  if (k < 0 || n < 0 || k > n) {
    throw std::invalid_argument("Rng::sample_without_replacement: need 0 <= k <= n");
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates: position i receives a uniform pick from [i, n).
  for (int i = 0; i < k; ++i) {
    const std::size_t j =
        static_cast<std::size_t>(i) +
        static_cast<std::size_t>(uniform_int(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace alkr
