#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace alkr {

// SplitMix64 mixing step. Used to decorrelate seeds derived from small
// integers before they reach the engine.
std::uint64_t splitmix64(std::uint64_t x);

// Deterministic child seed for (parent, index) hierarchies: replicate seeds
// come from (master_seed, replicate), per-iteration strategy seeds from
// (replicate_seed, iteration).
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

// Seeded generator with hand-rolled draw transforms. The standard library's
// distribution objects are implementation-defined, so sequences produced
// through them would not be stable across toolchains; everything here is
// specified arithmetic on top of mt19937_64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01();

  double uniform(double lo, double hi);

  // Uniform integer on [0, n), unbiased (rejection). Requires n >= 1.
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal (Box-Muller, cached spare).
  double normal();
  double normal(double mean, double sd);

  // Normal(mean, sd) conditioned on [lo, hi], by rejection.
  double truncated_normal(double mean, double sd, double lo, double hi);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), in draw order.
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace alkr
