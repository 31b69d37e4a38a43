#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace xdvne {

// SplitMix64 finalizer; derives independent stream seeds from one user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Portable random source. std::mt19937_64 is fully specified, but the
// standard distributions are not, so sampling is done here to keep
// generated networks identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in the closed range [lo, hi].
  int uniform_int(int lo, int hi);

  // Uniform double in [0, 1).
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  // Exponential variate with the given mean; always > 0.
  double exponential(double mean);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(i - 1)));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace xdvne
