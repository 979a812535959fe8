#pragma once

#include <cstdint>
#include <random>

namespace cprsim {

// One SplitMix64 output for the given state.
std::uint64_t splitmix64(std::uint64_t state) noexcept;

// Stream derivation: the (index + 1)-th output of a SplitMix64 generator whose
// state starts at `base`. Used for every per-run / per-cell seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

// mt19937_64 with distribution code written out here, so draws are identical
// across standard libraries.
class Rng {
 public:
  static constexpr const char* kDescription = "mt19937_64; seeds derived by splitmix64(base, index)";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n - 1}; n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cprsim
