#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace mdsa {

// Stable 64-bit mixing (splitmix64 finalizer).
std::uint64_t mix64(std::uint64_t x) noexcept;

// Order-sensitive combination of a seed with further words; used for every
// derived seed so that streams are independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) noexcept;

// Deterministic random stream. The standard distributions are
// implementation-defined, so the mappings to doubles and bounded integers
// are done here to keep results bit-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mdsa
