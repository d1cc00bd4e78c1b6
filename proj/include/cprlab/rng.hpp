#ifndef CPRLAB_RNG_HPP
#define CPRLAB_RNG_HPP

#include <array>
#include <cstdint>

namespace cprlab {

/// Deterministic pseudo-random generator: xoshiro256++ seeded via SplitMix64.
///
/// The algorithm is fixed so that seeded runs reproduce bit-identically on
/// every platform; golden files and metrics depend on it. Do not swap the
/// generator without regenerating frozen test values.
class Rng {
public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double next_double();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller; draws are consumed in pairs and the
  /// spare is cached, so interleaving with other draw kinds is well defined
  /// but order sensitive.
  double normal();

  /// Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

private:
  std::array<std::uint64_t, 4> state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

} // namespace cprlab

#endif
