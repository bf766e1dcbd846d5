#pragma once

#include <cstdint>
#include <random>

#include "wpinv/core.hpp"

namespace wpinv {

/// Seeded generator used by every randomized routine in the library.
///
/// Algorithm (fixed, so corpora replay bit-identically on one platform and
/// verdict-identically across platforms):
///  - raw stream: std::mt19937_64 seeded with the 64-bit seed (the engine is
///    fully specified by the standard, unlike the std distributions);
///  - uniform(): top 53 bits of one draw, scaled to [0, 1);
///  - normal(): Box-Muller cosine branch from two uniform() draws;
///  - complex_normal(): (normal() + i normal()) / sqrt(2).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// exp of a uniform draw in [log lo, log hi].
  double log_uniform(double lo, double hi);
  /// Integer in [lo, hi].
  int uniform_int(int lo, int hi);
  double normal();
  Complex complex_normal();
  CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols);
  CVector unit_vector(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent per-instance seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

}  // namespace wpinv
