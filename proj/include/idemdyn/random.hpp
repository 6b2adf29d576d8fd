#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "idemdyn/classifier.hpp"
#include "idemdyn/core.hpp"
#include "idemdyn/permutation.hpp"

namespace idemdyn {

/// Identifier reported with every randomized campaign so runs can be
/// reproduced by any implementation of the same generator stack.
inline constexpr std::string_view kRngAlgorithm = "splitmix64+u53+lemire";

/// splitmix64 with 53-bit uniform doubles and Lemire bounded integers.
/// Fully deterministic across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// [0, 1), 53 bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// [0, bound), bound >= 1.
  uint64_t next_below(uint64_t bound) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(next()) * bound;
    return static_cast<uint64_t>(wide >> 64);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  double log_uniform(double lo, double hi);

  bool chance(double p) { return next_double() < p; }

 private:
  uint64_t state_;
};

Permutation random_permutation(SplitMix64& rng, int n);

/// Zero-row matrix: 1..n-1 zero rows, remaining entries uniform on [lo, hi].
Matrix random_class1(SplitMix64& rng, int n, double lo = 0.0, double hi = 2.0);

/// Zero-row matrix whose pseudograph is acyclic: support respects a random
/// vertex order (density ~1/2), entries uniform on (0, 2].
Matrix random_class1_acyclic(SplitMix64& rng, int n);

/// Generalized permutation matrix with positive entries log-uniform on
/// [0.25, 4], so cycle products straddle 1.
Matrix random_class2(SplitMix64& rng, int n);

/// Rescales one entry of the cycle so its product is exactly 1.
void force_unit_cycle(Matrix& a, const std::vector<int>& cycle);

/// Rescales one entry so the cycle product leaves (lo, hi) — used by
/// campaigns that need limit verdicts decidable within a fixed horizon.
/// Products already outside the band (or exactly 1) are left alone.
void push_cycle_product_outside(Matrix& a, const std::vector<int>& cycle, double lo, double hi,
                                SplitMix64& rng);

Matrix random_neither(SplitMix64& rng, int n, NeitherReason reason);

/// Random point of I_n: coordinates are 0, a draw from [-2, -0.05], or -inf
/// with probability neg_inf_prob; at least one coordinate is exactly 0.
IdempotentMeasure random_measure(SplitMix64& rng, int n, double neg_inf_prob = 0.0);

}  // namespace idemdyn
