#pragma once

#include <cstdint>

namespace vlex {

// ============================================================================
// Splittable deterministic RNG
//
// Contract: one user-facing 64-bit seed drives every randomized routine.
// A child stream for sub-task i is derived as split(i) — the child seed is
// splitmix64(state ^ (GOLDEN * (i + 1))) — so adding samples to one
// certificate never perturbs the draws of another. Identical seeds produce
// identical streams on every platform (pure integer arithmetic).
// ============================================================================

class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Next raw 64-bit value (splitmix64 step).
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n) — n must be > 0.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  /// Random sign, +1 or -1.
  double next_sign() { return (next_u64() & 1) ? 1.0 : -1.0; }

  /// Independent child stream for sub-task `index`.
  Rng split(std::uint64_t index) const {
    Rng child(state_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    child.next_u64();  // burn one step so split(0) differs from the parent
    return child;
  }

private:
  std::uint64_t state_;
};

}  // namespace vlex
