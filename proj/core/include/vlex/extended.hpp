#pragma once

#include <cstdint>
#include <limits>

namespace vlex {

// ============================================================================
// Extended-real helpers
//
// Exponents live in [1, +inf], measures in (0, +inf]. Infinity is an ordinary
// IEEE infinity throughout; JSON encodes it as the string "inf".
// ============================================================================

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return x < kInf && x > -kInf; }

/// Cardinality of a region family: a finite count or countably infinite.
struct Count {
  std::uint64_t value = 0;
  bool infinite = false;

  static Count finite(std::uint64_t n) { return Count{n, false}; }
  static Count inf() { return Count{0, true}; }

  bool is_zero() const { return !infinite && value == 0; }
  bool contains(std::uint64_t index_one_based) const {
    return index_one_based >= 1 && (infinite || index_one_based <= value);
  }

  Count operator+(Count other) const {
    if (infinite || other.infinite) return inf();
    return finite(value + other.value);
  }
  bool operator==(const Count&) const = default;
};

/// Closed-form infimum/supremum of a sequence together with attainment flags
/// (an approached-but-never-attained infimum matters: several classification
/// predicates distinguish "exponent 1 attained" from "exponent 1 approached").
struct SeqBounds {
  double inf = kInf;
  double sup = -kInf;
  bool inf_attained = false;
  bool sup_attained = false;
  bool empty = true;

  void absorb_value(double v) {
    if (v < inf || empty) { inf = v; inf_attained = true; }
    if (v > sup || empty) { sup = v; sup_attained = true; }
    empty = false;
  }
  void absorb_limit_inf(double v) {  // limit approached, not attained
    if (empty || v < inf) { inf = v; inf_attained = false; }
    empty = false;
    if (sup == -kInf) { sup = v; sup_attained = false; }
  }
  void absorb_limit_sup(double v) {
    if (empty || v > sup) { sup = v; sup_attained = false; }
    empty = false;
    if (inf == kInf) { inf = v; inf_attained = false; }
  }
  void absorb(const SeqBounds& o) {
    if (o.empty) return;
    if (empty || o.inf < inf) { inf = o.inf; inf_attained = o.inf_attained; }
    else if (o.inf == inf) { inf_attained = inf_attained || o.inf_attained; }
    if (empty || o.sup > sup) { sup = o.sup; sup_attained = o.sup_attained; }
    else if (o.sup == sup) { sup_attained = sup_attained || o.sup_attained; }
    empty = false;
  }
};

}  // namespace vlex
