#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlex/extended.hpp"

namespace vlex {

// ============================================================================
// Finite description of a sigma-finite measure space with a variable exponent
//
// A space is a disjoint union of regions. Each region is either an atom or a
// nonatomic cell, carries a positive weight (its measure) and an exponent in
// [1, +inf]. Countable families describe infinitely (or many) regions at once
// through closed-form weight and exponent sequences, so every derived
// quantity (inf/sup/limits, counts, measures) is computable exactly.
// ============================================================================

enum class RegionKind { Atom, Cell };

struct Region {
  std::string id;
  RegionKind kind = RegionKind::Atom;
  double weight = 1.0;    // measure of the region, in (0, inf)
  double exponent = 2.0;  // in [1, inf]
};

/// Closed-form positive weight sequence, 1-based index.
struct WeightSeq {
  enum class Kind {
    Constant,        // w_n = value
    Geometric,       // w_n = value * ratio^(n-1)
    PrefixConstant,  // w_n = prefix[n-1] for n <= len, value afterwards
  };
  Kind kind = Kind::Constant;
  double value = 1.0;
  double ratio = 0.5;
  std::vector<double> prefix;

  static WeightSeq constant(double w);
  static WeightSeq geometric(double first, double ratio);
  static WeightSeq prefix_constant(std::vector<double> prefix, double value);

  double at(std::uint64_t n) const;
  /// Total weight of members n in [from, to] (to may be infinite via count);
  /// +inf when the series diverges.
  double total(std::uint64_t from, Count count) const;
};

/// Closed-form exponent sequence with values in [1, +inf], 1-based index.
struct ExponentSeq {
  enum class Kind {
    Constant,          // p_n = value (value may be +inf)
    HarmonicApproach,  // p_n = 1 + scale / n^power          -> 1 from above
    GeometricApproach, // p_n = 1 + scale * ratio^n          -> 1 from above
    PowerGrowth,       // p_n = scale * n^power              -> +inf
    PrefixConstant,    // p_n = prefix[n-1] for n <= len, value afterwards
  };
  Kind kind = Kind::Constant;
  double value = 2.0;  // constant value / prefix tail
  double scale = 1.0;
  double power = 1.0;
  double ratio = 0.5;
  std::vector<double> prefix;

  static ExponentSeq constant(double p);
  static ExponentSeq harmonic_approach(double scale, double power);
  static ExponentSeq geometric_approach(double scale, double ratio);
  static ExponentSeq power_growth(double scale, double power);
  static ExponentSeq prefix_constant(std::vector<double> prefix, double value);

  double at(std::uint64_t n) const;
  /// Whether the sequence is nonincreasing with limit exactly 1 and all
  /// members > 1 (the shape required of a decreasing-exponent basis).
  bool decreases_to_one(Count count) const;
};

struct RegionFamily {
  std::string id;
  RegionKind kind = RegionKind::Atom;
  WeightSeq weights;
  ExponentSeq exponents;
  Count count = Count::inf();

  double weight_at(std::uint64_t n) const;    // n is 1-based, checked
  double exponent_at(std::uint64_t n) const;  // n is 1-based, checked
};

struct ExponentSpec {
  std::vector<Region> regions;
  std::vector<RegionFamily> families;

  /// Structural validation; throws Error(Kind::Validation) with the offending
  /// id and rule on failure. Valid specs are nonempty, have globally unique
  /// ids, strictly positive finite weights and exponents in [1, inf].
  void validate() const;

  const Region* find_region(const std::string& id) const;
  const RegionFamily* find_family(const std::string& id) const;
};

}  // namespace vlex
