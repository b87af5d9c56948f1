#pragma once

#include <optional>
#include <string>

#include "vlex/extended.hpp"
#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// Derived scalars of a space description
//
// All quantities are computed in closed form from the region list and the
// family descriptors — never by truncating an infinite family. Infima over
// infinite families distinguish "attained" from "approached in the limit";
// that distinction drives several classification predicates.
// ============================================================================

/// Cardinality/measure structure of the exponent-1 and exponent-inf parts.
struct OneInftyStructure {
  Count atoms_p1;            // number of atoms with exponent exactly 1
  Count atoms_pinf;          // number of atoms with exponent exactly +inf
  double cell_measure_p1 = 0.0;    // nonatomic measure where exponent == 1
  double cell_measure_pinf = 0.0;  // nonatomic measure where exponent == +inf
};

/// Ids of regions/families witnessing the extreme behaviors (for report text).
struct ScalarWitnesses {
  std::optional<std::string> p_minus_src, p_plus_src;
  std::optional<std::string> unbounded_finite;   // finite exponents with sup = inf
  std::optional<std::string> off_one_approach;   // exponents > 1 approaching 1
  std::optional<std::string> atoms_p1_infinite;  // infinitely many exponent-1 atoms
  std::optional<std::string> atoms_pinf_infinite;
  std::optional<std::string> cell_p1;            // positive nonatomic exponent-1 part
  std::optional<std::string> cell_pinf;
};

struct DerivedScalars {
  double p_minus = kInf;  // essential infimum of the exponent
  double p_plus = -kInf;  // essential supremum of the exponent
  bool p_minus_attained = false;
  bool p_plus_attained = false;

  /// sup of the exponent over the finite-exponent part; nullopt when that
  /// part is empty; +inf when finite exponents are unbounded.
  std::optional<double> p_plus_finite;

  /// inf of the exponent over the part where the exponent is strictly > 1;
  /// nullopt when no such part exists. Value 1 means "approached, never
  /// attained" (all contributing exponents exceed 1 by definition).
  std::optional<double> p_minus_off_one;

  /// inf/sup over the part where the exponent lies strictly in (1, inf).
  std::optional<double> p_minus_star, p_plus_star;

  OneInftyStructure one_infty;
  ScalarWitnesses witnesses;
};

DerivedScalars derive_scalars(const ExponentSpec& spec);

}  // namespace vlex
