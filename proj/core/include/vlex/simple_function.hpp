#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// Finitely supported simple functions
//
// A function is a finite list of (region reference, value) pairs; references
// are distinct (disjoint-support representation) and zero-value terms are
// dropped on construction. Terms are kept sorted by (id, member index) so
// serialized output is deterministic.
// ============================================================================

struct RegionRef {
  std::string id;                      // region id, or family id with index
  std::optional<std::uint64_t> index;  // 1-based member index within a family

  bool is_family_member() const { return index.has_value(); }
  std::string display() const {
    return index ? id + "[" + std::to_string(*index) + "]" : id;
  }
  friend bool operator==(const RegionRef&, const RegionRef&) = default;
  friend bool operator<(const RegionRef& a, const RegionRef& b) {
    if (a.id != b.id) return a.id < b.id;
    return a.index.value_or(0) < b.index.value_or(0);
  }
};

struct Term {
  RegionRef ref;
  double value = 0.0;
};

/// Measure/exponent data of one referenced region.
struct ResolvedRegion {
  double weight = 0.0;
  double exponent = 1.0;
  RegionKind kind = RegionKind::Atom;
};

class SimpleFunction {
public:
  SimpleFunction() = default;

  /// Normalizing constructor: drops zero terms, sorts by reference, rejects
  /// duplicate references and non-finite values.
  static SimpleFunction make(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest |value| (0 for the zero function).
  double sup_abs() const;

  SimpleFunction scaled(double a) const;
  /// Pointwise sum: values on shared references add (zeros re-dropped).
  SimpleFunction plus(const SimpleFunction& other) const;
  /// Keep only the terms whose reference satisfies `keep`.
  template <typename Pred>
  SimpleFunction filtered(Pred keep) const {
    std::vector<Term> kept;
    for (const Term& t : terms_) {
      if (keep(t.ref)) kept.push_back(t);
    }
    return make(std::move(kept));
  }

  /// True when no reference occurs in both functions.
  bool disjoint_from(const SimpleFunction& other) const;

private:
  std::vector<Term> terms_;
};

/// Looks a reference up in the spec; throws Error(Kind::Reference) for
/// unknown ids, missing indices, or out-of-range family members.
ResolvedRegion resolve(const ExponentSpec& spec, const RegionRef& ref);

}  // namespace vlex
