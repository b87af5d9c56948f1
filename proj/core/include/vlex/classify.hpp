#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vlex/scalars.hpp"
#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// Geometry / fixed-point classification of a described space
//
// Every predicate is a pure function of the derived scalars; two descriptions
// with identical scalars always yield identical reports. Witness strings name
// the regions/families responsible for each verdict.
// ============================================================================

struct ClassificationReport {
  DerivedScalars scalars;

  bool delta2 = false;              // doubling bound on the modular
  bool order_continuous = false;
  bool uniformly_convex_component = false;  // 1 < p- <= p+ < inf globally
  bool reflexive = false;
  bool w_fpp = false;               // fixed points for nonexpansive maps on
                                    // weakly compact convex sets
  bool isometric_linfty = false;    // isometric copy of the sup-norm space
  bool isometric_l1 = false;        // isometric copy of the absolutely
                                    // summable sequence space
  bool aic_l1 = false;              // asymptotically isometric copy of it
  bool hereditary_l1_fpp_subspace = false;  // a subspace whose own subspaces
                                            // all fail the fixed point property
  bool reflexive_subspaces_have_fpp = false;

  /// predicate -> human-readable justification naming spec ids.
  std::vector<std::pair<std::string, std::string>> witnesses;
};

ClassificationReport classify(const ExponentSpec& spec);

/// Cross-predicate implications every report must satisfy; returns the list
/// of violated implications (empty on a consistent report).
std::vector<std::string> consistency_violations(const ClassificationReport& r);

}  // namespace vlex
