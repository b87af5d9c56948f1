#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlex/norm.hpp"
#include "vlex/simple_function.hpp"
#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// Coordinate maps and averaged fixed-point iteration
//
// A BasisContext pins an ordered, finite coordinate system onto a space
// description: every region, then the first `truncate` members of each
// infinite family (finite families contribute all members). Operators are
// stage pipelines acting on coordinate vectors; distances are measured with
// the Luxemburg norm of the coordinate difference.
// ============================================================================

struct BasisContext {
  ExponentSpec spec;
  std::vector<RegionRef> refs;
  std::vector<double> weights;
  std::vector<double> exponents;

  /// truncate = member count used for infinite families (0 = reject them).
  static BasisContext from_spec(const ExponentSpec& spec,
                                std::uint64_t truncate = 0);

  std::size_t dim() const { return refs.size(); }
  SimpleFunction to_function(const std::vector<double>& x) const;
  double norm(const std::vector<double>& x,
              double tol = kDefaultNormTol) const;
  double distance(const std::vector<double>& x, const std::vector<double>& y,
                  double tol = kDefaultNormTol) const;
};

struct Stage {
  enum class Kind { Scale, Diag, ShiftRight, Translate, RetractBall, Toward };
  Kind kind = Kind::Scale;
  double factor = 1.0;           // Scale; Toward contraction factor
  std::vector<double> vec;       // Diag pattern (recycled) / Translate /
                                 // Toward center (zero-padded)
  std::uint64_t offset = 1;      // ShiftRight
  double radius = 1.0;           // RetractBall
};

struct OperatorSpec {
  std::string name;
  std::vector<Stage> stages;  // applied left to right
};

/// Built-ins: "identity", "scale" (Scale by factor), "contraction" (Toward a
/// small off-origin center with the given factor), "isometry_translate"
/// (alternating signs, translate, retract to radius 1.5), "shift_retract"
/// (shift right one slot, retract to the unit ball).
OperatorSpec builtin_operator(const std::string& name, double factor = 0.5);

std::vector<double> apply_operator(const BasisContext& ctx,
                                   const OperatorSpec& op,
                                   std::vector<double> x);

struct IterationTrace {
  double step = 0.5;  // averaging weight t: x <- (1-t) x + t T x
  std::uint64_t steps = 0;
  bool converged = false;
  std::vector<double> residuals;  // ||x_k - T x_k||, k = 0..steps
  std::vector<double> final_x;
};

IterationTrace km_iterate(const BasisContext& ctx, const OperatorSpec& op,
                          std::vector<double> x0, double step, double tol,
                          std::uint64_t max_steps);

struct LipschitzEstimate {
  std::uint64_t samples = 0;
  std::uint64_t used = 0;  // pairs with usable separation
  double radius = 0.0;
  double max_ratio = 0.0;
  std::string classification;  // "contractive" | "nonexpansive" | "expansive"
};

LipschitzEstimate lipschitz_sample(const BasisContext& ctx,
                                   const OperatorSpec& op,
                                   std::uint64_t samples, double radius,
                                   std::uint64_t seed);

}  // namespace vlex
