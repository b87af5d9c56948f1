#pragma once

#include <vector>

#include "vlex/modular.hpp"
#include "vlex/simple_function.hpp"
#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// Luxemburg norm: ||f|| = inf { a > 0 : rho(f / a) <= 1 }
//
// a -> rho(f / a) is continuous and strictly decreasing on the support of
// interest, so the norm is certified by bracketing the crossing rho = 1 and
// returning the upper bracket endpoint (which always satisfies
// rho(f / norm) <= 1). Default tolerance 1e-12 (relative bracket width).
// ============================================================================

inline constexpr double kDefaultNormTol = 1e-12;
inline constexpr double kMaxNormTol = 1e-3;
inline constexpr int kMaxBracketSteps = 2048;

struct NormResult {
  enum class Boundary {
    Interior,          // crossing bracketed; residual = |rho(f/norm) - 1|
    SupPartDominated,  // support lies entirely on exponent-inf regions
    ZeroFunction,      // f == 0
  };

  double norm = 0.0;
  int iterations = 0;       // bisection steps (excludes bracket expansion)
  double bracket_lo = 0.0;  // rho(f/lo) >= 1 >= rho(f/hi) on return
  double bracket_hi = 0.0;
  double residual = 0.0;    // |rho(f/norm) - 1|
  Boundary boundary = Boundary::Interior;
};

NormResult luxemburg_norm(const ExponentSpec& spec, const SimpleFunction& f,
                          double tol = kDefaultNormTol);

/// Norm/modular bridge on a single function:
///   (a) rho(f / ||f||) <= 1;
///   (b) ||f|| <= rho(f) when ||f|| >= 1, rho(f) <= ||f|| when ||f|| <= 1;
///   (c) |‖f‖ - 1| <= tol  <=>  |rho(f) - 1| <= tol', with
///       tol' = (1 + tol)^P - 1 from the scaling bounds (P = sup of finite
///       exponents). Both directions are checked.
struct BridgeReport {
  double norm = 0.0;
  double rho_f = 0.0;
  double rho_at_norm = 0.0;
  double tol = 0.0;
  double tol_prime = 0.0;
  bool unit_ball_ok = false;     // (a)
  bool comparison_ok = false;    // (b)
  bool near_one_forward = true;  // (c) ||f|| near 1 => rho near 1
  bool near_one_reverse = true;  // (c) rho near 1 => ||f|| near 1
  bool pass() const {
    return unit_ball_ok && comparison_ok && near_one_forward && near_one_reverse;
  }
};

BridgeReport norm_modular_bridge_check(const ExponentSpec& spec,
                                       const SimpleFunction& f,
                                       double tol = 1e-9);

/// Lower bound for disjointly supported, normalized functions:
///   || g_1 + ... + g_n || >= n^(1/P),  P = sup of finite exponents.
/// Preconditions: pairwise disjoint supports, finite-exponent support only,
/// each ||g_i|| = 1 within tol, P < inf.
struct DisjointSumReport {
  std::size_t n = 0;
  double p_plus_finite = 1.0;
  double bound = 0.0;   // n^(1/P)
  double actual = 0.0;  // ||sum||
  double margin = 0.0;  // actual - bound
  bool pass = false;
};

DisjointSumReport disjoint_sum_lower_bound(
    const ExponentSpec& spec, const std::vector<SimpleFunction>& parts,
    double tol = 1e-9);

}  // namespace vlex
