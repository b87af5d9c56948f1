#pragma once

#include "vlex/scalars.hpp"
#include "vlex/simple_function.hpp"
#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// Modular evaluation
//
// rho(f) = sum over finite-exponent terms of weight * |value|^exponent
//        + max over exponent-inf terms of |value|.
//
// Everything is an exact finite computation on the terms; no quadrature.
// Comparisons downstream use relative tolerance 1e-12 with absolute floor
// 1e-300 (kRelTol / kAbsFloor).
// ============================================================================

inline constexpr double kRelTol = 1e-12;
inline constexpr double kAbsFloor = 1e-300;

/// |v|^p with the conventions 0^p = 0 (p > 0) and the exponent-1 bypass.
double pow_abs(double v, double p);

/// a <= b up to relative slack (and an absolute floor for near-zero values).
bool leq_tol(double a, double b, double rel = kRelTol, double abs = kAbsFloor);

struct ModularParts {
  double finite_part = 0.0;  // integral over finite-exponent regions
  double sup_part = 0.0;     // essential sup over exponent-inf regions
  double total() const { return finite_part + sup_part; }
};

ModularParts rho_parts(const ExponentSpec& spec, const SimpleFunction& f);
double rho(const ExponentSpec& spec, const SimpleFunction& f);

/// Two-sided scaling estimate for rho(a * f) in terms of rho(f):
///   a >= 1:     a * rho(f) <= rho(a f) <= a^P * rho(f)
///   0 < a < 1:  a^P * rho(f) <= rho(a f) <= a * rho(f)
/// with P the supremum of the finite exponents. Requires P < inf.
struct ScalingBounds {
  double a = 1.0;
  double p_plus_finite = 1.0;
  double rho_f = 0.0;
  double rho_af = 0.0;
  double lower = 0.0;  // the side that must sit below rho_af
  double upper = 0.0;  // the side that must sit above rho_af
  bool lower_ok = false;
  bool upper_ok = false;
  bool pass() const { return lower_ok && upper_ok; }
};

ScalingBounds scaling_bounds_check(const ExponentSpec& spec,
                                   const SimpleFunction& f, double a,
                                   double rel_tol = kRelTol);

/// Integral of |x-u|^p + |x-v|^p - 2|x-(u+v)/2|^p over the union of supports.
/// Nonnegative by convexity; strictly positive when u != v somewhere and all
/// involved exponents exceed 1. Requires every involved region to have a
/// finite exponent.
double convexity_defect(const ExponentSpec& spec, const SimpleFunction& u,
                        const SimpleFunction& v, const SimpleFunction& x);

}  // namespace vlex
