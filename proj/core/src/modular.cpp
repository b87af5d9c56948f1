#include "vlex/modular.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vlex/errors.hpp"

namespace vlex {

double pow_abs(double v, double p) {
  v = std::abs(v);
  if (v == 0.0) return 0.0;
  if (p == 1.0) return v;  // dominant case; keep it off the pow path
  if (p == 2.0) return v * v;
  return std::pow(v, p);
}

bool leq_tol(double a, double b, double rel, double abs) {
  if (a <= b) return true;
  double scale = std::max(std::abs(a), std::abs(b));
  return a - b <= std::max(rel * scale, abs);
}

ModularParts rho_parts(const ExponentSpec& spec, const SimpleFunction& f) {
  ModularParts parts;
  for (const Term& t : f.terms()) {
    ResolvedRegion r = resolve(spec, t.ref);
    if (r.exponent == kInf) {
      parts.sup_part = std::max(parts.sup_part, std::abs(t.value));
    } else {
      parts.finite_part += r.weight * pow_abs(t.value, r.exponent);
    }
  }
  return parts;
}

double rho(const ExponentSpec& spec, const SimpleFunction& f) {
  return rho_parts(spec, f).total();
}

ScalingBounds scaling_bounds_check(const ExponentSpec& spec,
                                   const SimpleFunction& f, double a,
                                   double rel_tol) {
  if (!(a > 0.0) || !is_finite(a)) {
    fail_parameter("scaling factor must be in (0, inf), got " +
                   std::to_string(a));
  }
  DerivedScalars s = derive_scalars(spec);
  // With no finite-exponent part the modular is 1-homogeneous; P = 1 keeps
  // both chains valid (they collapse to equalities).
  double P = 1.0;
  if (s.p_plus_finite) {
    if (*s.p_plus_finite == kInf) {
      fail_precondition("scaling bounds need a bounded finite-exponent part; "
                        "this spec has unbounded finite exponents");
    }
    P = *s.p_plus_finite;
  }

  ScalingBounds out;
  out.a = a;
  out.p_plus_finite = P;
  out.rho_f = rho(spec, f);
  out.rho_af = rho(spec, f.scaled(a));
  if (a >= 1.0) {
    out.lower = a * out.rho_f;
    out.upper = std::pow(a, P) * out.rho_f;
  } else {
    out.lower = std::pow(a, P) * out.rho_f;
    out.upper = a * out.rho_f;
  }
  out.lower_ok = leq_tol(out.lower, out.rho_af, rel_tol);
  out.upper_ok = leq_tol(out.rho_af, out.upper, rel_tol);
  return out;
}

double convexity_defect(const ExponentSpec& spec, const SimpleFunction& u,
                        const SimpleFunction& v, const SimpleFunction& x) {
  // Union of supports, with per-function values (0 where absent).
  struct Triple {
    double u = 0.0, v = 0.0, x = 0.0;
  };
  std::map<RegionRef, Triple> support;
  for (const Term& t : u.terms()) support[t.ref].u = t.value;
  for (const Term& t : v.terms()) support[t.ref].v = t.value;
  for (const Term& t : x.terms()) support[t.ref].x = t.value;

  double defect = 0.0;
  for (const auto& [ref, val] : support) {
    ResolvedRegion r = resolve(spec, ref);
    if (r.exponent == kInf) {
      fail_precondition("convexity defect is defined on finite-exponent "
                        "regions only; " +
                        ref.display() + " has exponent inf");
    }
    double mid = 0.5 * (val.u + val.v);
    defect += r.weight * (pow_abs(val.x - val.u, r.exponent) +
                          pow_abs(val.x - val.v, r.exponent) -
                          2.0 * pow_abs(val.x - mid, r.exponent));
  }
  return defect;
}

}  // namespace vlex
