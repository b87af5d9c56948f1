#include "vlex/norm.hpp"

#include <algorithm>
#include <cmath>

#include "vlex/errors.hpp"
#include "vlex/scalars.hpp"

namespace vlex {

namespace {

struct ResolvedTerm {
  double value;
  double weight;
  double exponent;  // kInf for sup-part terms
};

std::vector<ResolvedTerm> resolve_terms(const ExponentSpec& spec,
                                        const SimpleFunction& f) {
  std::vector<ResolvedTerm> out;
  out.reserve(f.terms().size());
  for (const Term& t : f.terms()) {
    ResolvedRegion r = resolve(spec, t.ref);
    out.push_back({t.value, r.weight, r.exponent});
  }
  return out;
}

double rho_scaled(const std::vector<ResolvedTerm>& terms, double alpha) {
  // rho(f / alpha); overflow to +inf is fine (it only means "way above 1").
  double finite = 0.0, sup = 0.0;
  for (const ResolvedTerm& t : terms) {
    if (t.exponent == kInf) {
      sup = std::max(sup, std::abs(t.value) / alpha);
    } else {
      finite += t.weight * pow_abs(t.value / alpha, t.exponent);
    }
  }
  return finite + sup;
}

/// Norm of a single term: |v| * w^(1/p), and plain |v| on exponent-inf
/// regions. Exact for indicator-style functions, and a rigorous lower bound
/// for the norm of any function containing the term.
double term_norm(const ResolvedTerm& t) {
  if (t.exponent == kInf) return std::abs(t.value);
  return std::abs(t.value) * std::pow(t.weight, 1.0 / t.exponent);
}

}  // namespace

NormResult luxemburg_norm(const ExponentSpec& spec, const SimpleFunction& f,
                          double tol) {
  if (!(tol > 0.0) || tol > kMaxNormTol) {
    fail_parameter("norm tolerance must lie in (0, " +
                   std::to_string(kMaxNormTol) + "]");
  }
  NormResult res;
  if (f.is_zero()) {
    res.boundary = NormResult::Boundary::ZeroFunction;
    return res;
  }

  std::vector<ResolvedTerm> terms = resolve_terms(spec, f);

  bool has_finite_part = false;
  double lo = 0.0, hi = 0.0;  // rigorous per-term lower bound / triangle upper bound
  for (const ResolvedTerm& t : terms) {
    double tn = term_norm(t);
    lo = std::max(lo, tn);
    hi += tn;
    if (t.exponent != kInf) has_finite_part = true;
  }

  if (!has_finite_part) {
    // Pure sup-part support: rho(f/a) = sup|f| / a, so the norm is sup|f|.
    res.norm = f.sup_abs();
    res.bracket_lo = res.bracket_hi = res.norm;
    res.residual = 0.0;
    res.boundary = NormResult::Boundary::SupPartDominated;
    return res;
  }

  // The largest single-term norm is also a lower bound for the whole norm,
  // so rho(f/lo) <= 1 pins the norm at lo exactly (single-term functions and
  // ties land here).
  double rho_lo = rho_scaled(terms, lo);
  if (rho_lo <= 1.0) {
    res.norm = lo;
    res.bracket_lo = res.bracket_hi = lo;
    res.residual = std::abs(rho_lo - 1.0);
    return res;
  }

  // Guard the bracket invariant rho(f/lo) > 1 >= rho(f/hi) against rounding
  // on the triangle-bound endpoint; expansion is capped, not unbounded.
  int expand = 0;
  while (rho_scaled(terms, hi) > 1.0) {
    hi *= 2.0;
    if (++expand > kMaxBracketSteps) {
      fail_precondition("norm bracket expansion failed to enclose rho = 1");
    }
  }

  int iters = 0;
  while (hi - lo > tol * lo) {
    if (++iters > kMaxBracketSteps) break;
    double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;  // bracket exhausted at double precision
    if (rho_scaled(terms, mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  res.norm = hi;  // certified side: rho(f/hi) <= 1
  res.iterations = iters;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.residual = std::abs(rho_scaled(terms, hi) - 1.0);
  return res;
}

BridgeReport norm_modular_bridge_check(const ExponentSpec& spec,
                                       const SimpleFunction& f, double tol) {
  if (!(tol > 0.0) || tol > 0.5) {
    fail_parameter("bridge tolerance must lie in (0, 0.5]");
  }
  DerivedScalars s = derive_scalars(spec);
  double P = 1.0;
  if (s.p_plus_finite) {
    if (*s.p_plus_finite == kInf) {
      fail_precondition("bridge check needs a bounded finite-exponent part");
    }
    P = *s.p_plus_finite;
  }

  BridgeReport rep;
  rep.tol = tol;
  rep.tol_prime = std::pow(1.0 + tol, P) - 1.0;
  rep.rho_f = rho(spec, f);

  NormResult nr = luxemburg_norm(spec, f, std::min(tol, kDefaultNormTol));
  rep.norm = nr.norm;
  if (f.is_zero()) {
    rep.rho_at_norm = 0.0;
    rep.unit_ball_ok = true;
    rep.comparison_ok = true;
    return rep;
  }

  rep.rho_at_norm = rho(spec, f.scaled(1.0 / nr.norm));
  rep.unit_ball_ok = leq_tol(rep.rho_at_norm, 1.0, tol);
  if (rep.norm >= 1.0) {
    rep.comparison_ok = leq_tol(rep.norm, rep.rho_f, tol);
  } else {
    rep.comparison_ok = leq_tol(rep.rho_f, rep.norm, tol);
  }

  const double slack = 16.0 * kRelTol;
  if (std::abs(rep.norm - 1.0) <= tol) {
    rep.near_one_forward = std::abs(rep.rho_f - 1.0) <= rep.tol_prime + slack;
  }
  if (std::abs(rep.rho_f - 1.0) <= rep.tol_prime) {
    rep.near_one_reverse = std::abs(rep.norm - 1.0) <= rep.tol_prime + slack;
  }
  return rep;
}

DisjointSumReport disjoint_sum_lower_bound(
    const ExponentSpec& spec, const std::vector<SimpleFunction>& parts,
    double tol) {
  if (parts.empty()) fail_parameter("disjoint sum needs at least one part");
  DerivedScalars s = derive_scalars(spec);
  if (!s.p_plus_finite || *s.p_plus_finite == kInf) {
    fail_precondition("disjoint-sum bound needs a bounded finite-exponent part");
  }

  SimpleFunction sum;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const Term& t : parts[i].terms()) {
      if (resolve(spec, t.ref).exponent == kInf) {
        fail_precondition("disjoint-sum bound: part " + std::to_string(i + 1) +
                          " touches exponent-inf region " + t.ref.display());
      }
    }
    if (!sum.disjoint_from(parts[i])) {
      fail_precondition("disjoint-sum bound: part " + std::to_string(i + 1) +
                        " overlaps an earlier part");
    }
    double ni = luxemburg_norm(spec, parts[i]).norm;
    if (std::abs(ni - 1.0) > 10.0 * tol + 1e-10) {
      fail_precondition("disjoint-sum bound: part " + std::to_string(i + 1) +
                        " is not normalized (norm " + std::to_string(ni) + ")");
    }
    sum = sum.plus(parts[i]);
  }

  DisjointSumReport rep;
  rep.n = parts.size();
  rep.p_plus_finite = *s.p_plus_finite;
  rep.bound = std::pow(static_cast<double>(parts.size()), 1.0 / rep.p_plus_finite);
  rep.actual = luxemburg_norm(spec, sum).norm;
  rep.margin = rep.actual - rep.bound;
  rep.pass = rep.actual >= rep.bound * (1.0 - tol);
  return rep;
}

}  // namespace vlex
