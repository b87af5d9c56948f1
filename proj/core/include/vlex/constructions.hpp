#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vlex/norm.hpp"
#include "vlex/simple_function.hpp"
#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// Materialized basis constructions and their certificates
//
// Three builders produce concrete vector families living in a (possibly
// augmented) space description:
//
//   * build_linfty_copy   — finite truncations of a normalized disjoint family
//                           whose span is sup-norm-like: exact modular masses
//                           2^-(n+1) * (1 - 2^-J), norms <= 1 approaching 1.
//   * build_fpp_basis     — unit indicator vectors, one per exponent band
//                           (edge_n, edge_{n-1}], for spaces whose exponents
//                           approach 1 from above.
//   * nakano_basis        — unit atoms with a decreasing exponent sequence.
//
// The sampled checks certify the inequalities the bases are built to satisfy:
// sequential separation, truncation premonotonicity, head-perturbation bounds,
// and the two-sided asymptotic-l1 coefficient inequality with its refutation.
// ============================================================================

struct SupportMeta {
  std::vector<RegionRef> refs;  // in construction order (not sorted)
  double p_min = 1.0;
  double p_max = 1.0;
};

struct BasisFamily {
  std::string tag;  // "linfty_copy" | "fpp_basis" | "nakano_basis"
  ExponentSpec spec;
  std::vector<SimpleFunction> vectors;
  std::vector<SupportMeta> support;

  /// Decreasing-exponent data (fpp/nakano): edges[k] for k = 0..N, so vector
  /// n lives in the band (edges[n], edges[n-1]].
  std::vector<double> band_edges;

  /// Sup-norm-copy data (linfty).
  std::uint64_t n_count = 0, j_count = 0;
  std::vector<double> thresholds;       // per-j support exponents
  std::vector<double> exact_modulars;   // per-n exact modular masses
  std::vector<std::pair<std::uint64_t, std::uint64_t>> prime_powers;
};

BasisFamily build_linfty_copy(const ExponentSpec& spec, std::uint64_t n_count,
                              std::uint64_t j_count);

struct IsometryReport {
  bool exact_identity_ok = false;  // bitwise: masses == 2^-(n+1)*(1-2^-J)
  bool float_agree_ok = false;     // modular engine matches exact masses
  bool unit_ball_ok = false;       // rho(f_n) < 1 certifies ||f_n|| <= 1
  bool norm_ladder_ok = false;     // truncation norms strictly increase
  bool growth_ladder_ok = false;   // rho(1.1 f_1) strictly increases, finite
  double worst_float_rel_err = 0.0;
  double sum_norm = 0.0;           // || f_1 + ... + f_N ||
  std::vector<std::uint64_t> ladder_js;
  std::vector<double> ladder_norms;      // ||f_1|| truncated at each ladder J
  std::vector<double> growth_values;     // rho(1.1 f_1) truncated at each J
  bool pass() const {
    return exact_identity_ok && float_agree_ok && unit_ball_ok &&
           norm_ladder_ok && growth_ladder_ok;
  }
};

IsometryReport verify_linfty_isometry(const BasisFamily& family,
                                      double rel_tol = kRelTol);

/// edges must be strictly decreasing with every value in (1, inf); one unit
/// vector is built per band (edges[n], edges[n-1]], n = 1..N.
BasisFamily build_fpp_basis(const ExponentSpec& spec,
                            const std::vector<double>& edges);

/// Unit-weight atom family with exponents from `pseq` (which must decrease
/// strictly to 1: harmonic or geometric approach, infinite count).
BasisFamily nakano_basis(const ExponentSeq& pseq, std::uint64_t n_count);

/// Normalized member vectors e_1..e_N of an existing family (no band data;
/// usable with check_premonotone / aic_test / aic_refutation).
BasisFamily build_standard_basis(const ExponentSpec& spec,
                                 const std::string& family_id,
                                 std::uint64_t n_count);

struct CertificateReport {
  std::string property;
  bool pass = false;
  std::uint64_t samples = 0;
  double worst_margin = 0.0;     // >= -tol on pass
  nlohmann::json parameters;     // inputs + derived constants
  nlohmann::json details;        // ladders / trends
  nlohmann::json witness;        // first failing sample, null when passing
};

/// || x + b || >= 2^(1 / edges[k-1]) for normalized x supported on indices
/// >= k and normalized blocks b supported strictly after x.
CertificateReport check_sequential_separation(const BasisFamily& family,
                                              std::uint64_t k,
                                              std::uint64_t samples,
                                              std::uint64_t seed,
                                              double tol = 1e-9);

/// Tail truncations never increase the norm: ||Q_k x|| <= ||x|| (Q_k zeroes
/// coordinates before k).
CertificateReport check_premonotone(const BasisFamily& family,
                                    std::uint64_t samples, std::uint64_t seed,
                                    double tol = 1e-9);

/// Head perturbation: for ||z|| <= r0 supported on the first k indices,
/// ||b|| >= 1 supported after k, and 0 < lambda <= 1/r0:
///   || b + lambda z || <= ||b|| + lambda^g ||z||^g,   g = edges[k].
/// Also evaluates the ladder F(lambda)/lambda = (lambda r0)^(g-1) at
/// lambda = 10^-1..10^-6 (strictly decreasing, limit 0).
CertificateReport check_head_perturbation(const BasisFamily& family,
                                          std::uint64_t k, double r0,
                                          std::uint64_t samples,
                                          std::uint64_t seed,
                                          double tol = 1e-9);

/// Two-sided coefficient inequality for the basis (z_n) and gaps eps_n:
///   sum (1 - eps_n) |t_n|  <=  || sum t_n z_n ||  <=  sum |t_n|.
/// Sampled patterns include the adversarial (1/m) e_1 + e_m family; on bases
/// where the lower inequality fails, the report carries the witness.
CertificateReport aic_test(const BasisFamily& family,
                           const std::vector<double>& eps,
                           std::uint64_t samples, std::uint64_t seed,
                           double tol = 1e-9);

/// Strictly increasing h(t) = t^(p1-1) (t-1) on [1, inf); h_inverse solves
/// h(t) = y by certified bisection.
double pair_bound_h(double t, double p1);
double pair_bound_h_inverse(double y, double p1);

struct RefutationRow {
  std::uint64_t n = 0;
  double bound_s = 0.0;       // h_inverse(n^-p1)
  double rho_certificate = 0.0;  // rho((f_1/n + f_n) / bound_s) — must be <= 1
  double lower_requirement = 0.0;  // (1-eps_1)/n + 1 - eps_n
  bool violated = false;           // lower_requirement > bound_s
};

struct RefutationReport {
  double p1 = 0.0;
  std::vector<RefutationRow> rows;
  std::optional<std::uint64_t> crossing_n;  // first violated n
  bool certificates_ok = false;
  bool pass() const { return certificates_ok && crossing_n.has_value(); }
};

/// Certifies || f_1/n + f_n || <= h_inverse(n^-p1) via the exact modular and
/// locates the n where that contradicts the two-sided coefficient inequality
/// for the gap sequence eps (any eps with n*eps_n -> 0 eventually crosses).
RefutationReport aic_refutation(
    const BasisFamily& family, const std::vector<std::uint64_t>& n_values,
    const std::function<double(std::uint64_t)>& eps_at, double tol = 1e-12);

}  // namespace vlex
