#include "vlex/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "vlex/errors.hpp"
#include "vlex/modular.hpp"
#include "vlex/rng.hpp"
#include "vlex/scalars.hpp"

namespace vlex {

namespace {

// ============================================================================
// Band lookup
// ============================================================================

struct BandMember {
  RegionRef ref;
  double weight = 1.0;
  double exponent = 2.0;
};

// Smallest family index whose exponent lies in (lo, hi], using the closed
// form of each sequence kind; the analytic index is verified (and nudged) by
// scanning a small window, so float error in the inversion cannot mislead.
std::optional<std::uint64_t> family_band_index(const RegionFamily& fam,
                                               double lo, double hi) {
  const ExponentSeq& s = fam.exponents;
  auto in_band = [&](std::uint64_t k) {
    if (!fam.count.contains(k)) return false;
    double p = s.at(k);
    return p > lo && p <= hi;
  };
  auto scan_from = [&](double guess) -> std::optional<std::uint64_t> {
    std::uint64_t base = 1;
    if (guess > 3.0) {
      if (guess > 9.0e18) return std::nullopt;
      base = static_cast<std::uint64_t>(guess) - 2;
    }
    for (std::uint64_t k = base; k < base + 6; ++k)
      if (in_band(k)) return k;
    return std::nullopt;
  };

  switch (s.kind) {
    case ExponentSeq::Kind::Constant:
      return in_band(1) ? std::optional<std::uint64_t>(1) : std::nullopt;
    case ExponentSeq::Kind::HarmonicApproach: {
      // p_k = 1 + a/k^b decreasing; first k with p_k <= hi.
      if (hi >= s.at(1)) return in_band(1) ? std::optional<std::uint64_t>(1)
                                           : std::nullopt;
      if (hi <= 1.0) return std::nullopt;
      return scan_from(std::ceil(std::pow(s.scale / (hi - 1.0), 1.0 / s.power)));
    }
    case ExponentSeq::Kind::GeometricApproach: {
      // p_k = 1 + a r^k decreasing; first k with p_k <= hi.
      if (hi >= s.at(1)) return in_band(1) ? std::optional<std::uint64_t>(1)
                                           : std::nullopt;
      if (hi <= 1.0) return std::nullopt;
      double y = (hi - 1.0) / s.scale;  // need r^k <= y
      return scan_from(std::ceil(std::log(y) / std::log(s.ratio)));
    }
    case ExponentSeq::Kind::PowerGrowth: {
      // p_k = a k^b increasing; first k with p_k > lo.
      if (s.at(1) > lo) return in_band(1) ? std::optional<std::uint64_t>(1)
                                          : std::nullopt;
      if (!is_finite(lo)) return std::nullopt;
      return scan_from(std::floor(std::pow(lo / s.scale, 1.0 / s.power)) + 1.0);
    }
    case ExponentSeq::Kind::PrefixConstant: {
      for (std::uint64_t k = 1; k <= s.prefix.size(); ++k)
        if (in_band(k)) return k;
      std::uint64_t tail = s.prefix.size() + 1;
      if (fam.count.contains(tail) && s.value > lo && s.value <= hi)
        return tail;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<BandMember> find_band_member(const ExponentSpec& spec, double lo,
                                           double hi) {
  for (const Region& r : spec.regions)
    if (r.exponent > lo && r.exponent <= hi)
      return BandMember{RegionRef{r.id, std::nullopt}, r.weight, r.exponent};
  for (const RegionFamily& fam : spec.families)
    if (auto k = family_band_index(fam, lo, hi))
      return BandMember{RegionRef{fam.id, *k}, fam.weight_at(*k),
                        fam.exponent_at(*k)};
  return std::nullopt;
}

// ============================================================================
// Sampling helpers shared by the certificate checks
// ============================================================================

struct Combo {
  SimpleFunction f;
  std::vector<std::pair<std::uint64_t, double>> coeffs;  // (basis index, c)
};

// Random combination of basis vectors with indices in [lo, hi], nonempty.
Combo sample_combo(Rng& rng, const BasisFamily& fam, std::uint64_t lo,
                   std::uint64_t hi, double keep_prob = 0.6) {
  Combo out;
  for (std::uint64_t i = lo; i <= hi; ++i) {
    if (rng.next_unit() >= keep_prob) continue;
    double c = rng.next_sign() * (0.1 + rng.next_unit());
    out.coeffs.emplace_back(i, c);
  }
  if (out.coeffs.empty()) {
    std::uint64_t i = lo + rng.next_below(hi - lo + 1);
    out.coeffs.emplace_back(i, rng.next_sign() * 1.0);
  }
  SimpleFunction f;
  for (const auto& [i, c] : out.coeffs)
    f = f.plus(fam.vectors[i - 1].scaled(c));
  out.f = std::move(f);
  return out;
}

// Rescale a combo so its Luxemburg norm equals `target`.
void set_norm(const ExponentSpec& spec, Combo& combo, double target) {
  double n = luxemburg_norm(spec, combo.f, kDefaultNormTol).norm;
  double scale = target / n;
  combo.f = combo.f.scaled(scale);
  for (auto& [i, c] : combo.coeffs) c *= scale;
}

nlohmann::json coeffs_json(const Combo& combo) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [i, c] : combo.coeffs) arr.push_back({{"n", i}, {"c", c}});
  return arr;
}

void require_band_basis(const BasisFamily& family, const char* what) {
  if (family.band_edges.empty())
    fail_precondition(std::string(what) +
                      " requires a decreasing-band basis (fpp_basis or "
                      "nakano_basis); '" +
                      family.tag + "' carries no band edges");
}

constexpr std::uint64_t kPrimes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                       23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

// ============================================================================
// Sup-norm-like family
// ============================================================================

BasisFamily build_linfty_copy(const ExponentSpec& spec, std::uint64_t n_count,
                              std::uint64_t j_count) {
  spec.validate();
  if (n_count < 1 || n_count > 16)
    fail_parameter("n_count must be in [1, 16], got " +
                   std::to_string(n_count));
  if (j_count < 1 || j_count > 48)
    fail_parameter("j_count must be in [1, 48], got " +
                   std::to_string(j_count));

  DerivedScalars sc = derive_scalars(spec);
  if (!sc.p_plus_finite.has_value() || is_finite(*sc.p_plus_finite))
    fail_precondition(
        "sup-norm embedding needs unbounded finite exponents "
        "(sup over finite exponents must be inf)");

  // The family supplying arbitrarily large finite exponents.
  const RegionFamily* source = nullptr;
  for (const RegionFamily& fam : spec.families)
    if (fam.exponents.kind == ExponentSeq::Kind::PowerGrowth &&
        fam.count.infinite) {
      source = &fam;
      break;
    }
  if (source == nullptr)
    fail_precondition(
        "no infinite family with power-growth exponents found to realize the "
        "required thresholds");

  // Per-level exponent thresholds: large enough that (1 + 1/j)^p > 2^j (so
  // scaling by any factor > 1 eventually blows the modular up), snapped to
  // the smallest family value at or above the target, nondecreasing in j.
  BasisFamily out;
  out.tag = "linfty_copy";
  out.n_count = n_count;
  out.j_count = j_count;
  out.thresholds.reserve(j_count);
  std::uint64_t prev_index = 1;
  for (std::uint64_t j = 1; j <= j_count; ++j) {
    double growth_min =
        std::log(2.0) * static_cast<double>(j) / std::log1p(1.0 / j);
    double target = std::max(growth_min * 1.01, 2000.0 + static_cast<double>(j));
    double guess =
        std::ceil(std::pow(target / source->exponents.scale,
                           1.0 / source->exponents.power));
    std::uint64_t base = guess > 3.0 ? static_cast<std::uint64_t>(guess) - 2 : 1;
    std::uint64_t index = 0;
    for (std::uint64_t k = base; k < base + 8; ++k) {
      if (source->exponents.at(k) >= target) {
        index = k;
        break;
      }
    }
    if (index == 0)
      fail_construction("could not locate a family exponent above " +
                        std::to_string(target));
    index = std::max(index, prev_index);
    prev_index = index;
    double p = source->exponents.at(index);
    if (!(p * std::log1p(1.0 / j) > static_cast<double>(j) * std::log(2.0)))
      fail_construction("growth condition (1+1/j)^p > 2^j unsatisfiable at j=" +
                        std::to_string(j));
    out.thresholds.push_back(p);
  }

  // Synthetic unit-measure cells, one per (n, j), labeled by prime powers.
  out.spec = spec;
  for (std::uint64_t n = 1; n <= n_count; ++n) {
    for (std::uint64_t j = 1; j <= j_count; ++j) {
      std::string id = "linfty.S." + std::to_string(kPrimes[n - 1]) + "^" +
                       std::to_string(j);
      if (spec.find_region(id) != nullptr || spec.find_family(id) != nullptr)
        fail_construction("region id '" + id +
                          "' already exists in the input description");
      Region cell;
      cell.id = id;
      cell.kind = RegionKind::Cell;
      cell.weight = 1.0;
      cell.exponent = out.thresholds[j - 1];
      out.spec.regions.push_back(cell);
      out.prime_powers.emplace_back(kPrimes[n - 1], j);
    }
  }
  out.spec.validate();

  // f_n places mass 2^-(n+1+j) on cell (n, j): value = 2^(-(n+1+j)/p_j).
  for (std::uint64_t n = 1; n <= n_count; ++n) {
    std::vector<Term> terms;
    SupportMeta meta;
    double exact = 0.0;
    for (std::uint64_t j = j_count; j >= 1; --j) {  // smallest mass first
      exact += std::exp2(-static_cast<double>(n + 1 + j));
    }
    for (std::uint64_t j = 1; j <= j_count; ++j) {
      std::string id = "linfty.S." + std::to_string(kPrimes[n - 1]) + "^" +
                       std::to_string(j);
      RegionRef ref{id, std::nullopt};
      double p = out.thresholds[j - 1];
      terms.push_back(Term{ref, std::exp2(-static_cast<double>(n + 1 + j) / p)});
      meta.refs.push_back(ref);
    }
    meta.p_min = out.thresholds.front();
    meta.p_max = out.thresholds.back();
    out.vectors.push_back(SimpleFunction::make(std::move(terms)));
    out.support.push_back(std::move(meta));
    out.exact_modulars.push_back(exact);
  }
  return out;
}

IsometryReport verify_linfty_isometry(const BasisFamily& family,
                                      double rel_tol) {
  if (family.tag != "linfty_copy")
    fail_precondition("isometry verification applies to linfty_copy bases");
  IsometryReport rep;
  const std::uint64_t N = family.n_count, J = family.j_count;

  // (1) exact identity: stored mass equals 2^-(n+1) * (1 - 2^-J) bitwise.
  // Every mass is a power of two and the spread fits one mantissa, so both
  // routes are exact in double arithmetic.
  rep.exact_identity_ok = true;
  double closed_tail = 1.0 - std::exp2(-static_cast<double>(J));
  for (std::uint64_t n = 1; n <= N; ++n) {
    double closed = std::exp2(-static_cast<double>(n + 1)) * closed_tail;
    if (family.exact_modulars[n - 1] != closed) rep.exact_identity_ok = false;
  }

  // (2) the floating modular engine agrees with the exact masses, and
  // (3) every rho(f_n) < 1 certifies || f_n || <= 1 directly.
  rep.float_agree_ok = true;
  rep.unit_ball_ok = true;
  for (std::uint64_t n = 1; n <= N; ++n) {
    double r = rho(family.spec, family.vectors[n - 1]);
    double exact = family.exact_modulars[n - 1];
    double err = std::abs(r - exact) / exact;
    rep.worst_float_rel_err = std::max(rep.worst_float_rel_err, err);
    if (err > rel_tol) rep.float_agree_ok = false;
    if (!(r < 1.0)) rep.unit_ball_ok = false;
  }

  // (4)+(5) truncation ladders on f_1: norms strictly increase toward 1,
  // and rho(1.1 f_1) strictly increases (and stays finite) as levels are
  // added — scaling past the unit ball is felt more strongly at every level.
  for (std::uint64_t j = 4; j < J; j *= 2) rep.ladder_js.push_back(j);
  rep.ladder_js.push_back(J);
  const SimpleFunction& f1 = family.vectors[0];
  const std::vector<RegionRef>& refs = family.support[0].refs;
  for (std::uint64_t jj : rep.ladder_js) {
    std::set<RegionRef> keep(refs.begin(), refs.begin() + jj);
    SimpleFunction trunc =
        f1.filtered([&](const RegionRef& r) { return keep.count(r) > 0; });
    rep.ladder_norms.push_back(
        luxemburg_norm(family.spec, trunc, kDefaultNormTol).norm);
    rep.growth_values.push_back(rho(family.spec, trunc.scaled(1.1)));
  }
  rep.norm_ladder_ok = true;
  rep.growth_ladder_ok = true;
  for (std::size_t i = 0; i < rep.ladder_js.size(); ++i) {
    if (!is_finite(rep.growth_values[i])) rep.growth_ladder_ok = false;
    if (i == 0) continue;
    if (!(rep.ladder_norms[i] > rep.ladder_norms[i - 1]))
      rep.norm_ladder_ok = false;
    if (!(rep.growth_values[i] > rep.growth_values[i - 1]))
      rep.growth_ladder_ok = false;
  }

  // Informational: norm of the disjoint sum f_1 + ... + f_N.
  SimpleFunction sum;
  for (const SimpleFunction& f : family.vectors) sum = sum.plus(f);
  rep.sum_norm = luxemburg_norm(family.spec, sum, kDefaultNormTol).norm;
  return rep;
}

// ============================================================================
// Decreasing-exponent bases
// ============================================================================

BasisFamily build_fpp_basis(const ExponentSpec& spec,
                            const std::vector<double>& edges) {
  spec.validate();
  if (edges.size() < 2)
    fail_parameter("need at least two band edges (N + 1 values for N bands)");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(edges[i] > 1.0) || !is_finite(edges[i]))
      fail_parameter("band edges must be finite and > 1");
    if (i > 0 && !(edges[i] < edges[i - 1]))
      fail_parameter("band edges must be strictly decreasing");
  }
  DerivedScalars sc = derive_scalars(spec);
  if (!sc.p_minus_off_one.has_value() || *sc.p_minus_off_one != 1.0)
    fail_precondition(
        "exponents do not approach 1 from above: inf of exponents over the "
        "p > 1 part is " +
        (sc.p_minus_off_one ? std::to_string(*sc.p_minus_off_one)
                            : std::string("undefined")) +
        ", need 1");

  BasisFamily out;
  out.tag = "fpp_basis";
  out.spec = spec;
  out.band_edges = edges;
  const std::uint64_t N = edges.size() - 1;
  for (std::uint64_t n = 1; n <= N; ++n) {
    auto member = find_band_member(spec, edges[n], edges[n - 1]);
    if (!member)
      fail_construction("no region with exponent in band (" +
                        std::to_string(edges[n]) + ", " +
                        std::to_string(edges[n - 1]) + "] for vector " +
                        std::to_string(n));
    double value = std::pow(member->weight, -1.0 / member->exponent);
    out.vectors.push_back(SimpleFunction::make({Term{member->ref, value}}));
    out.support.push_back(
        SupportMeta{{member->ref}, member->exponent, member->exponent});
  }
  return out;
}

BasisFamily nakano_basis(const ExponentSeq& pseq, std::uint64_t n_count) {
  if (pseq.kind != ExponentSeq::Kind::HarmonicApproach &&
      pseq.kind != ExponentSeq::Kind::GeometricApproach) {
    std::string shape;
    switch (pseq.kind) {
      case ExponentSeq::Kind::Constant:
        shape = "a constant sequence (limit " + std::to_string(pseq.value) +
                ", not 1)";
        break;
      case ExponentSeq::Kind::PowerGrowth:
        shape = "a growing sequence";
        break;
      default:
        shape = "a prefix-constant sequence";
        break;
    }
    fail_precondition(
        "exponent sequence must decrease strictly to 1 (harmonic or geometric "
        "approach); got " +
        shape);
  }
  if (n_count < 1 || n_count > 100000)
    fail_parameter("n_count must be in [1, 100000], got " +
                   std::to_string(n_count));

  BasisFamily out;
  out.tag = "nakano_basis";
  RegionFamily fam;
  fam.id = "nakano";
  fam.kind = RegionKind::Atom;
  fam.weights = WeightSeq::constant(1.0);
  fam.exponents = pseq;
  fam.count = Count::inf();
  out.spec.families.push_back(fam);
  out.spec.validate();

  for (std::uint64_t n = 1; n <= n_count; ++n) {
    RegionRef ref{"nakano", n};
    out.vectors.push_back(SimpleFunction::make({Term{ref, 1.0}}));
    double p = pseq.at(n);
    out.support.push_back(SupportMeta{{ref}, p, p});
  }
  for (std::uint64_t k = 0; k <= n_count; ++k)
    out.band_edges.push_back(pseq.at(k + 1));
  return out;
}

BasisFamily build_standard_basis(const ExponentSpec& spec,
                                 const std::string& family_id,
                                 std::uint64_t n_count) {
  spec.validate();
  const RegionFamily* fam = spec.find_family(family_id);
  if (fam == nullptr)
    fail_reference("unknown family '" + family_id + "'");
  if (n_count < 1 || !fam->count.contains(n_count))
    fail_parameter("family '" + family_id + "' has no member " +
                   std::to_string(n_count));

  BasisFamily out;
  out.tag = "standard_basis";
  out.spec = spec;
  for (std::uint64_t n = 1; n <= n_count; ++n) {
    RegionRef ref{family_id, n};
    double w = fam->weight_at(n);
    double p = fam->exponent_at(n);
    double value = is_finite(p) ? std::pow(w, -1.0 / p) : 1.0;
    out.vectors.push_back(SimpleFunction::make({Term{ref, value}}));
    out.support.push_back(SupportMeta{{ref}, p, p});
  }
  return out;
}

// ============================================================================
// Sampled certificates
// ============================================================================

CertificateReport check_sequential_separation(const BasisFamily& family,
                                              std::uint64_t k,
                                              std::uint64_t samples,
                                              std::uint64_t seed, double tol) {
  require_band_basis(family, "sequential separation");
  const std::uint64_t N = family.vectors.size();
  if (k < 1 || k + 1 > N)
    fail_parameter("k must satisfy 1 <= k <= N-1 = " + std::to_string(N - 1) +
                   ", got " + std::to_string(k));
  if (samples < 1) fail_parameter("samples must be >= 1");
  if (!(tol > 0.0)) fail_parameter("tol must be positive");

  const double edge = family.band_edges[k - 1];
  const double threshold = std::exp2(1.0 / edge);

  CertificateReport rep;
  rep.property = "sequential_separation";
  rep.samples = samples;
  rep.worst_margin = kInf;
  rep.witness = nullptr;

  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::uint64_t m = k + rng.next_below(N - k);  // x on [k, m], block after
    Combo x = sample_combo(rng, family, k, m);
    Combo block = sample_combo(rng, family, m + 1, N);
    set_norm(family.spec, x, 1.0);
    set_norm(family.spec, block, 1.0);
    double value =
        luxemburg_norm(family.spec, x.f.plus(block.f), kDefaultNormTol).norm;
    double margin = value - threshold;
    if (margin < rep.worst_margin) rep.worst_margin = margin;
    if (margin < -tol && rep.witness.is_null()) {
      rep.witness = {{"sample", s},        {"split", m},
                     {"value", value},     {"threshold", threshold},
                     {"x", coeffs_json(x)}, {"block", coeffs_json(block)}};
    }
  }
  rep.pass = rep.worst_margin >= -tol;

  // Threshold ladder across all admissible k: rises toward 2 as the bands
  // tighten around exponent 1.
  nlohmann::json ladder = nlohmann::json::array();
  bool rising = true;
  double prev = 0.0;
  for (std::uint64_t kk = 1; kk + 1 <= N; ++kk) {
    double t = std::exp2(1.0 / family.band_edges[kk - 1]);
    ladder.push_back(t);
    if (kk > 1 && t < prev) rising = false;
    prev = t;
  }
  rep.details = {{"thresholds_by_k", ladder}, {"thresholds_nondecreasing", rising}};
  rep.parameters = {{"k", k},       {"samples", samples}, {"seed", seed},
                    {"tol", tol},   {"band_edge", edge},  {"threshold", threshold}};
  return rep;
}

CertificateReport check_premonotone(const BasisFamily& family,
                                    std::uint64_t samples, std::uint64_t seed,
                                    double tol) {
  const std::uint64_t N = family.vectors.size();
  if (N < 2) fail_precondition("premonotonicity needs at least two vectors");
  if (samples < 1) fail_parameter("samples must be >= 1");
  if (!(tol > 0.0)) fail_parameter("tol must be positive");

  CertificateReport rep;
  rep.property = "premonotone";
  rep.samples = samples;
  rep.worst_margin = kInf;
  rep.witness = nullptr;

  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    Combo x = sample_combo(rng, family, 1, N, 0.7);
    double full = luxemburg_norm(family.spec, x.f, kDefaultNormTol).norm;
    for (std::uint64_t cut = 2; cut <= N; ++cut) {
      Combo tail;
      for (const auto& [i, c] : x.coeffs)
        if (i >= cut) tail.coeffs.emplace_back(i, c);
      if (tail.coeffs.empty()) continue;
      SimpleFunction tf;
      for (const auto& [i, c] : tail.coeffs)
        tf = tf.plus(family.vectors[i - 1].scaled(c));
      double truncated = luxemburg_norm(family.spec, tf, kDefaultNormTol).norm;
      double margin = full - truncated;
      if (margin < rep.worst_margin) rep.worst_margin = margin;
      if (margin < -tol && rep.witness.is_null()) {
        rep.witness = {{"sample", s},
                       {"cut", cut},
                       {"norm", full},
                       {"truncated_norm", truncated},
                       {"x", coeffs_json(x)}};
      }
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  rep.parameters = {{"samples", samples}, {"seed", seed}, {"tol", tol}};
  return rep;
}

CertificateReport check_head_perturbation(const BasisFamily& family,
                                          std::uint64_t k, double r0,
                                          std::uint64_t samples,
                                          std::uint64_t seed, double tol) {
  require_band_basis(family, "head perturbation");
  const std::uint64_t N = family.vectors.size();
  if (k < 1 || k + 1 > N)
    fail_parameter("k must satisfy 1 <= k <= N-1 = " + std::to_string(N - 1) +
                   ", got " + std::to_string(k));
  if (!(r0 > 5.0)) fail_parameter("r0 must exceed 5");
  if (samples < 1) fail_parameter("samples must be >= 1");
  if (!(tol > 0.0)) fail_parameter("tol must be positive");

  const double g = family.band_edges[k];

  CertificateReport rep;
  rep.property = "head_perturbation";
  rep.samples = samples;
  rep.worst_margin = kInf;
  rep.witness = nullptr;

  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    // Head z with ||z|| <= r0, block b with ||b|| >= 1, step 0 < lambda <= 1/r0.
    double znorm = s == 0 ? r0 : r0 * (0.05 + 0.95 * rng.next_unit());
    double bnorm = s == 0 ? 1.0 : 1.0 + 2.0 * rng.next_unit();
    double lambda = s == 0 ? 1.0 / r0 : (1.0 / r0) * (0.001 + 0.999 * rng.next_unit());
    Combo z = sample_combo(rng, family, 1, k);
    Combo b = sample_combo(rng, family, k + 1, N);
    set_norm(family.spec, z, znorm);
    set_norm(family.spec, b, bnorm);
    double lhs = luxemburg_norm(family.spec, b.f.plus(z.f.scaled(lambda)),
                                kDefaultNormTol)
                     .norm;
    double rhs = bnorm + std::pow(lambda, g) * std::pow(znorm, g);
    double margin = rhs - lhs;
    if (margin < rep.worst_margin) rep.worst_margin = margin;
    if (margin < -tol && rep.witness.is_null()) {
      rep.witness = {{"sample", s},     {"lambda", lambda},
                     {"z_norm", znorm}, {"block_norm", bnorm},
                     {"lhs", lhs},      {"rhs", rhs},
                     {"z", coeffs_json(z)}, {"block", coeffs_json(b)}};
    }
  }
  bool samples_ok = rep.worst_margin >= -tol;

  // Perturbation-to-step ratio ladder (lambda r0)^(g-1): must fall strictly
  // toward 0, so the perturbation cost is o(lambda).
  nlohmann::json lambdas = nlohmann::json::array();
  nlohmann::json ratios = nlohmann::json::array();
  bool decreasing = true;
  double prev = kInf;
  double at_1e4 = 0.0;
  for (int m = 1; m <= 6; ++m) {
    double lam = std::pow(10.0, -m);
    double ratio = std::pow(lam * r0, g - 1.0);
    lambdas.push_back(lam);
    ratios.push_back(ratio);
    if (!(ratio < prev)) decreasing = false;
    prev = ratio;
    if (m == 4) at_1e4 = ratio;
  }
  rep.pass = samples_ok && decreasing;
  rep.details = {{"lambda_ladder", lambdas},
                 {"ratio_values", ratios},
                 {"strictly_decreasing", decreasing},
                 {"ratio_at_1e-4", at_1e4},
                 {"ratio_below_0.1_at_1e-4", at_1e4 < 0.1}};
  rep.parameters = {{"k", k},           {"r0", r0},   {"samples", samples},
                    {"seed", seed},     {"tol", tol}, {"band_edge", g}};
  return rep;
}

// ============================================================================
// Asymptotic-l1 coefficient inequality
// ============================================================================

CertificateReport aic_test(const BasisFamily& family,
                           const std::vector<double>& eps,
                           std::uint64_t samples, std::uint64_t seed,
                           double tol) {
  const std::uint64_t N = family.vectors.size();
  if (N < 2) fail_precondition("the coefficient test needs at least two vectors");
  if (eps.size() < N)
    fail_parameter("need one gap value per vector: got " +
                   std::to_string(eps.size()) + ", need " + std::to_string(N));
  for (double e : eps)
    if (!(e >= 0.0 && e < 1.0)) fail_parameter("gap values must lie in [0, 1)");
  if (!(tol > 0.0)) fail_parameter("tol must be positive");

  CertificateReport rep;
  rep.property = "aic_coefficients";
  rep.worst_margin = kInf;
  rep.witness = nullptr;

  auto run_pattern = [&](const Combo& t, const char* kind) {
    double lower = 0.0, upper = 0.0;
    for (const auto& [i, c] : t.coeffs) {
      lower += (1.0 - eps[i - 1]) * std::abs(c);
      upper += std::abs(c);
    }
    double actual = luxemburg_norm(family.spec, t.f, kDefaultNormTol).norm;
    double margin = std::min(actual - lower, upper - actual);
    if (margin < rep.worst_margin) rep.worst_margin = margin;
    if (margin < -tol && rep.witness.is_null()) {
      rep.witness = {{"kind", kind},   {"lower", lower},
                     {"upper", upper}, {"norm", actual},
                     {"t", coeffs_json(t)}};
    }
    rep.samples += 1;
  };

  // Deterministic battery: the head-spike-plus-tail patterns that defeat
  // non-spreading bases, then the flat pattern.
  for (std::uint64_t m = 2; m <= N; ++m) {
    Combo t;
    t.coeffs.emplace_back(1, 1.0 / static_cast<double>(m));
    t.coeffs.emplace_back(m, 1.0);
    t.f = family.vectors[0]
              .scaled(1.0 / static_cast<double>(m))
              .plus(family.vectors[m - 1]);
    run_pattern(t, "head_spike");
  }
  {
    Combo t;
    SimpleFunction f;
    for (std::uint64_t i = 1; i <= N; ++i) {
      t.coeffs.emplace_back(i, 1.0);
      f = f.plus(family.vectors[i - 1]);
    }
    t.f = std::move(f);
    run_pattern(t, "flat");
  }
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s)
    run_pattern(sample_combo(rng, family, 1, N), "random");

  rep.pass = rep.worst_margin >= -tol;
  rep.parameters = {{"samples_random", samples},
                    {"seed", seed},
                    {"tol", tol},
                    {"eps", eps}};
  return rep;
}

double pair_bound_h(double t, double p1) {
  return std::pow(t, p1 - 1.0) * (t - 1.0);
}

double pair_bound_h_inverse(double y, double p1) {
  if (!(y > 0.0) || !is_finite(y)) fail_parameter("h_inverse needs y > 0");
  if (!(p1 >= 1.0) || !is_finite(p1)) fail_parameter("h_inverse needs finite p1 >= 1");
  // h is strictly increasing on [1, inf) with h(1) = 0 and h(1+y) >= y, so
  // [1, 1+y] brackets the root; the returned upper endpoint certifies
  // h(result) >= y.
  double hi = 1.0 + y;
  if (p1 > 1.0) {
    double lo = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * hi; ++i) {
      double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      if (pair_bound_h(mid, p1) >= y)
        hi = mid;
      else
        lo = mid;
    }
  }
  // Rounding in 1.0 + y (or in h itself near the root) can leave h(hi)
  // a few ulps short of y; nudge upward until the certificate holds.
  while (pair_bound_h(hi, p1) < y) hi = std::nextafter(hi, kInf);
  return hi;
}

RefutationReport aic_refutation(
    const BasisFamily& family, const std::vector<std::uint64_t>& n_values,
    const std::function<double(std::uint64_t)>& eps_at, double tol) {
  const std::uint64_t N = family.vectors.size();
  if (N < 2) fail_precondition("the refutation needs at least two vectors");
  if (n_values.empty()) fail_parameter("need at least one n value");
  if (!(tol > 0.0)) fail_parameter("tol must be positive");
  const SupportMeta& head = family.support[0];
  if (head.p_min != head.p_max || !is_finite(head.p_min))
    fail_precondition(
        "the refutation needs a single finite exponent under the first "
        "vector");

  RefutationReport rep;
  rep.p1 = head.p_min;
  rep.certificates_ok = true;
  double eps1 = eps_at(1);

  for (std::uint64_t n : n_values) {
    if (n < 2 || n > N)
      fail_parameter("n values must lie in [2, " + std::to_string(N) +
                     "], got " + std::to_string(n));
    RefutationRow row;
    row.n = n;
    row.bound_s =
        pair_bound_h_inverse(std::pow(static_cast<double>(n), -rep.p1), rep.p1);
    // rho((f_1/n + f_n)/s) <= 1 pins || f_1/n + f_n || <= s exactly; the
    // construction makes this an identity up to rounding.
    SimpleFunction g = family.vectors[0]
                           .scaled(1.0 / static_cast<double>(n))
                           .plus(family.vectors[n - 1])
                           .scaled(1.0 / row.bound_s);
    row.rho_certificate = rho(family.spec, g);
    if (!(row.rho_certificate <= 1.0 + 1e-9)) rep.certificates_ok = false;
    double epsn = eps_at(n);
    row.lower_requirement = (1.0 - eps1) / static_cast<double>(n) + 1.0 - epsn;
    row.violated = row.lower_requirement > row.bound_s + tol;
    if (row.violated && !rep.crossing_n.has_value()) rep.crossing_n = n;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace vlex
