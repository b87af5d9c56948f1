#include "cli.hpp"

#include <cstdlib>
#include <map>
#include <optional>
#include <set>

#include "vlex/classify.hpp"
#include "vlex/constructions.hpp"
#include "vlex/errors.hpp"
#include "vlex/json_io.hpp"
#include "vlex/modular.hpp"
#include "vlex/norm.hpp"
#include "vlex/operators.hpp"
#include "vlex/rng.hpp"

namespace vlex::cli {

namespace {

constexpr const char* kUsage = R"(vlex — a laboratory for variable-exponent sequence and function spaces

usage: vlex <verb> [flags]

verbs:
  classify   --spec S.json                      structural predicates + scalars
  rho        --spec S.json --fn F.json          modular parts
             [--scale a] [--scaling a]          (--scaling checks the two-sided
                                                 scaling bounds at factor a)
  norm       --spec S.json --fn F.json          certified Luxemburg norm
             [--tol t] [--bridge]               (--bridge cross-checks the
                                                 norm/modular comparisons)
  construct  --kind linfty  --spec S.json [--n N] [--j J]
             --kind fpp     --spec S.json --bands L
             --kind nakano  --pseq harmonic:a:b | geometric:a:r [--n N]
             --kind standard --spec S.json --family-id ID [--n N]
                                                materialize a basis family
  certify    --family B.json --check separation|premonotone|head|isometry
             [--k K] [--r0 X] [--samples N] [--seed N] [--tol t]
  aic        --family B.json --mode test|refute
             [--gaps G] [--n-values 2,4,...] [--samples N] [--seed N]
  iterate    --spec S.json --op NAME [--truncate N] [--factor f] [--x0 V]
             [--step t] [--tol t] [--max-steps M]
             averaged fixed-point iteration x <- (1-t) x + t T x; for fixed
             inputs the residual trace is deterministic, so stored traces
             serve as regression anchors
  lipschitz  --spec S.json --op NAME [--truncate N] [--factor f]
             [--samples N] [--radius r] [--seed N]

common flags:
  --out FILE     write the JSON report to FILE instead of stdout
  --tol X        numeric tolerance        (env VLEX_TOL)
  --samples N    randomized sample count  (env VLEX_SAMPLES)
  --seed N       RNG seed (default 12345)

band lists L:      2,1.5,1.25,...  |  geometric:a:r:N  |  harmonic:a:b:N
gap ladders G:     zero  |  inverse_square:c  |  geometric:c:r  |  0.5,0.25,...
operators NAME:    identity, scale, contraction, isometry_translate,
                   shift_retract
coordinate V:      e1  |  zero  |  random  |  1,0.5,...

exit codes: 0 = computed / certified, 1 = a certificate failed (witness in
the report), 2 = invalid input or usage.
)";

// ============================================================================
// Argument handling
// ============================================================================

const std::set<std::string> kSwitches = {"--bridge", "--help"};

struct ArgMap {
  std::string verb;
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  std::string get(const std::string& key,
                  const std::string& fallback = "") const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
  }

  std::string require(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end())
      fail_validation("verb '" + verb + "' requires --" + key);
    return it->second;
  }
};

double parse_double(const std::string& s, const std::string& what) {
  if (s == "inf") return kInf;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    fail_validation(what + ": could not parse '" + s + "' as a number");
  return v;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size() || s[0] == '-')
    fail_validation(what + ": could not parse '" + s + "' as a count");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

ArgMap parse_args(const std::vector<std::string>& args) {
  ArgMap out;
  if (args.empty()) fail_validation("missing verb (try 'vlex help')");
  out.verb = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) != 0)
      fail_validation("unexpected argument '" + a + "'");
    if (kSwitches.count(a) > 0) {
      out.values[a.substr(2)] = "1";
      continue;
    }
    if (i + 1 >= args.size()) fail_validation("flag '" + a + "' needs a value");
    out.values[a.substr(2)] = args[++i];
  }
  return out;
}

// Flag > environment > built-in default.
double resolve_tol(const ArgMap& args, double fallback) {
  if (args.has("tol")) return parse_double(args.get("tol"), "--tol");
  if (const char* env = std::getenv("VLEX_TOL"))
    return parse_double(env, "VLEX_TOL");
  return fallback;
}

std::uint64_t resolve_samples(const ArgMap& args, std::uint64_t fallback) {
  if (args.has("samples")) return parse_uint(args.get("samples"), "--samples");
  if (const char* env = std::getenv("VLEX_SAMPLES"))
    return parse_uint(env, "VLEX_SAMPLES");
  return fallback;
}

std::uint64_t resolve_seed(const ArgMap& args) {
  return args.has("seed") ? parse_uint(args.get("seed"), "--seed") : 12345;
}

void emit(const nlohmann::json& j, const ArgMap& args, std::ostream& out) {
  std::string text = dump_json(j);
  if (args.has("out"))
    write_text_file(args.get("out"), text);
  else
    out << text;
}

ExponentSpec load_spec(const ArgMap& args) {
  return spec_from_json(load_json_file(args.require("spec")));
}

SimpleFunction load_fn(const ArgMap& args) {
  return function_from_json(load_json_file(args.require("fn")));
}

BasisFamily load_family(const ArgMap& args) {
  return basis_family_from_json(load_json_file(args.require("family")));
}

// ============================================================================
// Small parsers for structured flag values
// ============================================================================

std::vector<double> parse_bands(const std::string& s) {
  std::vector<std::string> parts = split(s, ':');
  if (parts.size() == 4 && (parts[0] == "geometric" || parts[0] == "harmonic")) {
    double a = parse_double(parts[1], "--bands");
    double b = parse_double(parts[2], "--bands");
    std::uint64_t n = parse_uint(parts[3], "--bands");
    std::vector<double> edges;
    for (std::uint64_t k = 0; k <= n; ++k) {
      double e = parts[0] == "geometric"
                     ? 1.0 + a * std::pow(b, static_cast<double>(k))
                     : 1.0 + a / std::pow(static_cast<double>(k + 1), b);
      edges.push_back(e);
    }
    return edges;
  }
  std::vector<double> edges;
  for (const std::string& item : split(s, ','))
    edges.push_back(parse_double(item, "--bands"));
  return edges;
}

ExponentSeq parse_pseq(const std::string& s) {
  std::vector<std::string> parts = split(s, ':');
  if (parts.size() == 3 && parts[0] == "harmonic")
    return ExponentSeq::harmonic_approach(parse_double(parts[1], "--pseq"),
                                          parse_double(parts[2], "--pseq"));
  if (parts.size() == 3 && parts[0] == "geometric")
    return ExponentSeq::geometric_approach(parse_double(parts[1], "--pseq"),
                                           parse_double(parts[2], "--pseq"));
  fail_validation(
      "--pseq must be harmonic:scale:power or geometric:scale:ratio, got '" +
      s + "'");
}

// Gap ladder for the coefficient inequality, as a closed form or a list.
std::function<double(std::uint64_t)> parse_gaps(const std::string& s,
                                                std::uint64_t need) {
  std::vector<std::string> parts = split(s, ':');
  if (parts.size() == 1 && parts[0] == "zero")
    return [](std::uint64_t) { return 0.0; };
  if (parts.size() == 2 && parts[0] == "inverse_square") {
    double c = parse_double(parts[1], "--gaps");
    return [c](std::uint64_t n) {
      double e = c / (static_cast<double>(n + 1) * static_cast<double>(n + 1));
      return std::min(e, 0.999);
    };
  }
  if (parts.size() == 3 && parts[0] == "geometric") {
    double c = parse_double(parts[1], "--gaps");
    double r = parse_double(parts[2], "--gaps");
    return [c, r](std::uint64_t n) {
      return std::min(c * std::pow(r, static_cast<double>(n)), 0.999);
    };
  }
  std::vector<double> values;
  for (const std::string& item : split(s, ','))
    values.push_back(parse_double(item, "--gaps"));
  if (values.size() < need)
    fail_validation("--gaps list has " + std::to_string(values.size()) +
                    " entries, need " + std::to_string(need));
  return [values](std::uint64_t n) { return values[n - 1]; };
}

std::vector<double> parse_x0(const std::string& s, std::size_t dim,
                             std::uint64_t seed) {
  std::vector<double> x(dim, 0.0);
  if (s == "zero") return x;
  if (s == "e1") {
    x[0] = 1.0;
    return x;
  }
  if (s == "random") {
    Rng rng(seed);
    for (double& v : x) v = rng.next_in(-1.0, 1.0);
    return x;
  }
  std::vector<std::string> items = split(s, ',');
  if (items.size() > dim)
    fail_validation("--x0 has more coordinates than the context dimension");
  for (std::size_t i = 0; i < items.size(); ++i)
    x[i] = parse_double(items[i], "--x0");
  return x;
}

// ============================================================================
// Verbs
// ============================================================================

int verb_classify(const ArgMap& args, std::ostream& out) {
  ClassificationReport report = classify(load_spec(args));
  emit(classification_to_json(report), args, out);
  return 0;
}

int verb_rho(const ArgMap& args, std::ostream& out) {
  ExponentSpec spec = load_spec(args);
  SimpleFunction f = load_fn(args);
  double scale = args.has("scale")
                     ? parse_double(args.get("scale"), "--scale")
                     : 1.0;
  if (scale != 1.0) f = f.scaled(scale);
  nlohmann::json j = modular_parts_to_json(rho_parts(spec, f));
  int code = 0;
  if (args.has("scaling")) {
    double a = parse_double(args.get("scaling"), "--scaling");
    ScalingBounds bounds =
        scaling_bounds_check(spec, f, a, resolve_tol(args, kRelTol));
    j["scaling"] = scaling_bounds_to_json(bounds);
    code = bounds.pass() ? 0 : 1;
  }
  emit(j, args, out);
  return code;
}

int verb_norm(const ArgMap& args, std::ostream& out) {
  ExponentSpec spec = load_spec(args);
  SimpleFunction f = load_fn(args);
  double tol = resolve_tol(args, kDefaultNormTol);
  NormResult result = luxemburg_norm(spec, f, tol);
  nlohmann::json j = norm_result_to_json(result);
  int code = 0;
  if (args.has("bridge")) {
    BridgeReport bridge = norm_modular_bridge_check(spec, f, 1e-9);
    j["bridge"] = bridge_report_to_json(bridge);
    code = bridge.pass() ? 0 : 1;
  }
  emit(j, args, out);
  return code;
}

int verb_construct(const ArgMap& args, std::ostream& out) {
  std::string kind = args.require("kind");
  BasisFamily family;
  if (kind == "linfty") {
    std::uint64_t n = args.has("n") ? parse_uint(args.get("n"), "--n") : 4;
    std::uint64_t j = args.has("j") ? parse_uint(args.get("j"), "--j") : 32;
    family = build_linfty_copy(load_spec(args), n, j);
  } else if (kind == "fpp") {
    family = build_fpp_basis(load_spec(args), parse_bands(args.require("bands")));
  } else if (kind == "nakano") {
    std::uint64_t n = args.has("n") ? parse_uint(args.get("n"), "--n") : 32;
    family = nakano_basis(parse_pseq(args.require("pseq")), n);
  } else if (kind == "standard") {
    std::uint64_t n = args.has("n") ? parse_uint(args.get("n"), "--n") : 8;
    family = build_standard_basis(load_spec(args), args.require("family-id"), n);
  } else {
    fail_validation("--kind must be linfty, fpp, nakano, or standard, got '" +
                    kind + "'");
  }
  emit(basis_family_to_json(family), args, out);
  return 0;
}

int verb_certify(const ArgMap& args, std::ostream& out) {
  BasisFamily family = load_family(args);
  std::string check = args.require("check");
  std::uint64_t samples = resolve_samples(args, 200);
  std::uint64_t seed = resolve_seed(args);
  double tol = resolve_tol(args, 1e-9);

  if (check == "isometry") {
    IsometryReport rep = verify_linfty_isometry(family, resolve_tol(args, kRelTol));
    emit(isometry_report_to_json(rep), args, out);
    return rep.pass() ? 0 : 1;
  }
  CertificateReport rep;
  if (check == "separation") {
    std::uint64_t k = args.has("k") ? parse_uint(args.get("k"), "--k") : 2;
    rep = check_sequential_separation(family, k, samples, seed, tol);
  } else if (check == "premonotone") {
    rep = check_premonotone(family, samples, seed, tol);
  } else if (check == "head") {
    std::uint64_t k = args.has("k") ? parse_uint(args.get("k"), "--k") : 2;
    double r0 = args.has("r0") ? parse_double(args.get("r0"), "--r0") : 6.0;
    rep = check_head_perturbation(family, k, r0, samples, seed, tol);
  } else {
    fail_validation(
        "--check must be separation, premonotone, head, or isometry, got '" +
        check + "'");
  }
  emit(certificate_to_json(rep), args, out);
  return rep.pass ? 0 : 1;
}

int verb_aic(const ArgMap& args, std::ostream& out) {
  BasisFamily family = load_family(args);
  std::string mode = args.require("mode");
  const std::uint64_t N = family.vectors.size();
  auto gaps = parse_gaps(args.get("gaps", "inverse_square:1"), N);

  if (mode == "test") {
    std::vector<double> eps;
    for (std::uint64_t n = 1; n <= N; ++n) eps.push_back(gaps(n));
    CertificateReport rep =
        aic_test(family, eps, resolve_samples(args, 200), resolve_seed(args),
                 resolve_tol(args, 1e-9));
    emit(certificate_to_json(rep), args, out);
    return rep.pass ? 0 : 1;
  }
  if (mode == "refute") {
    std::vector<std::uint64_t> ns;
    if (args.has("n-values")) {
      for (const std::string& item : split(args.get("n-values"), ','))
        ns.push_back(parse_uint(item, "--n-values"));
    } else {
      for (std::uint64_t n : {2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64})
        if (n <= N) ns.push_back(n);
    }
    RefutationReport rep =
        aic_refutation(family, ns, gaps, resolve_tol(args, 1e-12));
    emit(refutation_to_json(rep), args, out);
    return rep.pass() ? 0 : 1;
  }
  fail_validation("--mode must be test or refute, got '" + mode + "'");
}

BasisContext context_for(const ArgMap& args) {
  std::uint64_t truncate =
      args.has("truncate") ? parse_uint(args.get("truncate"), "--truncate") : 0;
  return BasisContext::from_spec(load_spec(args), truncate);
}

OperatorSpec operator_for(const ArgMap& args) {
  double factor =
      args.has("factor") ? parse_double(args.get("factor"), "--factor") : 0.5;
  return builtin_operator(args.require("op"), factor);
}

int verb_iterate(const ArgMap& args, std::ostream& out) {
  BasisContext ctx = context_for(args);
  OperatorSpec op = operator_for(args);
  double step =
      args.has("step") ? parse_double(args.get("step"), "--step") : 0.5;
  double tol = resolve_tol(args, 1e-10);
  std::uint64_t max_steps = args.has("max-steps")
                                ? parse_uint(args.get("max-steps"), "--max-steps")
                                : 10000;
  std::vector<double> x0 =
      parse_x0(args.get("x0", "e1"), ctx.dim(), resolve_seed(args));
  IterationTrace trace = km_iterate(ctx, op, std::move(x0), step, tol, max_steps);
  emit(iteration_trace_to_json(trace), args, out);
  return trace.converged ? 0 : 1;
}

int verb_lipschitz(const ArgMap& args, std::ostream& out) {
  BasisContext ctx = context_for(args);
  OperatorSpec op = operator_for(args);
  double radius =
      args.has("radius") ? parse_double(args.get("radius"), "--radius") : 1.0;
  LipschitzEstimate est = lipschitz_sample(
      ctx, op, resolve_samples(args, 64), radius, resolve_seed(args));
  emit(lipschitz_to_json(est), args, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  try {
    ArgMap a = parse_args(args);
    if (a.verb == "help" || a.has("help")) {
      out << kUsage;
      return 0;
    }
    if (a.verb == "classify") return verb_classify(a, out);
    if (a.verb == "rho") return verb_rho(a, out);
    if (a.verb == "norm") return verb_norm(a, out);
    if (a.verb == "construct") return verb_construct(a, out);
    if (a.verb == "certify") return verb_certify(a, out);
    if (a.verb == "aic") return verb_aic(a, out);
    if (a.verb == "iterate") return verb_iterate(a, out);
    if (a.verb == "lipschitz") return verb_lipschitz(a, out);
    fail_validation("unknown verb '" + a.verb + "' (try 'vlex help')");
  } catch (const Error& e) {
    err << "error [" << e.kind_name() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace vlex::cli
