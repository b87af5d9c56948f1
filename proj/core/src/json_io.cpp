#include "vlex/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "vlex/errors.hpp"
#include "vlex/extended.hpp"

namespace vlex {

namespace {

using nlohmann::json;

// ============================================================================
// Strict field access
// ============================================================================

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
  if (!j.is_object()) fail_validation(what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) fail_validation(what + ": unknown field '" + key + "'");
  }
}

const json& field(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) fail_validation(what + ": missing field '" + key + "'");
  return *it;
}

std::string get_string(const json& j, const char* key,
                       const std::string& what) {
  const json& v = field(j, key, what);
  if (!v.is_string())
    fail_validation(what + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t get_uint(const json& j, const char* key,
                       const std::string& what) {
  const json& v = field(j, key, what);
  if (!v.is_number_unsigned() && !(v.is_number_integer() &&
                                   v.get<std::int64_t>() >= 0))
    fail_validation(what + ": field '" + key +
                    "' must be a nonnegative integer");
  return v.get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key, const std::string& what) {
  const json& v = field(j, key, what);
  if (!v.is_boolean())
    fail_validation(what + ": field '" + key + "' must be a boolean");
  return v.get<bool>();
}

double get_double(const json& j, const char* key, const std::string& what) {
  return decode_double(field(j, key, what),
                       what + ": field '" + key + "'");
}

std::vector<double> decode_double_array(const json& j,
                                        const std::string& what) {
  if (!j.is_array()) fail_validation(what + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& v : j) out.push_back(decode_double(v, what + " entry"));
  return out;
}

json encode_double_array(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(encode_double(x));
  return arr;
}

json encode_opt(const std::optional<double>& v) {
  return v.has_value() ? encode_double(*v) : json(nullptr);
}

// ============================================================================
// Region references
// ============================================================================

json ref_to_json(const RegionRef& ref) {
  if (ref.index.has_value())
    return json{{"family", ref.id}, {"index", *ref.index}};
  return json{{"region", ref.id}};
}

RegionRef ref_from_json(const json& j, const std::string& what) {
  if (!j.is_object()) fail_validation(what + " must be an object");
  if (j.contains("family")) {
    check_keys(j, {"family", "index", "value"}, what);
    return RegionRef{get_string(j, "family", what), get_uint(j, "index", what)};
  }
  check_keys(j, {"region", "value"}, what);
  return RegionRef{get_string(j, "region", what), std::nullopt};
}

const char* kind_name(RegionKind k) {
  return k == RegionKind::Atom ? "atom" : "cell";
}

RegionKind kind_from(const std::string& s, const std::string& what) {
  if (s == "atom") return RegionKind::Atom;
  if (s == "cell") return RegionKind::Cell;
  fail_validation(what + ": kind must be 'atom' or 'cell', got '" + s + "'");
}

// ============================================================================
// Weight / exponent sequences
// ============================================================================

json weights_to_json(const WeightSeq& w) {
  switch (w.kind) {
    case WeightSeq::Kind::Constant:
      return json{{"kind", "constant"}, {"value", encode_double(w.value)}};
    case WeightSeq::Kind::Geometric:
      return json{{"kind", "geometric"},
                  {"first", encode_double(w.value)},
                  {"ratio", encode_double(w.ratio)}};
    case WeightSeq::Kind::PrefixConstant:
      return json{{"kind", "prefix_constant"},
                  {"prefix", encode_double_array(w.prefix)},
                  {"constant", encode_double(w.value)}};
  }
  fail_validation("unhandled weight sequence kind");
}

WeightSeq weights_from_json(const json& j, const std::string& what) {
  std::string kind = get_string(j, "kind", what);
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, what);
    return WeightSeq::constant(get_double(j, "value", what));
  }
  if (kind == "geometric") {
    check_keys(j, {"kind", "first", "ratio"}, what);
    return WeightSeq::geometric(get_double(j, "first", what),
                                get_double(j, "ratio", what));
  }
  if (kind == "prefix_constant") {
    check_keys(j, {"kind", "prefix", "constant"}, what);
    return WeightSeq::prefix_constant(
        decode_double_array(field(j, "prefix", what), what + ".prefix"),
        get_double(j, "constant", what));
  }
  fail_validation(what + ": unknown weight sequence kind '" + kind + "'");
}

json exponents_to_json(const ExponentSeq& e) {
  switch (e.kind) {
    case ExponentSeq::Kind::Constant:
      return json{{"kind", "constant"}, {"value", encode_double(e.value)}};
    case ExponentSeq::Kind::HarmonicApproach:
      return json{{"kind", "harmonic_approach"},
                  {"scale", encode_double(e.scale)},
                  {"power", encode_double(e.power)}};
    case ExponentSeq::Kind::GeometricApproach:
      return json{{"kind", "geometric_approach"},
                  {"scale", encode_double(e.scale)},
                  {"ratio", encode_double(e.ratio)}};
    case ExponentSeq::Kind::PowerGrowth:
      return json{{"kind", "power_growth"},
                  {"scale", encode_double(e.scale)},
                  {"power", encode_double(e.power)}};
    case ExponentSeq::Kind::PrefixConstant:
      return json{{"kind", "prefix_constant"},
                  {"prefix", encode_double_array(e.prefix)},
                  {"constant", encode_double(e.value)}};
  }
  fail_validation("unhandled exponent sequence kind");
}

ExponentSeq exponents_from_json(const json& j, const std::string& what) {
  std::string kind = get_string(j, "kind", what);
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, what);
    return ExponentSeq::constant(get_double(j, "value", what));
  }
  if (kind == "harmonic_approach") {
    check_keys(j, {"kind", "scale", "power"}, what);
    return ExponentSeq::harmonic_approach(get_double(j, "scale", what),
                                          get_double(j, "power", what));
  }
  if (kind == "geometric_approach") {
    check_keys(j, {"kind", "scale", "ratio"}, what);
    return ExponentSeq::geometric_approach(get_double(j, "scale", what),
                                           get_double(j, "ratio", what));
  }
  if (kind == "power_growth") {
    check_keys(j, {"kind", "scale", "power"}, what);
    return ExponentSeq::power_growth(get_double(j, "scale", what),
                                     get_double(j, "power", what));
  }
  if (kind == "prefix_constant") {
    check_keys(j, {"kind", "prefix", "constant"}, what);
    return ExponentSeq::prefix_constant(
        decode_double_array(field(j, "prefix", what), what + ".prefix"),
        get_double(j, "constant", what));
  }
  fail_validation(what + ": unknown exponent sequence kind '" + kind + "'");
}

}  // namespace

// ============================================================================
// Scalars
// ============================================================================

json encode_double(double v) {
  if (std::isnan(v)) fail_validation("cannot serialize NaN");
  if (v == kInf) return json("inf");
  if (v == -kInf) return json("-inf");
  return json(v);
}

double decode_double(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    fail_validation(what + ": expected a number or \"inf\", got '" + s + "'");
  }
  fail_validation(what + ": expected a number or \"inf\"");
}

json count_to_json(const Count& c) {
  return c.infinite ? json("inf") : json(c.value);
}

Count count_from_json(const json& j, const std::string& what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Count::inf();
    fail_validation(what + ": expected a count or \"inf\"");
  }
  if (j.is_number_unsigned() ||
      (j.is_number_integer() && j.get<std::int64_t>() >= 0))
    return Count::finite(j.get<std::uint64_t>());
  fail_validation(what + ": expected a nonnegative count or \"inf\"");
}

// ============================================================================
// Space description and simple functions
// ============================================================================

json spec_to_json(const ExponentSpec& spec) {
  json regions = json::array();
  for (const Region& r : spec.regions)
    regions.push_back(json{{"id", r.id},
                           {"kind", kind_name(r.kind)},
                           {"weight", encode_double(r.weight)},
                           {"exponent", encode_double(r.exponent)}});
  json families = json::array();
  for (const RegionFamily& f : spec.families)
    families.push_back(json{{"id", f.id},
                            {"kind", kind_name(f.kind)},
                            {"count", count_to_json(f.count)},
                            {"weights", weights_to_json(f.weights)},
                            {"exponents", exponents_to_json(f.exponents)}});
  return json{{"regions", regions}, {"families", families}};
}

ExponentSpec spec_from_json(const json& j) {
  check_keys(j, {"regions", "families"}, "space description");
  ExponentSpec spec;
  if (j.contains("regions")) {
    const json& regions = j.at("regions");
    if (!regions.is_array()) fail_validation("'regions' must be an array");
    for (const json& r : regions) {
      check_keys(r, {"id", "kind", "weight", "exponent"}, "region");
      Region region;
      region.id = get_string(r, "id", "region");
      region.kind = kind_from(get_string(r, "kind", "region"), "region");
      region.weight = r.contains("weight") ? get_double(r, "weight", "region")
                                           : 1.0;
      region.exponent = get_double(r, "exponent", "region");
      spec.regions.push_back(std::move(region));
    }
  }
  if (j.contains("families")) {
    const json& families = j.at("families");
    if (!families.is_array()) fail_validation("'families' must be an array");
    for (const json& f : families) {
      check_keys(f, {"id", "kind", "count", "weights", "exponents"}, "family");
      RegionFamily fam;
      fam.id = get_string(f, "id", "family");
      fam.kind = kind_from(get_string(f, "kind", "family"), "family");
      fam.count = count_from_json(field(f, "count", "family"),
                                  "family '" + fam.id + "' count");
      fam.weights = f.contains("weights")
                        ? weights_from_json(f.at("weights"),
                                            "family '" + fam.id + "' weights")
                        : WeightSeq::constant(1.0);
      fam.exponents = exponents_from_json(
          field(f, "exponents", "family"), "family '" + fam.id + "' exponents");
      spec.families.push_back(std::move(fam));
    }
  }
  spec.validate();
  return spec;
}

json function_to_json(const SimpleFunction& f) {
  json terms = json::array();
  for (const Term& t : f.terms()) {
    json entry = ref_to_json(t.ref);
    entry["value"] = encode_double(t.value);
    terms.push_back(std::move(entry));
  }
  return json{{"terms", terms}};
}

SimpleFunction function_from_json(const json& j) {
  check_keys(j, {"terms"}, "function");
  const json& terms = field(j, "terms", "function");
  if (!terms.is_array()) fail_validation("'terms' must be an array");
  std::vector<Term> out;
  for (const json& t : terms) {
    RegionRef ref = ref_from_json(t, "term");
    out.push_back(Term{std::move(ref), get_double(t, "value", "term")});
  }
  return SimpleFunction::make(std::move(out));
}

// ============================================================================
// Reports
// ============================================================================

json scalars_to_json(const DerivedScalars& s) {
  json one_infty{
      {"atoms_p1", count_to_json(s.one_infty.atoms_p1)},
      {"atoms_pinf", count_to_json(s.one_infty.atoms_pinf)},
      {"cell_measure_p1", encode_double(s.one_infty.cell_measure_p1)},
      {"cell_measure_pinf", encode_double(s.one_infty.cell_measure_pinf)}};
  return json{{"p_minus", encode_double(s.p_minus)},
              {"p_minus_attained", s.p_minus_attained},
              {"p_plus", encode_double(s.p_plus)},
              {"p_plus_attained", s.p_plus_attained},
              {"p_plus_finite", encode_opt(s.p_plus_finite)},
              {"p_minus_off_one", encode_opt(s.p_minus_off_one)},
              {"p_minus_star", encode_opt(s.p_minus_star)},
              {"p_plus_star", encode_opt(s.p_plus_star)},
              {"one_infty", one_infty}};
}

json classification_to_json(const ClassificationReport& r) {
  json predicates{
      {"delta2", r.delta2},
      {"order_continuous", r.order_continuous},
      {"uniformly_convex_component", r.uniformly_convex_component},
      {"reflexive", r.reflexive},
      {"w_fpp", r.w_fpp},
      {"isometric_linfty", r.isometric_linfty},
      {"isometric_l1", r.isometric_l1},
      {"aic_l1", r.aic_l1},
      {"hereditary_l1_fpp_subspace", r.hereditary_l1_fpp_subspace},
      {"reflexive_subspaces_have_fpp", r.reflexive_subspaces_have_fpp}};
  json witnesses = json::object();
  for (const auto& [key, text] : r.witnesses) witnesses[key] = text;
  return json{{"scalars", scalars_to_json(r.scalars)},
              {"predicates", predicates},
              {"witnesses", witnesses}};
}

json norm_result_to_json(const NormResult& r) {
  const char* boundary = "interior";
  if (r.boundary == NormResult::Boundary::SupPartDominated)
    boundary = "sup_part_dominated";
  else if (r.boundary == NormResult::Boundary::ZeroFunction)
    boundary = "zero_function";
  return json{{"norm", encode_double(r.norm)},
              {"iterations", r.iterations},
              {"bracket", json::array({encode_double(r.bracket_lo),
                                       encode_double(r.bracket_hi)})},
              {"residual", encode_double(r.residual)},
              {"boundary", boundary}};
}

json modular_parts_to_json(const ModularParts& p) {
  return json{{"finite_part", encode_double(p.finite_part)},
              {"sup_part", encode_double(p.sup_part)},
              {"total", encode_double(p.total())}};
}

json scaling_bounds_to_json(const ScalingBounds& b) {
  return json{{"a", encode_double(b.a)},
              {"p_plus_finite", encode_double(b.p_plus_finite)},
              {"rho_f", encode_double(b.rho_f)},
              {"rho_af", encode_double(b.rho_af)},
              {"lower", encode_double(b.lower)},
              {"upper", encode_double(b.upper)},
              {"lower_ok", b.lower_ok},
              {"upper_ok", b.upper_ok},
              {"pass", b.pass()}};
}

json bridge_report_to_json(const BridgeReport& r) {
  return json{{"norm", encode_double(r.norm)},
              {"rho_f", encode_double(r.rho_f)},
              {"rho_at_norm", encode_double(r.rho_at_norm)},
              {"tol", encode_double(r.tol)},
              {"tol_prime", encode_double(r.tol_prime)},
              {"unit_ball_ok", r.unit_ball_ok},
              {"comparison_ok", r.comparison_ok},
              {"near_one_forward", r.near_one_forward},
              {"near_one_reverse", r.near_one_reverse},
              {"pass", r.pass()}};
}

json disjoint_sum_report_to_json(const DisjointSumReport& r) {
  return json{{"n", r.n},
              {"p_plus_finite", encode_double(r.p_plus_finite)},
              {"bound", encode_double(r.bound)},
              {"actual", encode_double(r.actual)},
              {"margin", encode_double(r.margin)},
              {"pass", r.pass}};
}

// ============================================================================
// Bases and certificates
// ============================================================================

json basis_family_to_json(const BasisFamily& f) {
  json vectors = json::array();
  for (const SimpleFunction& v : f.vectors) vectors.push_back(function_to_json(v));
  json support = json::array();
  for (const SupportMeta& m : f.support) {
    json refs = json::array();
    for (const RegionRef& r : m.refs) refs.push_back(ref_to_json(r));
    support.push_back(json{{"refs", refs},
                           {"p_min", encode_double(m.p_min)},
                           {"p_max", encode_double(m.p_max)}});
  }
  json primes = json::array();
  for (const auto& [r, j] : f.prime_powers)
    primes.push_back(json::array({r, j}));
  return json{{"tag", f.tag},
              {"spec", spec_to_json(f.spec)},
              {"vectors", vectors},
              {"support", support},
              {"band_edges", encode_double_array(f.band_edges)},
              {"n_count", f.n_count},
              {"j_count", f.j_count},
              {"thresholds", encode_double_array(f.thresholds)},
              {"exact_modulars", encode_double_array(f.exact_modulars)},
              {"prime_powers", primes}};
}

BasisFamily basis_family_from_json(const json& j) {
  check_keys(j,
             {"tag", "spec", "vectors", "support", "band_edges", "n_count",
              "j_count", "thresholds", "exact_modulars", "prime_powers"},
             "basis family");
  BasisFamily f;
  f.tag = get_string(j, "tag", "basis family");
  f.spec = spec_from_json(field(j, "spec", "basis family"));
  for (const json& v : field(j, "vectors", "basis family"))
    f.vectors.push_back(function_from_json(v));
  for (const json& m : field(j, "support", "basis family")) {
    check_keys(m, {"refs", "p_min", "p_max"}, "support");
    SupportMeta meta;
    for (const json& r : field(m, "refs", "support"))
      meta.refs.push_back(ref_from_json(r, "support ref"));
    meta.p_min = get_double(m, "p_min", "support");
    meta.p_max = get_double(m, "p_max", "support");
    f.support.push_back(std::move(meta));
  }
  f.band_edges = decode_double_array(field(j, "band_edges", "basis family"),
                                     "band_edges");
  f.n_count = get_uint(j, "n_count", "basis family");
  f.j_count = get_uint(j, "j_count", "basis family");
  f.thresholds = decode_double_array(field(j, "thresholds", "basis family"),
                                     "thresholds");
  f.exact_modulars = decode_double_array(
      field(j, "exact_modulars", "basis family"), "exact_modulars");
  for (const json& p : field(j, "prime_powers", "basis family")) {
    if (!p.is_array() || p.size() != 2)
      fail_validation("prime_powers entries must be [base, level] pairs");
    f.prime_powers.emplace_back(p.at(0).get<std::uint64_t>(),
                                p.at(1).get<std::uint64_t>());
  }
  if (f.vectors.size() != f.support.size())
    fail_validation("basis family: vectors and support differ in length");
  return f;
}

json certificate_to_json(const CertificateReport& r) {
  return json{{"property", r.property},
              {"pass", r.pass},
              {"samples", r.samples},
              {"worst_margin", encode_double(r.worst_margin)},
              {"parameters", r.parameters},
              {"details", r.details},
              {"witness", r.witness}};
}

json isometry_report_to_json(const IsometryReport& r) {
  json js = json::array();
  for (std::uint64_t v : r.ladder_js) js.push_back(v);
  return json{{"exact_identity_ok", r.exact_identity_ok},
              {"float_agree_ok", r.float_agree_ok},
              {"unit_ball_ok", r.unit_ball_ok},
              {"norm_ladder_ok", r.norm_ladder_ok},
              {"growth_ladder_ok", r.growth_ladder_ok},
              {"worst_float_rel_err", encode_double(r.worst_float_rel_err)},
              {"sum_norm", encode_double(r.sum_norm)},
              {"ladder_js", js},
              {"ladder_norms", encode_double_array(r.ladder_norms)},
              {"growth_values", encode_double_array(r.growth_values)},
              {"pass", r.pass()}};
}

json refutation_to_json(const RefutationReport& r) {
  json rows = json::array();
  for (const RefutationRow& row : r.rows)
    rows.push_back(json{{"n", row.n},
                        {"bound_s", encode_double(row.bound_s)},
                        {"rho_certificate", encode_double(row.rho_certificate)},
                        {"lower_requirement",
                         encode_double(row.lower_requirement)},
                        {"violated", row.violated}});
  return json{{"p1", encode_double(r.p1)},
              {"rows", rows},
              {"crossing_n",
               r.crossing_n ? json(*r.crossing_n) : json(nullptr)},
              {"certificates_ok", r.certificates_ok},
              {"pass", r.pass()}};
}

json iteration_trace_to_json(const IterationTrace& t) {
  return json{{"step", encode_double(t.step)},
              {"steps", t.steps},
              {"converged", t.converged},
              {"residuals", encode_double_array(t.residuals)},
              {"final", encode_double_array(t.final_x)}};
}

json lipschitz_to_json(const LipschitzEstimate& e) {
  return json{{"samples", e.samples},
              {"used", e.used},
              {"radius", encode_double(e.radius)},
              {"max_ratio", encode_double(e.max_ratio)},
              {"classification", e.classification}};
}

// ============================================================================
// Deterministic rendering and file I/O
// ============================================================================

namespace {

std::string format_double(double v) {
  if (!is_finite(v)) fail_validation("cannot render a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void dump_rec(const json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::null:
      out += "null";
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::string:
      out += j.dump();
      return;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const json& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_rec(v, out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + json(key).dump() + ": ";
        dump_rec(value, out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    default:
      fail_validation("cannot render this JSON value");
  }
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("could not open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail_io("could not parse '" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_io("could not open '" + path + "' for writing");
  out << content;
  if (!out) fail_io("failed while writing '" + path + "'");
}

}  // namespace vlex
