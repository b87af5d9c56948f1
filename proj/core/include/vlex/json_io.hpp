#pragma once

#include <string>

#include <json.hpp>

#include "vlex/classify.hpp"
#include "vlex/constructions.hpp"
#include "vlex/modular.hpp"
#include "vlex/norm.hpp"
#include "vlex/operators.hpp"
#include "vlex/simple_function.hpp"
#include "vlex/spec.hpp"

namespace vlex {

// ============================================================================
// JSON encoding
//
// Infinite values are carried as the strings "inf" / "-inf"; every other
// number is finite. dump_json renders floats with 17 significant digits and
// keys in sorted order, so parse -> serialize -> parse is value-exact and
// serialize is byte-deterministic.
// ============================================================================

nlohmann::json encode_double(double v);
double decode_double(const nlohmann::json& j, const std::string& what);

nlohmann::json count_to_json(const Count& c);
Count count_from_json(const nlohmann::json& j, const std::string& what);

nlohmann::json spec_to_json(const ExponentSpec& spec);
ExponentSpec spec_from_json(const nlohmann::json& j);

nlohmann::json function_to_json(const SimpleFunction& f);
SimpleFunction function_from_json(const nlohmann::json& j);

nlohmann::json scalars_to_json(const DerivedScalars& s);
nlohmann::json classification_to_json(const ClassificationReport& r);

nlohmann::json norm_result_to_json(const NormResult& r);
nlohmann::json modular_parts_to_json(const ModularParts& p);
nlohmann::json scaling_bounds_to_json(const ScalingBounds& b);
nlohmann::json bridge_report_to_json(const BridgeReport& r);
nlohmann::json disjoint_sum_report_to_json(const DisjointSumReport& r);

nlohmann::json basis_family_to_json(const BasisFamily& f);
BasisFamily basis_family_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const CertificateReport& r);
nlohmann::json isometry_report_to_json(const IsometryReport& r);
nlohmann::json refutation_to_json(const RefutationReport& r);

nlohmann::json iteration_trace_to_json(const IterationTrace& t);
nlohmann::json lipschitz_to_json(const LipschitzEstimate& e);

/// Deterministic pretty printer (2-space indent, sorted keys, %.17g floats,
/// trailing newline).
std::string dump_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace vlex
