#include "vlex/spec.hpp"

#include <cmath>
#include <set>

#include "vlex/errors.hpp"

namespace vlex {

// ===================================================================== weights

WeightSeq WeightSeq::constant(double w) {
  WeightSeq s;
  s.kind = Kind::Constant;
  s.value = w;
  return s;
}

WeightSeq WeightSeq::geometric(double first, double ratio) {
  WeightSeq s;
  s.kind = Kind::Geometric;
  s.value = first;
  s.ratio = ratio;
  return s;
}

WeightSeq WeightSeq::prefix_constant(std::vector<double> prefix, double value) {
  WeightSeq s;
  s.kind = Kind::PrefixConstant;
  s.prefix = std::move(prefix);
  s.value = value;
  return s;
}

double WeightSeq::at(std::uint64_t n) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Geometric:
      return value * std::pow(ratio, static_cast<double>(n - 1));
    case Kind::PrefixConstant:
      return n <= prefix.size() ? prefix[n - 1] : value;
  }
  return value;
}

double WeightSeq::total(std::uint64_t from, Count count) const {
  if (!count.infinite && from > count.value) return 0.0;
  switch (kind) {
    case Kind::Constant: {
      if (count.infinite) return kInf;
      return value * static_cast<double>(count.value - from + 1);
    }
    case Kind::Geometric: {
      // sum_{n=from..N} value * ratio^(n-1)
      double head = value * std::pow(ratio, static_cast<double>(from - 1));
      if (ratio == 1.0) {
        return count.infinite
                   ? kInf
                   : head * static_cast<double>(count.value - from + 1);
      }
      if (count.infinite) {
        return ratio < 1.0 ? head / (1.0 - ratio) : kInf;
      }
      double terms = static_cast<double>(count.value - from + 1);
      return head * (1.0 - std::pow(ratio, terms)) / (1.0 - ratio);
    }
    case Kind::PrefixConstant: {
      double sum = 0.0;
      for (std::uint64_t n = from; n <= prefix.size(); ++n) {
        if (!count.contains(n)) return sum;
        sum += prefix[n - 1];
      }
      std::uint64_t tail_from = std::max<std::uint64_t>(from, prefix.size() + 1);
      if (count.infinite) return kInf;
      if (tail_from <= count.value) {
        sum += value * static_cast<double>(count.value - tail_from + 1);
      }
      return sum;
    }
  }
  return 0.0;
}

// =================================================================== exponents

ExponentSeq ExponentSeq::constant(double p) {
  ExponentSeq s;
  s.kind = Kind::Constant;
  s.value = p;
  return s;
}

ExponentSeq ExponentSeq::harmonic_approach(double scale, double power) {
  ExponentSeq s;
  s.kind = Kind::HarmonicApproach;
  s.scale = scale;
  s.power = power;
  return s;
}

ExponentSeq ExponentSeq::geometric_approach(double scale, double ratio) {
  ExponentSeq s;
  s.kind = Kind::GeometricApproach;
  s.scale = scale;
  s.ratio = ratio;
  return s;
}

ExponentSeq ExponentSeq::power_growth(double scale, double power) {
  ExponentSeq s;
  s.kind = Kind::PowerGrowth;
  s.scale = scale;
  s.power = power;
  return s;
}

ExponentSeq ExponentSeq::prefix_constant(std::vector<double> prefix,
                                         double value) {
  ExponentSeq s;
  s.kind = Kind::PrefixConstant;
  s.prefix = std::move(prefix);
  s.value = value;
  return s;
}

double ExponentSeq::at(std::uint64_t n) const {
  double dn = static_cast<double>(n);
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::HarmonicApproach:
      return 1.0 + scale / std::pow(dn, power);
    case Kind::GeometricApproach:
      return 1.0 + scale * std::pow(ratio, dn);
    case Kind::PowerGrowth:
      return scale * std::pow(dn, power);
    case Kind::PrefixConstant:
      return n <= prefix.size() ? prefix[n - 1] : value;
  }
  return value;
}

bool ExponentSeq::decreases_to_one(Count count) const {
  if (!count.infinite) return false;  // a finite sequence has no limit to take
  switch (kind) {
    case Kind::HarmonicApproach:
    case Kind::GeometricApproach:
      return true;  // 1 + positive decreasing term, limit 1, all members > 1
    default:
      return false;
  }
}

// ==================================================================== families

double RegionFamily::weight_at(std::uint64_t n) const {
  if (n == 0 || !count.contains(n)) {
    fail_reference("family '" + id + "': member index " + std::to_string(n) +
                   " out of range");
  }
  return weights.at(n);
}

double RegionFamily::exponent_at(std::uint64_t n) const {
  if (n == 0 || !count.contains(n)) {
    fail_reference("family '" + id + "': member index " + std::to_string(n) +
                   " out of range");
  }
  return exponents.at(n);
}

// ================================================================== validation

namespace {

void check_weight_value(const std::string& where, double w) {
  if (!(w > 0.0) || !is_finite(w)) {
    fail_validation(where + ": weight must be strictly positive and finite, got " +
                    std::to_string(w));
  }
}

void check_exponent_value(const std::string& where, double p) {
  if (std::isnan(p) || p < 1.0) {
    fail_validation(where + ": exponent must lie in [1, inf], got " +
                    std::to_string(p));
  }
}

void check_weight_seq(const std::string& where, const WeightSeq& w) {
  switch (w.kind) {
    case WeightSeq::Kind::Constant:
      check_weight_value(where, w.value);
      break;
    case WeightSeq::Kind::Geometric:
      check_weight_value(where + " (first)", w.value);
      if (!(w.ratio > 0.0) || !is_finite(w.ratio)) {
        fail_validation(where + ": geometric weight ratio must be in (0, inf)");
      }
      break;
    case WeightSeq::Kind::PrefixConstant:
      for (double v : w.prefix) check_weight_value(where + " (prefix)", v);
      check_weight_value(where + " (tail)", w.value);
      break;
  }
}

void check_exponent_seq(const std::string& where, const ExponentSeq& e) {
  switch (e.kind) {
    case ExponentSeq::Kind::Constant:
      check_exponent_value(where, e.value);
      break;
    case ExponentSeq::Kind::HarmonicApproach:
      if (!(e.scale > 0.0) || !is_finite(e.scale)) {
        fail_validation(where + ": harmonic_approach scale must be in (0, inf)");
      }
      if (!(e.power > 0.0) || !is_finite(e.power)) {
        fail_validation(where + ": harmonic_approach power must be in (0, inf)");
      }
      break;
    case ExponentSeq::Kind::GeometricApproach:
      if (!(e.scale > 0.0) || !is_finite(e.scale)) {
        fail_validation(where + ": geometric_approach scale must be in (0, inf)");
      }
      if (!(e.ratio > 0.0 && e.ratio < 1.0)) {
        fail_validation(where + ": geometric_approach ratio must be in (0, 1)");
      }
      break;
    case ExponentSeq::Kind::PowerGrowth:
      if (!(e.scale >= 1.0) || !is_finite(e.scale)) {
        fail_validation(where + ": power_growth scale must be >= 1 (member 1 "
                                "would fall below exponent 1 otherwise)");
      }
      if (!(e.power > 0.0) || !is_finite(e.power)) {
        fail_validation(where + ": power_growth power must be in (0, inf)");
      }
      break;
    case ExponentSeq::Kind::PrefixConstant:
      for (double v : e.prefix) check_exponent_value(where + " (prefix)", v);
      check_exponent_value(where + " (tail)", e.value);
      break;
  }
}

}  // namespace

void ExponentSpec::validate() const {
  if (regions.empty() && families.empty()) {
    fail_validation("spec describes an empty space (no regions, no families)");
  }
  std::set<std::string> ids;
  auto claim_id = [&ids](const std::string& id) {
    if (id.empty()) fail_validation("empty id");
    if (!ids.insert(id).second) fail_validation("duplicate id '" + id + "'");
  };
  for (const Region& r : regions) {
    claim_id(r.id);
    check_weight_value("region '" + r.id + "'", r.weight);
    check_exponent_value("region '" + r.id + "'", r.exponent);
  }
  for (const RegionFamily& f : families) {
    claim_id(f.id);
    const std::string where = "family '" + f.id + "'";
    if (f.count.is_zero()) fail_validation(where + ": count must be >= 1");
    if (!f.count.infinite) {
      if (f.weights.kind == WeightSeq::Kind::PrefixConstant &&
          f.weights.prefix.size() > f.count.value) {
        fail_validation(where + ": weight prefix longer than member count");
      }
      if (f.exponents.kind == ExponentSeq::Kind::PrefixConstant &&
          f.exponents.prefix.size() > f.count.value) {
        fail_validation(where + ": exponent prefix longer than member count");
      }
    }
    check_weight_seq(where, f.weights);
    check_exponent_seq(where, f.exponents);
  }
}

const Region* ExponentSpec::find_region(const std::string& id) const {
  for (const Region& r : regions) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const RegionFamily* ExponentSpec::find_family(const std::string& id) const {
  for (const RegionFamily& f : families) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

}  // namespace vlex
