#include "vlex/simple_function.hpp"

#include <algorithm>
#include <cmath>

#include "vlex/errors.hpp"

namespace vlex {

SimpleFunction SimpleFunction::make(std::vector<Term> terms) {
  std::erase_if(terms, [](const Term& t) { return t.value == 0.0; });
  for (const Term& t : terms) {
    if (std::isnan(t.value) || std::isinf(t.value)) {
      fail_validation("term on " + t.ref.display() +
                      " has a non-finite value");
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.ref < b.ref; });
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i - 1].ref == terms[i].ref) {
      fail_validation("duplicate reference " + terms[i].ref.display() +
                      " in simple function");
    }
  }
  SimpleFunction f;
  f.terms_ = std::move(terms);
  return f;
}

double SimpleFunction::sup_abs() const {
  double m = 0.0;
  for (const Term& t : terms_) m = std::max(m, std::abs(t.value));
  return m;
}

SimpleFunction SimpleFunction::scaled(double a) const {
  std::vector<Term> scaled = terms_;
  for (Term& t : scaled) t.value *= a;
  return make(std::move(scaled));
}

SimpleFunction SimpleFunction::plus(const SimpleFunction& other) const {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    if (terms_[i].ref < other.terms_[j].ref) {
      merged.push_back(terms_[i++]);
    } else if (other.terms_[j].ref < terms_[i].ref) {
      merged.push_back(other.terms_[j++]);
    } else {
      merged.push_back({terms_[i].ref, terms_[i].value + other.terms_[j].value});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) merged.push_back(terms_[i]);
  for (; j < other.terms_.size(); ++j) merged.push_back(other.terms_[j]);
  return make(std::move(merged));
}

bool SimpleFunction::disjoint_from(const SimpleFunction& other) const {
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    if (terms_[i].ref < other.terms_[j].ref) ++i;
    else if (other.terms_[j].ref < terms_[i].ref) ++j;
    else return false;
  }
  return true;
}

ResolvedRegion resolve(const ExponentSpec& spec, const RegionRef& ref) {
  if (ref.is_family_member()) {
    const RegionFamily* f = spec.find_family(ref.id);
    if (!f) {
      if (spec.find_region(ref.id)) {
        fail_reference("'" + ref.id + "' is a region, not a family; it takes "
                       "no member index");
      }
      fail_reference("unknown family '" + ref.id + "'");
    }
    return {f->weight_at(*ref.index), f->exponent_at(*ref.index), f->kind};
  }
  const Region* r = spec.find_region(ref.id);
  if (!r) {
    if (spec.find_family(ref.id)) {
      fail_reference("'" + ref.id + "' is a family; a member index is required");
    }
    fail_reference("unknown region '" + ref.id + "'");
  }
  return {r->weight, r->exponent, r->kind};
}

}  // namespace vlex
