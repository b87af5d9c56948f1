#include <doctest.h>

#include <array>
#include <string>
#include <vector>

#include "generators.hpp"
#include "golden_table.hpp"
#include "vlex/classify.hpp"
#include "vlex/rng.hpp"
#include "vlex/spec.hpp"

using namespace vlex;
using testgen::golden_family;
using testgen::golden_table;
using testgen::GoldenRow;
using testgen::kPredicateNames;
using testgen::predicate_flags;

TEST_CASE("golden classification table") {
  for (GoldenRow& row : golden_table()) {
    CAPTURE(row.name);
    REQUIRE_NOTHROW(row.spec.validate());
    ClassificationReport report = classify(row.spec);
    std::array<bool, 10> got = predicate_flags(report);
    for (int i = 0; i < 10; ++i) {
      CAPTURE(kPredicateNames[i]);
      CHECK(got[i] == row.expect[i]);
    }
    CHECK(consistency_violations(report).empty());
    CHECK_FALSE(report.witnesses.empty());
  }
}

TEST_CASE("equivalent descriptions classify identically") {
  // the same space written as explicit atoms + tail and as one prefix family
  ExponentSpec explicit_form;
  explicit_form.regions.push_back(Region{"a1", RegionKind::Atom, 1.0, 1.0});
  explicit_form.regions.push_back(Region{"a2", RegionKind::Atom, 1.0, 1.0});
  explicit_form.families.push_back(golden_family(
      "tail", WeightSeq::constant(1.0), ExponentSeq::constant(2.0),
      Count::inf()));
  ExponentSpec prefix_form;
  prefix_form.families.push_back(golden_family(
      "all", WeightSeq::constant(1.0),
      ExponentSeq::prefix_constant({1.0, 1.0}, 2.0), Count::inf()));

  ClassificationReport a = classify(explicit_form);
  ClassificationReport b = classify(prefix_form);
  CHECK(predicate_flags(a) == predicate_flags(b));

  CHECK(a.scalars.p_minus == b.scalars.p_minus);
  CHECK(a.scalars.p_plus == b.scalars.p_plus);
  CHECK(a.scalars.p_minus_attained == b.scalars.p_minus_attained);
  CHECK(a.scalars.p_plus_attained == b.scalars.p_plus_attained);
  CHECK(a.scalars.p_plus_finite == b.scalars.p_plus_finite);
  CHECK(a.scalars.p_minus_off_one == b.scalars.p_minus_off_one);
  CHECK(a.scalars.p_minus_star == b.scalars.p_minus_star);
  CHECK(a.scalars.p_plus_star == b.scalars.p_plus_star);
  CHECK(a.scalars.one_infty.atoms_p1 == b.scalars.one_infty.atoms_p1);
  CHECK(a.scalars.one_infty.atoms_pinf == b.scalars.one_infty.atoms_pinf);
  CHECK(a.scalars.one_infty.cell_measure_p1 ==
        b.scalars.one_infty.cell_measure_p1);
  CHECK(a.scalars.one_infty.cell_measure_pinf ==
        b.scalars.one_infty.cell_measure_pinf);
}

TEST_CASE("random descriptions never violate cross-predicate implications") {
  Rng rng(0x5eedULL);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Rng child = rng.split(i);
    ExponentSpec spec = testgen::any_spec(child);
    REQUIRE_NOTHROW(spec.validate());
    ClassificationReport report = classify(spec);
    std::vector<std::string> bad = consistency_violations(report);
    if (!bad.empty()) {
      CAPTURE(i);
      CAPTURE(bad.front());
    }
    CHECK(bad.empty());
    ++checked;
  }
  CHECK(checked == 300);
}
