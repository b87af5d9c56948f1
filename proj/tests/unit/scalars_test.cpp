#include <doctest.h>

#include "vlex/scalars.hpp"
#include "vlex/spec.hpp"

using namespace vlex;

namespace {

RegionFamily family(std::string id, WeightSeq w, ExponentSeq e, Count c,
                    RegionKind kind = RegionKind::Atom) {
  RegionFamily fam;
  fam.id = std::move(id);
  fam.kind = kind;
  fam.weights = std::move(w);
  fam.exponents = std::move(e);
  fam.count = c;
  return fam;
}

}  // namespace

TEST_CASE("an infinite harmonic approach reaches 1 only in the limit") {
  ExponentSpec spec;
  spec.families.push_back(family("tail", WeightSeq::geometric(1.0, 0.5),
                                 ExponentSeq::harmonic_approach(1.0, 1.0),
                                 Count::inf()));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.p_minus == 1.0);
  CHECK_FALSE(s.p_minus_attained);
  CHECK(s.p_plus == 2.0);  // first member: 1 + 1/1
  CHECK(s.p_plus_attained);
  REQUIRE(s.p_minus_off_one.has_value());
  CHECK(*s.p_minus_off_one == 1.0);  // approached from above
  REQUIRE(s.p_minus_star.has_value());
  CHECK(*s.p_minus_star == 1.0);
  CHECK(*s.p_plus_star == 2.0);
  REQUIRE(s.p_plus_finite.has_value());
  CHECK(*s.p_plus_finite == 2.0);
  CHECK(s.one_infty.atoms_p1.is_zero());
  CHECK(s.one_infty.atoms_pinf.is_zero());
  CHECK(s.witnesses.off_one_approach == "tail");
  CHECK(s.witnesses.p_minus_src == "tail");
}

TEST_CASE("a truncated harmonic approach attains its smallest member") {
  ExponentSpec spec;
  spec.families.push_back(family("head", WeightSeq::constant(1.0),
                                 ExponentSeq::harmonic_approach(1.0, 1.0),
                                 Count::finite(4)));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.p_minus == 1.25);  // member 4: 1 + 1/4
  CHECK(s.p_minus_attained);
  CHECK(s.p_plus == 2.0);
  CHECK(*s.p_minus_off_one == 1.25);
}

TEST_CASE("power growth with unit scale plants one exponent-1 atom") {
  ExponentSpec spec;
  spec.families.push_back(family("growth", WeightSeq::geometric(1.0, 0.5),
                                 ExponentSeq::power_growth(1.0, 2.0),
                                 Count::inf()));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.p_minus == 1.0);  // member 1: 1 * 1^2
  CHECK(s.p_minus_attained);
  CHECK(s.p_plus == kInf);
  CHECK_FALSE(s.p_plus_attained);  // grows without bound, never lands on inf
  REQUIRE(s.p_plus_finite.has_value());
  CHECK(*s.p_plus_finite == kInf);  // finite exponents, unbounded sup
  CHECK(s.one_infty.atoms_p1 == Count::finite(1));
  CHECK(s.one_infty.atoms_pinf.is_zero());
  // members 2.. have exponents 4, 9, 16, ... all in (1, inf)
  REQUIRE(s.p_minus_off_one.has_value());
  CHECK(*s.p_minus_off_one == 4.0);
  CHECK(*s.p_minus_star == 4.0);
  CHECK(s.witnesses.unbounded_finite == "growth");
}

TEST_CASE("prefix blocks split a family into exact exponent groups") {
  ExponentSpec spec;
  spec.families.push_back(family(
      "mix", WeightSeq::constant(1.0),
      ExponentSeq::prefix_constant({1.0, kInf, 3.0}, 2.0), Count::inf()));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.p_minus == 1.0);
  CHECK(s.p_minus_attained);
  CHECK(s.p_plus == kInf);
  CHECK(s.p_plus_attained);
  CHECK(s.one_infty.atoms_p1 == Count::finite(1));
  CHECK(s.one_infty.atoms_pinf == Count::finite(1));
  CHECK(*s.p_minus_off_one == 2.0);
  CHECK(*s.p_minus_star == 2.0);
  CHECK(*s.p_plus_star == 3.0);
  REQUIRE(s.p_plus_finite.has_value());
  CHECK(*s.p_plus_finite == 3.0);
}

TEST_CASE("cell families accumulate nonatomic measure at the endpoints") {
  ExponentSpec spec;
  spec.regions.push_back(Region{"I", RegionKind::Cell, 0.75, 1.0});
  spec.families.push_back(family("J", WeightSeq::geometric(0.5, 0.5),
                                 ExponentSeq::constant(kInf), Count::inf(),
                                 RegionKind::Cell));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.one_infty.cell_measure_p1 == 0.75);
  CHECK(s.one_infty.cell_measure_pinf == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.one_infty.atoms_p1.is_zero());
  CHECK(s.one_infty.atoms_pinf.is_zero());
  CHECK(s.witnesses.cell_p1 == "I");
  CHECK(s.witnesses.cell_pinf == "J");
  // the open (1, inf) band is empty, but both closed-end parts exist
  CHECK_FALSE(s.p_minus_star.has_value());
  CHECK_FALSE(s.p_plus_star.has_value());
  REQUIRE(s.p_minus_off_one.has_value());
  CHECK(*s.p_minus_off_one == kInf);  // only the sup-norm cells sit above 1
  REQUIRE(s.p_plus_finite.has_value());
  CHECK(*s.p_plus_finite == 1.0);  // the finite-exponent part is the 1-cell
}

TEST_CASE("infinitely many endpoint atoms are counted as infinite") {
  ExponentSpec spec;
  spec.families.push_back(family("ones", WeightSeq::geometric(1.0, 0.5),
                                 ExponentSeq::constant(1.0), Count::inf()));
  spec.families.push_back(family("sups", WeightSeq::geometric(1.0, 0.5),
                                 ExponentSeq::constant(kInf), Count::inf()));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.one_infty.atoms_p1.infinite);
  CHECK(s.one_infty.atoms_pinf.infinite);
  CHECK(s.witnesses.atoms_p1_infinite == "ones");
  CHECK(s.witnesses.atoms_pinf_infinite == "sups");
  CHECK(s.p_minus == 1.0);
  CHECK(s.p_minus_attained);
  CHECK(s.p_plus == kInf);
  CHECK(s.p_plus_attained);
}

TEST_CASE("geometric approach pins the star band strictly inside (1, inf)") {
  ExponentSpec spec;
  spec.regions.push_back(Region{"a", RegionKind::Atom, 1.0, 5.0});
  spec.families.push_back(family("geo", WeightSeq::constant(1.0),
                                 ExponentSeq::geometric_approach(1.0, 0.5),
                                 Count::inf()));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.p_minus == 1.0);
  CHECK_FALSE(s.p_minus_attained);
  CHECK(s.p_plus == 5.0);
  CHECK(s.p_plus_attained);
  CHECK(*s.p_minus_star == 1.0);   // approached
  CHECK(*s.p_plus_star == 5.0);    // the standalone atom
  CHECK(s.witnesses.p_plus_src == "a");
  CHECK(s.witnesses.p_minus_src == "geo");
}

TEST_CASE("scalars of a plain square-summable model") {
  ExponentSpec spec;
  spec.families.push_back(family("e", WeightSeq::constant(1.0),
                                 ExponentSeq::constant(2.0), Count::inf()));
  DerivedScalars s = derive_scalars(spec);

  CHECK(s.p_minus == 2.0);
  CHECK(s.p_plus == 2.0);
  CHECK(s.p_minus_attained);
  CHECK(s.p_plus_attained);
  CHECK(*s.p_minus_off_one == 2.0);
  CHECK(*s.p_minus_star == 2.0);
  CHECK(*s.p_plus_star == 2.0);
  CHECK(*s.p_plus_finite == 2.0);
  CHECK(s.one_infty.atoms_p1.is_zero());
  CHECK(s.one_infty.atoms_pinf.is_zero());
  CHECK(s.one_infty.cell_measure_p1 == 0.0);
  CHECK(s.one_infty.cell_measure_pinf == 0.0);
}
