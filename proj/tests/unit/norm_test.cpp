#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "vlex/errors.hpp"
#include "vlex/norm.hpp"
#include "vlex/rng.hpp"

using namespace vlex;

namespace {

ExponentSpec atoms(std::vector<double> weights, std::vector<double> exponents) {
  ExponentSpec spec;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    spec.regions.push_back(Region{"a" + std::to_string(i + 1),
                                  RegionKind::Atom, weights[i], exponents[i]});
  }
  return spec;
}

SimpleFunction fn(std::vector<Term> terms) {
  return SimpleFunction::make(std::move(terms));
}

SimpleFunction on_atoms(std::vector<double> values) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < values.size(); ++i) {
    terms.push_back(Term{{"a" + std::to_string(i + 1), {}}, values[i]});
  }
  return fn(std::move(terms));
}

}  // namespace

// Frozen values below were computed from the defining equation rho(f/a) = 1
// by hand (closed forms) and double-checked with 80-bit arithmetic.

TEST_CASE("norm crossing with mixed exponents lands on the golden ratio") {
  // atoms (w=1,p=1) and (w=1,p=2), f = (1,1):
  // rho(f/a) = 1/a + 1/a^2 = 1  =>  a = (1+sqrt(5))/2.
  ExponentSpec spec = atoms({1.0, 1.0}, {1.0, 2.0});
  NormResult r = luxemburg_norm(spec, on_atoms({1.0, 1.0}));
  CHECK(r.boundary == NormResult::Boundary::Interior);
  CHECK(r.norm == doctest::Approx(1.6180339887498949).epsilon(1e-12));
  CHECK(r.iterations > 0);
}

TEST_CASE("norm crossing with exponents 3/2 and 3") {
  // rho(f/a) = a^{-3/2} + a^{-3} = 1 with t = a^{-3/2}: t^2 + t = 1,
  // t = (sqrt(5)-1)/2, a = t^{-2/3}.
  ExponentSpec spec = atoms({1.0, 1.0}, {1.5, 3.0});
  double expected = std::pow((std::sqrt(5.0) - 1.0) / 2.0, -2.0 / 3.0);
  NormResult r = luxemburg_norm(spec, on_atoms({1.0, 1.0}));
  CHECK(r.norm == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("norm on a single region has the closed form |v| w^(1/p)") {
  ExponentSpec spec = atoms({0.25}, {2.0});
  NormResult r = luxemburg_norm(spec, on_atoms({3.0}));
  CHECK(r.norm == doctest::Approx(1.5).epsilon(1e-12));  // 3 * 0.25^(1/2)
}

TEST_CASE("exponent-1 space reduces to the weighted absolute sum") {
  ExponentSpec spec = atoms({2.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
  NormResult r = luxemburg_norm(spec, on_atoms({1.0, -4.0, 0.5}));
  // 2*1 + 0.5*4 + 1*0.5 = 4.5
  CHECK(r.norm == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("exponent-inf space reduces to the max") {
  ExponentSpec spec = atoms({1.0, 3.0}, {kInf, kInf});
  NormResult r = luxemburg_norm(spec, on_atoms({0.25, -0.75}));
  CHECK(r.norm == 0.75);
  CHECK(r.boundary == NormResult::Boundary::SupPartDominated);
  CHECK(r.iterations == 0);
}

TEST_CASE("a bounded atom enters the crossing equation") {
  // rho(f/a) = a^{-2} + 2/a = 1 with u = 1/a: u^2 + 2u = 1, u = sqrt(2) - 1,
  // so the norm is 1 + sqrt(2) — strictly above both single-term norms.
  ExponentSpec spec = atoms({1.0, 1.0}, {2.0, kInf});
  NormResult r = luxemburg_norm(spec, on_atoms({1.0, 2.0}));
  CHECK(r.norm == doctest::Approx(2.4142135623730951).epsilon(1e-12));
  CHECK(r.boundary == NormResult::Boundary::Interior);
}

TEST_CASE("zero function has norm zero") {
  ExponentSpec spec = atoms({1.0}, {2.0});
  NormResult r = luxemburg_norm(spec, SimpleFunction{});
  CHECK(r.norm == 0.0);
  CHECK(r.boundary == NormResult::Boundary::ZeroFunction);
}

TEST_CASE("returned bracket certifies the crossing") {
  Rng rng(0xbea7ULL);
  for (int i = 0; i < 150; ++i) {
    Rng child = rng.split(i);
    ExponentSpec spec = testgen::any_spec(child);
    SimpleFunction f = testgen::random_function(child, spec, 10);
    NormResult r = luxemburg_norm(spec, f);
    CAPTURE(i);
    REQUIRE(r.norm > 0.0);
    // upper endpoint always certifies membership of the unit ball
    CHECK(leq_tol(rho(spec, f.scaled(1.0 / r.norm)), 1.0));
    if (r.boundary == NormResult::Boundary::Interior) {
      CHECK(r.bracket_lo <= r.norm);
      CHECK(r.norm == r.bracket_hi);
      CHECK((r.bracket_hi - r.bracket_lo) <=
            kDefaultNormTol * r.bracket_hi * (1 + 1e-9));
      // the lower endpoint certifies maximality: rho(f/lo) >= 1
      if (r.bracket_lo < r.bracket_hi) {
        CHECK(rho(spec, f.scaled(1.0 / r.bracket_lo)) >= 1.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("norm is absolutely homogeneous and subadditive") {
  Rng rng(0x70b1a5ULL);
  for (int i = 0; i < 100; ++i) {
    Rng child = rng.split(i);
    ExponentSpec spec = testgen::any_spec(child);
    SimpleFunction f = testgen::random_function(child, spec, 8);
    SimpleFunction g = testgen::random_function(child, spec, 8);
    double nf = luxemburg_norm(spec, f).norm;
    double ng = luxemburg_norm(spec, g).norm;
    double c = child.next_in(0.1, 5.0) * child.next_sign();
    CAPTURE(i);
    CHECK(luxemburg_norm(spec, f.scaled(c)).norm ==
          doctest::Approx(std::abs(c) * nf).epsilon(1e-9));
    CHECK(luxemburg_norm(spec, f.plus(g)).norm <= (nf + ng) * (1 + 1e-9));
  }
}

TEST_CASE("tolerances outside the supported window are rejected") {
  ExponentSpec spec = atoms({1.0}, {2.0});
  SimpleFunction f = on_atoms({1.0});
  CHECK_THROWS_AS(luxemburg_norm(spec, f, 0.0), Error);
  CHECK_THROWS_AS(luxemburg_norm(spec, f, -1e-6), Error);
  CHECK_THROWS_AS(luxemburg_norm(spec, f, 2e-3), Error);  // above kMaxNormTol
  CHECK_NOTHROW(luxemburg_norm(spec, f, kMaxNormTol));
}

TEST_CASE("norm-modular bridge holds on random spaces") {
  Rng rng(0xb41d6eULL);
  for (int i = 0; i < 100; ++i) {
    Rng child = rng.split(i);
    ExponentSpec spec = testgen::bounded_spec(child);
    SimpleFunction f = testgen::random_function(child, spec, 8, true);
    BridgeReport br = norm_modular_bridge_check(spec, f);
    CAPTURE(i);
    CHECK(br.pass());
  }
}

TEST_CASE("bridge near the unit sphere in both directions") {
  ExponentSpec spec = atoms({1.0, 1.0}, {1.0, 2.0});
  // scale the golden-ratio example onto the unit sphere
  SimpleFunction f = on_atoms({1.0, 1.0}).scaled(1.0 / 1.6180339887498949);
  BridgeReport br = norm_modular_bridge_check(spec, f);
  CHECK(br.pass());
  CHECK(br.norm == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(br.rho_f == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("disjoint normalized blocks obey the n^(1/P) lower bound") {
  SUBCASE("equal atoms meet the bound with equality") {
    // n atoms with w=1, p=2; each e_i has norm 1; ||sum|| = n^(1/2) exactly.
    for (std::size_t n : {2, 8, 32}) {
      ExponentSpec spec;
      std::vector<SimpleFunction> parts;
      for (std::size_t i = 0; i < n; ++i) {
        std::string id = "a" + std::to_string(i + 1);
        spec.regions.push_back(Region{id, RegionKind::Atom, 1.0, 2.0});
        parts.push_back(fn({Term{{id, {}}, 1.0}}));
      }
      DisjointSumReport rep = disjoint_sum_lower_bound(spec, parts);
      CHECK(rep.pass);
      CHECK(rep.bound == doctest::Approx(std::sqrt(double(n))).epsilon(1e-12));
      CHECK(rep.margin >= -1e-9);
      CHECK(rep.margin == doctest::Approx(0.0).epsilon(1e-6));
    }
  }
  SUBCASE("mixed exponents exceed the bound") {
    ExponentSpec spec = atoms({1.0, 1.0}, {1.5, 3.0});
    std::vector<SimpleFunction> parts = {on_atoms({1.0, 0.0}),
                                         on_atoms({0.0, 1.0})};
    DisjointSumReport rep = disjoint_sum_lower_bound(spec, parts);
    CHECK(rep.pass);
    CHECK(rep.p_plus_finite == 3.0);
    CHECK(rep.margin >= -1e-9);
  }
  SUBCASE("overlapping supports are rejected") {
    ExponentSpec spec = atoms({1.0, 1.0}, {2.0, 2.0});
    std::vector<SimpleFunction> parts = {on_atoms({1.0, 0.0}),
                                         on_atoms({1.0, 0.0})};
    CHECK_THROWS_AS(disjoint_sum_lower_bound(spec, parts), Error);
  }
  SUBCASE("non-normalized parts are rejected") {
    ExponentSpec spec = atoms({1.0, 1.0}, {2.0, 2.0});
    std::vector<SimpleFunction> parts = {on_atoms({2.0, 0.0}),
                                         on_atoms({0.0, 1.0})};
    CHECK_THROWS_AS(disjoint_sum_lower_bound(spec, parts), Error);
  }
}
