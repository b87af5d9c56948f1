#include <doctest.h>

#include <cmath>

#include "vlex/errors.hpp"
#include "vlex/operators.hpp"

using namespace vlex;

namespace {

ExponentSpec square_spec() {
  ExponentSpec spec;
  RegionFamily fam;
  fam.id = "e";
  fam.weights = WeightSeq::constant(1.0);
  fam.exponents = ExponentSeq::constant(2.0);
  fam.count = Count::inf();
  spec.families.push_back(fam);
  return spec;
}

ExponentSpec small_spec() {
  ExponentSpec spec;
  spec.regions.push_back(Region{"a", RegionKind::Atom, 1.0, 2.0});
  spec.regions.push_back(Region{"b", RegionKind::Atom, 1.0, 2.0});
  RegionFamily fam;
  fam.id = "f";
  fam.weights = WeightSeq::constant(1.0);
  fam.exponents = ExponentSeq::constant(2.0);
  fam.count = Count::finite(3);
  spec.families.push_back(fam);
  return spec;
}

}  // namespace

TEST_CASE("coordinate systems enumerate regions then family members") {
  BasisContext ctx = BasisContext::from_spec(small_spec());
  REQUIRE(ctx.dim() == 5);  // a, b, f[1..3]
  CHECK(ctx.refs[0].id == "a");
  CHECK(ctx.refs[1].id == "b");
  CHECK(ctx.refs[2].id == "f");
  CHECK(ctx.refs[2].index == 1);
  CHECK(ctx.refs[4].index == 3);
  CHECK(ctx.weights[3] == 1.0);
  CHECK(ctx.exponents[3] == 2.0);

  // infinite families demand an explicit truncation depth
  CHECK_THROWS_AS(BasisContext::from_spec(square_spec()), Error);
  BasisContext truncated = BasisContext::from_spec(square_spec(), 12);
  CHECK(truncated.dim() == 12);
}

TEST_CASE("coordinate norms agree with the function norm") {
  BasisContext ctx = BasisContext::from_spec(square_spec(), 4);
  CHECK(ctx.norm({3.0, 4.0, 0.0, 0.0}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(ctx.distance({1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(ctx.norm({1.0, 2.0}), Error);  // wrong length
}

TEST_CASE("stage semantics") {
  BasisContext ctx = BasisContext::from_spec(square_spec(), 4);

  SUBCASE("scale") {
    OperatorSpec op = builtin_operator("scale", 0.25);
    CHECK(apply_operator(ctx, op, {4.0, -8.0, 0.0, 2.0}) ==
          std::vector<double>{1.0, -2.0, 0.0, 0.5});
  }
  SUBCASE("diag recycles its pattern") {
    Stage st;
    st.kind = Stage::Kind::Diag;
    st.vec = {1.0, -1.0};
    OperatorSpec op{"flip", {st}};
    CHECK(apply_operator(ctx, op, {1.0, 2.0, 3.0, 4.0}) ==
          std::vector<double>{1.0, -2.0, 3.0, -4.0});
  }
  SUBCASE("shift fills with zeros and drops the tail") {
    Stage st;
    st.kind = Stage::Kind::ShiftRight;
    st.offset = 1;
    OperatorSpec op{"shift", {st}};
    CHECK(apply_operator(ctx, op, {1.0, 2.0, 3.0, 4.0}) ==
          std::vector<double>{0.0, 1.0, 2.0, 3.0});
  }
  SUBCASE("translate is zero-padded") {
    Stage st;
    st.kind = Stage::Kind::Translate;
    st.vec = {0.5};
    OperatorSpec op{"move", {st}};
    CHECK(apply_operator(ctx, op, {1.0, 2.0, 3.0, 4.0}) ==
          std::vector<double>{1.5, 2.0, 3.0, 4.0});
  }
  SUBCASE("ball retraction only acts outside the ball") {
    Stage st;
    st.kind = Stage::Kind::RetractBall;
    st.radius = 1.0;
    OperatorSpec op{"clamp", {st}};
    std::vector<double> inside = apply_operator(ctx, op, {0.3, 0.4, 0.0, 0.0});
    CHECK(inside == std::vector<double>{0.3, 0.4, 0.0, 0.0});
    std::vector<double> out = apply_operator(ctx, op, {3.0, 4.0, 0.0, 0.0});
    CHECK(out[0] == doctest::Approx(0.6).epsilon(1e-11));
    CHECK(out[1] == doctest::Approx(0.8).epsilon(1e-11));
  }
  SUBCASE("toward moves straight at the center") {
    OperatorSpec op = builtin_operator("contraction", 0.5);
    std::vector<double> y = apply_operator(ctx, op, {1.0, 1.0, 0.0, 0.0});
    CHECK(y[0] == doctest::Approx(0.625).epsilon(1e-15));  // 0.25 + 0.5*0.75
    CHECK(y[1] == 0.5);
    CHECK(y[2] == 0.0);
  }
  SUBCASE("unknown builtin") {
    CHECK_THROWS_AS(builtin_operator("warp"), Error);
    CHECK_THROWS_AS(builtin_operator("contraction", 1.0), Error);
  }
}

TEST_CASE("averaged iteration drives a strict contraction to its fixed point") {
  BasisContext ctx = BasisContext::from_spec(square_spec(), 8);
  OperatorSpec op = builtin_operator("contraction", 0.5);
  std::vector<double> x0(8, 0.0);
  x0[0] = 1.0;
  IterationTrace trace = km_iterate(ctx, op, x0, 0.5, 1e-10, 10000);

  CHECK(trace.converged);
  CHECK(trace.steps < 200);
  REQUIRE(trace.residuals.size() == trace.steps + 1);
  CHECK(trace.residuals.back() <= 1e-10);
  // fixed point of x -> c + 0.5 (x - c) is the center 0.25 e_1
  CHECK(trace.final_x[0] == doctest::Approx(0.25).epsilon(1e-8));
  for (std::size_t i = 1; i < 8; ++i)
    CHECK(std::abs(trace.final_x[i]) <= 1e-9);
  // averaged step 0.5 on a 0.5-contraction contracts distances by 0.75
  for (std::size_t k = 1; k + 1 < trace.residuals.size(); ++k)
    CHECK(trace.residuals[k + 1] ==
          doctest::Approx(0.75 * trace.residuals[k]).epsilon(1e-6));
}

TEST_CASE("iteration on the identity converges at step zero") {
  BasisContext ctx = BasisContext::from_spec(square_spec(), 4);
  IterationTrace trace = km_iterate(ctx, builtin_operator("identity"),
                                    {0.5, -0.25, 0.0, 0.0}, 0.5, 1e-10, 100);
  CHECK(trace.converged);
  CHECK(trace.steps == 0);
  CHECK(trace.residuals == std::vector<double>{0.0});
}

TEST_CASE("iteration reports non-convergence within the step budget") {
  BasisContext ctx = BasisContext::from_spec(square_spec(), 8);
  OperatorSpec op = builtin_operator("shift_retract");
  std::vector<double> x0(8, 0.0);
  x0[0] = 1.0;
  IterationTrace trace = km_iterate(ctx, op, x0, 0.5, 1e-10, 16);
  CHECK_FALSE(trace.converged);
  CHECK(trace.steps == 16);
  CHECK(trace.residuals.size() == 17);
  // first residual: distance between e_1 and its shift = sqrt(2)
  CHECK(trace.residuals[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  SUBCASE("identical inputs give an identical trace") {
    IterationTrace again = km_iterate(ctx, op, x0, 0.5, 1e-10, 16);
    CHECK(again.residuals == trace.residuals);
    CHECK(again.final_x == trace.final_x);
  }
}

TEST_CASE("iteration validates its parameters") {
  BasisContext ctx = BasisContext::from_spec(square_spec(), 4);
  OperatorSpec op = builtin_operator("identity");
  std::vector<double> x0(4, 0.0);
  CHECK_THROWS_AS(km_iterate(ctx, op, x0, 0.0, 1e-10, 10), Error);
  CHECK_THROWS_AS(km_iterate(ctx, op, x0, 1.5, 1e-10, 10), Error);
  CHECK_THROWS_AS(km_iterate(ctx, op, x0, 0.5, 0.0, 10), Error);
  CHECK_THROWS_AS(km_iterate(ctx, op, x0, 0.5, 1e-10, 0), Error);
  CHECK_THROWS_AS(km_iterate(ctx, op, {0.0}, 0.5, 1e-10, 10), Error);
}

TEST_CASE("sampled expansion ratios classify the built-in maps") {
  BasisContext ctx = BasisContext::from_spec(square_spec(), 6);

  LipschitzEstimate contract =
      lipschitz_sample(ctx, builtin_operator("contraction", 0.5), 64, 1.0, 42);
  CHECK(contract.classification == "contractive");
  CHECK(contract.max_ratio <= 0.5 * (1 + 1e-9));
  CHECK(contract.used > 0);
  CHECK(contract.used <= contract.samples);

  LipschitzEstimate iso = lipschitz_sample(
      ctx, builtin_operator("isometry_translate"), 64, 1.0, 42);
  CHECK(iso.max_ratio <= 1.0 + 1e-6);
  CHECK((iso.classification == "nonexpansive" ||
         iso.classification == "contractive"));

  LipschitzEstimate expand =
      lipschitz_sample(ctx, builtin_operator("scale", 3.0), 32, 1.0, 42);
  CHECK(expand.classification == "expansive");
  CHECK(expand.max_ratio == doctest::Approx(3.0).epsilon(1e-9));

  CHECK_THROWS_AS(lipschitz_sample(ctx, builtin_operator("identity"), 0, 1.0, 1),
                  Error);
  CHECK_THROWS_AS(
      lipschitz_sample(ctx, builtin_operator("identity"), 8, 0.0, 1), Error);
}
