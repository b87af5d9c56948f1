#include "vlex/operators.hpp"

#include <algorithm>
#include <cmath>

#include "vlex/errors.hpp"
#include "vlex/rng.hpp"

namespace vlex {

// ============================================================================
// BasisContext
// ============================================================================

BasisContext BasisContext::from_spec(const ExponentSpec& spec,
                                     std::uint64_t truncate) {
  spec.validate();
  BasisContext ctx;
  ctx.spec = spec;
  auto push = [&](RegionRef ref, double w, double p) {
    ctx.refs.push_back(std::move(ref));
    ctx.weights.push_back(w);
    ctx.exponents.push_back(p);
  };
  for (const Region& r : spec.regions)
    push(RegionRef{r.id, std::nullopt}, r.weight, r.exponent);
  for (const RegionFamily& fam : spec.families) {
    std::uint64_t n;
    if (fam.count.infinite) {
      if (truncate == 0)
        fail_parameter("family '" + fam.id +
                       "' is infinite; a truncation depth is required");
      n = truncate;
    } else {
      n = fam.count.value;
    }
    for (std::uint64_t k = 1; k <= n; ++k)
      push(RegionRef{fam.id, k}, fam.weight_at(k), fam.exponent_at(k));
  }
  if (ctx.refs.empty()) fail_precondition("coordinate system is empty");
  if (ctx.refs.size() > 65536)
    fail_parameter("coordinate system too large (" +
                   std::to_string(ctx.refs.size()) + " > 65536)");
  return ctx;
}

SimpleFunction BasisContext::to_function(const std::vector<double>& x) const {
  if (x.size() != refs.size())
    fail_parameter("coordinate vector has length " + std::to_string(x.size()) +
                   ", context has dimension " + std::to_string(refs.size()));
  std::vector<Term> terms;
  terms.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) terms.push_back(Term{refs[i], x[i]});
  return SimpleFunction::make(std::move(terms));
}

double BasisContext::norm(const std::vector<double>& x, double tol) const {
  return luxemburg_norm(spec, to_function(x), tol).norm;
}

double BasisContext::distance(const std::vector<double>& x,
                              const std::vector<double>& y, double tol) const {
  if (x.size() != y.size())
    fail_parameter("coordinate vectors differ in length");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return norm(d, tol);
}

// ============================================================================
// Operators
// ============================================================================

OperatorSpec builtin_operator(const std::string& name, double factor) {
  if (!is_finite(factor))
    fail_parameter("operator factor must be finite");
  OperatorSpec op;
  op.name = name;
  if (name == "identity") return op;
  if (name == "scale") {
    Stage s;
    s.kind = Stage::Kind::Scale;
    s.factor = factor;
    op.stages.push_back(s);
    return op;
  }
  if (name == "contraction") {
    if (!(std::abs(factor) < 1.0))
      fail_parameter("contraction factor must satisfy |factor| < 1");
    Stage s;
    s.kind = Stage::Kind::Toward;
    s.factor = factor;
    s.vec = {0.25};
    op.stages.push_back(s);
    return op;
  }
  if (name == "isometry_translate") {
    Stage flip;
    flip.kind = Stage::Kind::Diag;
    flip.vec = {1.0, -1.0};
    Stage move;
    move.kind = Stage::Kind::Translate;
    move.vec = {0.3, 0.1};
    Stage clamp;
    clamp.kind = Stage::Kind::RetractBall;
    clamp.radius = 1.5;
    op.stages = {flip, move, clamp};
    return op;
  }
  if (name == "shift_retract") {
    Stage shift;
    shift.kind = Stage::Kind::ShiftRight;
    shift.offset = 1;
    Stage clamp;
    clamp.kind = Stage::Kind::RetractBall;
    clamp.radius = 1.0;
    op.stages = {shift, clamp};
    return op;
  }
  fail_reference("unknown operator '" + name +
                 "' (try identity, scale, contraction, isometry_translate, "
                 "shift_retract)");
}

std::vector<double> apply_operator(const BasisContext& ctx,
                                   const OperatorSpec& op,
                                   std::vector<double> x) {
  if (x.size() != ctx.dim())
    fail_parameter("coordinate vector does not match context dimension");
  for (const Stage& st : op.stages) {
    switch (st.kind) {
      case Stage::Kind::Scale:
        for (double& v : x) v *= st.factor;
        break;
      case Stage::Kind::Diag: {
        if (st.vec.empty()) fail_parameter("diag stage needs a pattern");
        for (std::size_t i = 0; i < x.size(); ++i)
          x[i] *= st.vec[i % st.vec.size()];
        break;
      }
      case Stage::Kind::ShiftRight: {
        std::vector<double> y(x.size(), 0.0);
        for (std::size_t i = 0; i + st.offset < x.size(); ++i)
          y[i + st.offset] = x[i];
        x = std::move(y);
        break;
      }
      case Stage::Kind::Translate:
        for (std::size_t i = 0; i < x.size() && i < st.vec.size(); ++i)
          x[i] += st.vec[i];
        break;
      case Stage::Kind::RetractBall: {
        if (!(st.radius > 0.0)) fail_parameter("retract radius must be > 0");
        double n = ctx.norm(x);
        if (n > st.radius)
          for (double& v : x) v *= st.radius / n;
        break;
      }
      case Stage::Kind::Toward: {
        // x <- c + factor (x - c), center zero-padded.
        for (std::size_t i = 0; i < x.size(); ++i) {
          double c = i < st.vec.size() ? st.vec[i] : 0.0;
          x[i] = c + st.factor * (x[i] - c);
        }
        break;
      }
    }
  }
  return x;
}

// ============================================================================
// Averaged iteration and Lipschitz sampling
// ============================================================================

IterationTrace km_iterate(const BasisContext& ctx, const OperatorSpec& op,
                          std::vector<double> x0, double step, double tol,
                          std::uint64_t max_steps) {
  if (!(step > 0.0 && step <= 1.0))
    fail_parameter("step must lie in (0, 1], got " + std::to_string(step));
  if (!(tol > 0.0) || !is_finite(tol)) fail_parameter("tol must be positive");
  if (max_steps < 1 || max_steps > 1000000)
    fail_parameter("max_steps must lie in [1, 1000000]");
  if (x0.size() != ctx.dim())
    fail_parameter("x0 does not match context dimension");

  IterationTrace trace;
  trace.step = step;
  std::vector<double> x = std::move(x0);
  for (std::uint64_t k = 0;; ++k) {
    std::vector<double> tx = apply_operator(ctx, op, x);
    double residual = ctx.distance(x, tx);
    trace.residuals.push_back(residual);
    trace.steps = k;
    if (residual <= tol) {
      trace.converged = true;
      break;
    }
    if (k == max_steps) break;
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = (1.0 - step) * x[i] + step * tx[i];
  }
  trace.final_x = std::move(x);
  return trace;
}

LipschitzEstimate lipschitz_sample(const BasisContext& ctx,
                                   const OperatorSpec& op,
                                   std::uint64_t samples, double radius,
                                   std::uint64_t seed) {
  if (samples < 1) fail_parameter("samples must be >= 1");
  if (!(radius > 0.0) || !is_finite(radius))
    fail_parameter("radius must be positive and finite");

  Rng rng(seed);
  auto draw = [&]() {
    std::vector<double> x(ctx.dim());
    for (double& v : x) v = rng.next_in(-1.0, 1.0);
    double n = ctx.norm(x);
    double target = radius * rng.next_unit();
    if (n > 0.0)
      for (double& v : x) v *= target / n;
    return x;
  };

  LipschitzEstimate est;
  est.samples = samples;
  est.radius = radius;
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::vector<double> x = draw(), y = draw();
    double gap = ctx.distance(x, y);
    if (gap < 1e-9) continue;
    double image_gap =
        ctx.distance(apply_operator(ctx, op, x), apply_operator(ctx, op, y));
    est.max_ratio = std::max(est.max_ratio, image_gap / gap);
    est.used += 1;
  }
  if (est.used == 0) fail_precondition("no sample pair had usable separation");
  if (est.max_ratio < 1.0 - 1e-6)
    est.classification = "contractive";
  else if (est.max_ratio <= 1.0 + 1e-6)
    est.classification = "nonexpansive";
  else
    est.classification = "expansive";
  return est;
}

}  // namespace vlex
