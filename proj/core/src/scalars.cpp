#include "vlex/scalars.hpp"

#include "vlex/errors.hpp"

namespace vlex {

namespace {

/// Per-source aggregates accumulated over regions and families.
struct Profile {
  SeqBounds global;     // every exponent
  SeqBounds finite;     // exponents < inf
  SeqBounds above_one;  // exponents > 1
  SeqBounds star;       // exponents in (1, inf)
  Count n_p1, n_pinf;   // member counts at exponent 1 / inf
  double measure_p1 = 0.0, measure_pinf = 0.0;  // weights of those members
};

void absorb_single(Profile& p, double exponent, double weight, bool atom) {
  p.global.absorb_value(exponent);
  if (is_finite(exponent)) p.finite.absorb_value(exponent);
  if (exponent > 1.0) p.above_one.absorb_value(exponent);
  if (exponent > 1.0 && is_finite(exponent)) p.star.absorb_value(exponent);
  if (exponent == 1.0) {
    if (atom) p.n_p1 = p.n_p1 + Count::finite(1);
    else p.measure_p1 += weight;
  }
  if (exponent == kInf) {
    if (atom) p.n_pinf = p.n_pinf + Count::finite(1);
    else p.measure_pinf += weight;
  }
}

Profile profile_family(const RegionFamily& f) {
  Profile p;
  const bool atom = f.kind == RegionKind::Atom;
  const Count c = f.count;
  switch (f.exponents.kind) {
    case ExponentSeq::Kind::Constant: {
      double v = f.exponents.value;
      p.global.absorb_value(v);
      if (is_finite(v)) p.finite.absorb_value(v);
      if (v > 1.0) p.above_one.absorb_value(v);
      if (v > 1.0 && is_finite(v)) p.star.absorb_value(v);
      if (v == 1.0) {
        if (atom) p.n_p1 = p.n_p1 + c;
        else p.measure_p1 += f.weights.total(1, c);
      }
      if (v == kInf) {
        if (atom) p.n_pinf = p.n_pinf + c;
        else p.measure_pinf += f.weights.total(1, c);
      }
      break;
    }
    case ExponentSeq::Kind::HarmonicApproach:
    case ExponentSeq::Kind::GeometricApproach: {
      // Strictly decreasing, all members > 1, limit 1.
      double first = f.exponents.at(1);
      p.global.absorb_value(first);
      p.finite.absorb_value(first);
      p.above_one.absorb_value(first);
      p.star.absorb_value(first);
      if (c.infinite) {
        p.global.absorb_limit_inf(1.0);
        p.finite.absorb_limit_inf(1.0);
        p.above_one.absorb_limit_inf(1.0);
        p.star.absorb_limit_inf(1.0);
      } else {
        double last = f.exponents.at(c.value);
        p.global.absorb_value(last);
        p.finite.absorb_value(last);
        p.above_one.absorb_value(last);
        p.star.absorb_value(last);
      }
      break;
    }
    case ExponentSeq::Kind::PowerGrowth: {
      // Strictly increasing, member 1 equals scale (>= 1), unbounded iff
      // infinitely many members.
      double first = f.exponents.at(1);
      p.global.absorb_value(first);
      p.finite.absorb_value(first);
      if (first == 1.0) {
        // Only member 1 can sit at exponent 1.
        if (atom) p.n_p1 = p.n_p1 + Count::finite(1);
        else p.measure_p1 += f.weights.at(1);
        if (c.infinite || c.value >= 2) {
          double second = f.exponents.at(2);
          p.above_one.absorb_value(second);
          p.star.absorb_value(second);
        }
      } else {
        p.above_one.absorb_value(first);
        p.star.absorb_value(first);
      }
      if (c.infinite) {
        p.global.absorb_limit_sup(kInf);
        p.finite.absorb_limit_sup(kInf);
        p.above_one.absorb_limit_sup(kInf);
        p.star.absorb_limit_sup(kInf);
      } else {
        double last = f.exponents.at(c.value);
        p.global.absorb_value(last);
        p.finite.absorb_value(last);
        if (last > 1.0) {
          p.above_one.absorb_value(last);
          p.star.absorb_value(last);
        }
      }
      break;
    }
    case ExponentSeq::Kind::PrefixConstant: {
      std::uint64_t len = f.exponents.prefix.size();
      for (std::uint64_t n = 1; n <= len && c.contains(n); ++n) {
        absorb_single(p, f.exponents.prefix[n - 1], f.weights.at(n), atom);
      }
      // Constant tail occupies indices len+1 .. count.
      bool tail_nonempty = c.infinite || c.value > len;
      if (tail_nonempty) {
        double v = f.exponents.value;
        Count tail_count =
            c.infinite ? Count::inf() : Count::finite(c.value - len);
        p.global.absorb_value(v);
        if (is_finite(v)) p.finite.absorb_value(v);
        if (v > 1.0) p.above_one.absorb_value(v);
        if (v > 1.0 && is_finite(v)) p.star.absorb_value(v);
        if (v == 1.0) {
          if (atom) p.n_p1 = p.n_p1 + tail_count;
          else p.measure_p1 += f.weights.total(len + 1, c);
        }
        if (v == kInf) {
          if (atom) p.n_pinf = p.n_pinf + tail_count;
          else p.measure_pinf += f.weights.total(len + 1, c);
        }
      }
      break;
    }
  }
  return p;
}

}  // namespace

DerivedScalars derive_scalars(const ExponentSpec& spec) {
  spec.validate();

  DerivedScalars out;
  SeqBounds global, finite, above_one, star;
  OneInftyStructure structure;
  ScalarWitnesses& w = out.witnesses;

  auto merge = [&](const Profile& p, const std::string& id) {
    if (!p.global.empty) {
      if (global.empty || p.global.inf < global.inf) w.p_minus_src = id;
      if (global.empty || p.global.sup > global.sup) w.p_plus_src = id;
    }
    if (!p.finite.empty && p.finite.sup == kInf) w.unbounded_finite = id;
    if (!p.above_one.empty && p.above_one.inf == 1.0 &&
        !p.above_one.inf_attained) {
      w.off_one_approach = id;
    }
    if (p.n_p1.infinite) w.atoms_p1_infinite = id;
    if (p.n_pinf.infinite) w.atoms_pinf_infinite = id;
    if (p.measure_p1 > 0.0) w.cell_p1 = id;
    if (p.measure_pinf > 0.0) w.cell_pinf = id;

    global.absorb(p.global);
    finite.absorb(p.finite);
    above_one.absorb(p.above_one);
    star.absorb(p.star);
    structure.atoms_p1 = structure.atoms_p1 + p.n_p1;
    structure.atoms_pinf = structure.atoms_pinf + p.n_pinf;
    structure.cell_measure_p1 += p.measure_p1;
    structure.cell_measure_pinf += p.measure_pinf;
  };

  for (const Region& r : spec.regions) {
    Profile p;
    absorb_single(p, r.exponent, r.weight, r.kind == RegionKind::Atom);
    merge(p, r.id);
  }
  for (const RegionFamily& f : spec.families) {
    merge(profile_family(f), f.id);
  }

  out.p_minus = global.inf;
  out.p_plus = global.sup;
  out.p_minus_attained = global.inf_attained;
  out.p_plus_attained = global.sup_attained;
  if (!finite.empty) out.p_plus_finite = finite.sup;
  if (!above_one.empty) out.p_minus_off_one = above_one.inf;
  if (!star.empty) {
    out.p_minus_star = star.inf;
    out.p_plus_star = star.sup;
  }
  out.one_infty = structure;
  return out;
}

}  // namespace vlex
