#include "vlex/classify.hpp"

#include <sstream>

namespace vlex {

namespace {

std::string fmt(double v) {
  if (v == kInf) return "inf";
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string count_str(Count c) {
  return c.infinite ? "infinitely many" : std::to_string(c.value);
}

}  // namespace

ClassificationReport classify(const ExponentSpec& spec) {
  ClassificationReport r;
  r.scalars = derive_scalars(spec);
  const DerivedScalars& s = r.scalars;
  const OneInftyStructure& oi = s.one_infty;
  const ScalarWitnesses& ws = s.witnesses;

  auto id_of = [](const std::optional<std::string>& o) {
    return o ? " ('" + *o + "')" : std::string();
  };

  // --- doubling bound: finite-exponent part has bounded exponent -----------
  const bool finite_part_bounded = !s.p_plus_finite || *s.p_plus_finite < kInf;
  r.delta2 = finite_part_bounded;

  // --- order continuity -----------------------------------------------------
  const bool inf_part_atomic_finite =
      !oi.atoms_pinf.infinite && oi.cell_measure_pinf == 0.0;
  r.order_continuous = finite_part_bounded && inf_part_atomic_finite;

  // --- uniform convexity (sufficient criterion, global bounds) --------------
  r.uniformly_convex_component = s.p_minus > 1.0 && s.p_plus < kInf;

  // --- reflexivity -----------------------------------------------------------
  // Exponents strictly inside (1, inf) must be bounded away from 1 and inf,
  // and the exponent-{1, inf} part must consist of finitely many atoms.
  const bool star_ok =
      !s.p_minus_star ||  // no such part: vacuously fine
      (*s.p_minus_star > 1.0 && *s.p_plus_star < kInf);
  const bool one_inf_finitely_atomic =
      !oi.atoms_p1.infinite && !oi.atoms_pinf.infinite &&
      oi.cell_measure_p1 == 0.0 && oi.cell_measure_pinf == 0.0;
  r.reflexive = star_ok && one_inf_finitely_atomic;

  // --- fixed point property on weakly compact convex sets -------------------
  // Exponent-1 atoms are harmless here; nonatomic exponent-{1, inf} mass and
  // infinitely many exponent-inf atoms are not.
  r.w_fpp = finite_part_bounded && !oi.atoms_pinf.infinite &&
            oi.cell_measure_p1 == 0.0 && oi.cell_measure_pinf == 0.0;

  // --- isometric copies ------------------------------------------------------
  const bool unbounded_finite = s.p_plus_finite && *s.p_plus_finite == kInf;
  r.isometric_linfty = unbounded_finite || oi.atoms_pinf.infinite ||
                       oi.cell_measure_pinf > 0.0;
  r.isometric_l1 = oi.atoms_p1.infinite || oi.cell_measure_p1 > 0.0 ||
                   r.isometric_linfty;
  r.aic_l1 = r.isometric_l1;

  // --- hereditary failure-of-FPP subspace ------------------------------------
  // Needs exponents strictly above 1 coming arbitrarily close to 1. The inf
  // over that part equals 1 only when it is approached (never attained).
  r.hereditary_l1_fpp_subspace =
      s.p_minus_off_one && *s.p_minus_off_one == 1.0;

  // --- FPP for reflexive subspaces -------------------------------------------
  r.reflexive_subspaces_have_fpp = s.p_plus < kInf;

  // --- witnesses --------------------------------------------------------------
  auto add = [&r](const std::string& k, const std::string& v) {
    r.witnesses.emplace_back(k, v);
  };

  if (!s.p_plus_finite) {
    add("delta2", "no finite-exponent part; doubling is exact on the sup part");
  } else if (r.delta2) {
    add("delta2", "finite exponents bounded by " + fmt(*s.p_plus_finite) +
                      id_of(ws.p_plus_src));
  } else {
    add("delta2", "finite exponents unbounded" + id_of(ws.unbounded_finite));
  }

  if (r.order_continuous) {
    add("order_continuous", "finite exponents bounded and the exponent-inf "
                            "part is at most finitely many atoms");
  } else if (!finite_part_bounded) {
    add("order_continuous",
        "finite exponents unbounded" + id_of(ws.unbounded_finite));
  } else {
    add("order_continuous",
        oi.atoms_pinf.infinite
            ? "infinitely many exponent-inf atoms" + id_of(ws.atoms_pinf_infinite)
            : "nonatomic exponent-inf part of measure " +
                  fmt(oi.cell_measure_pinf) + id_of(ws.cell_pinf));
  }

  add("uniformly_convex_component",
      r.uniformly_convex_component
          ? "global exponent range [" + fmt(s.p_minus) + ", " + fmt(s.p_plus) +
                "] stays inside (1, inf)"
          : "global exponent range [" + fmt(s.p_minus) + ", " + fmt(s.p_plus) +
                "] touches 1 or inf (p_minus" + id_of(ws.p_minus_src) +
                ", p_plus" + id_of(ws.p_plus_src) + ")");

  if (r.reflexive) {
    add("reflexive",
        s.p_minus_star
            ? "exponents in (1, inf) range over [" + fmt(*s.p_minus_star) +
                  ", " + fmt(*s.p_plus_star) +
                  "] and the exponent-{1, inf} part is " +
                  count_str(oi.atoms_p1 + oi.atoms_pinf) + " atoms"
            : "no exponents strictly inside (1, inf); exponent-{1, inf} part "
              "is finitely many atoms");
  } else if (!star_ok) {
    add("reflexive", *s.p_minus_star <= 1.0
                         ? "exponents above 1 approach 1" +
                               id_of(ws.off_one_approach)
                         : "finite exponents unbounded" +
                               id_of(ws.unbounded_finite));
  } else {
    add("reflexive", "exponent-{1, inf} part is not finitely many atoms (" +
                         count_str(oi.atoms_p1) + " / " +
                         count_str(oi.atoms_pinf) + " atoms, cell measures " +
                         fmt(oi.cell_measure_p1) + " / " +
                         fmt(oi.cell_measure_pinf) + ")");
  }

  if (r.w_fpp) {
    add("w_fpp", "finite exponents bounded, finitely many exponent-inf atoms, "
                 "no nonatomic exponent-{1, inf} mass");
  } else if (!finite_part_bounded) {
    add("w_fpp", "finite exponents unbounded" + id_of(ws.unbounded_finite));
  } else if (oi.atoms_pinf.infinite) {
    add("w_fpp",
        "infinitely many exponent-inf atoms" + id_of(ws.atoms_pinf_infinite));
  } else {
    add("w_fpp", "nonatomic exponent-{1, inf} mass (measures " +
                     fmt(oi.cell_measure_p1) + " / " +
                     fmt(oi.cell_measure_pinf) + ")" +
                     id_of(oi.cell_measure_p1 > 0.0 ? ws.cell_p1 : ws.cell_pinf));
  }

  if (unbounded_finite) {
    add("isometric_linfty",
        "finite exponents unbounded" + id_of(ws.unbounded_finite));
  } else if (oi.atoms_pinf.infinite) {
    add("isometric_linfty",
        "infinitely many exponent-inf atoms" + id_of(ws.atoms_pinf_infinite));
  } else if (oi.cell_measure_pinf > 0.0) {
    add("isometric_linfty", "nonatomic exponent-inf part of measure " +
                                fmt(oi.cell_measure_pinf) + id_of(ws.cell_pinf));
  } else {
    add("isometric_linfty", "finite exponents bounded, " +
                                count_str(oi.atoms_pinf) +
                                " exponent-inf atoms, no exponent-inf cells");
  }

  if (oi.atoms_p1.infinite) {
    add("isometric_l1",
        "infinitely many exponent-1 atoms" + id_of(ws.atoms_p1_infinite));
  } else if (oi.cell_measure_p1 > 0.0) {
    add("isometric_l1", "nonatomic exponent-1 part of measure " +
                            fmt(oi.cell_measure_p1) + id_of(ws.cell_p1));
  } else if (r.isometric_linfty) {
    add("isometric_l1", "inherited from the isometric sup-norm copy");
  } else {
    add("isometric_l1", "only " + count_str(oi.atoms_p1) +
                            " exponent-1 atoms and no exponent-1 cells");
  }

  add("aic_l1", "coincides with isometric_l1 for these spaces");

  if (r.hereditary_l1_fpp_subspace) {
    add("hereditary_l1_fpp_subspace",
        "exponents above 1 approach 1" + id_of(ws.off_one_approach));
  } else if (s.p_minus_off_one) {
    add("hereditary_l1_fpp_subspace",
        "exponents above 1 are bounded below by " + fmt(*s.p_minus_off_one));
  } else {
    add("hereditary_l1_fpp_subspace", "no exponents above 1");
  }

  add("reflexive_subspaces_have_fpp",
      r.reflexive_subspaces_have_fpp
          ? "global exponent bound " + fmt(s.p_plus)
          : "exponent supremum is inf" + id_of(ws.p_plus_src));

  return r;
}

std::vector<std::string> consistency_violations(const ClassificationReport& r) {
  std::vector<std::string> v;
  if (r.reflexive && !r.w_fpp) v.push_back("reflexive => w_fpp");
  if (r.isometric_linfty && !r.isometric_l1) {
    v.push_back("isometric_linfty => isometric_l1");
  }
  if (r.aic_l1 != r.isometric_l1) v.push_back("aic_l1 == isometric_l1");
  if (r.reflexive && r.isometric_l1) v.push_back("reflexive => !isometric_l1");
  if (r.reflexive && !r.delta2) v.push_back("reflexive => delta2");
  if (r.reflexive && !r.order_continuous) {
    v.push_back("reflexive => order_continuous");
  }
  return v;
}

}  // namespace vlex
