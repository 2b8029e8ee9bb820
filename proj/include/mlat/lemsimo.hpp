#pragma once

// Constructive isometries of U⊕U⊕U moving a pair (ξ1, ξ2) of square 2k-2 vectors to
// (β1 - f, β2 - f) with β1, β2 ⊥ U1: targets, Nikulin extension, then the η and θ
// corrections for determinant and orientation.

#include <sstream>
#include <string>
#include <vector>

#include "mlat/companion.hpp"
#include "mlat/weyl.hpp"

namespace mlat {

/// The ambient lattice U1⊕U2⊕U3 with basis (e, f, e2, f2, e3, f3).
inline const LatticePtr& u3_ambient() {
  static const LatticePtr l = share(hyperbolic_sum(3));
  return l;
}

namespace u3 {
inline IntVector basis_vector(std::size_t i) {
  IntVector v(6, 0);
  v.at(i) = 1;
  return v;
}
inline IntVector e() { return basis_vector(0); }
inline IntVector f() { return basis_vector(1); }
}  // namespace u3

/// No isometry of L sends ξ_i to β_i - f for any β_i ⊥ U1: the pairing with e of
/// the image of a saturation generator would be the non-integer `witness`.
struct LemsimoObstructed : std::runtime_error {
  LemsimoObstructed(const std::string& what, Rational witness)
      : std::runtime_error(what), witness(witness) {}
  Rational witness;
};

struct LemsimoProblem {
  Int k = 3;
  IntVector xi1, xi2;
  Int search_bound = 10;

  Int l() const { return dot(xi1, u3_ambient()->gram() * xi2); }

  void validate() const {
    if (k <= 2) throw PreconditionError("lemsimo requires k > 2");
    if (search_bound < 0) throw ArgumentError("search bound must be non-negative");
    if (xi1.size() != 6 || xi2.size() != 6) throw ArgumentError("xi1, xi2 must have 6 coordinates");
    const Int sq = 2 * k - 2;
    const auto& g = *u3_ambient();
    if (g.square(xi1) != sq || g.square(xi2) != sq) throw PreconditionError("xi1, xi2 must have square 2k-2");
    if (content(xi1) != 1 || content(xi2) != 1) throw PreconditionError("xi1, xi2 must be primitive");
    if (xi1 == xi2 || xi1 == scale(Int{-1}, xi2)) throw PreconditionError("xi2 = ±xi1: rank-2 saturation required");
    const Int ll = l();
    if (ll == sq || ll == -sq) throw PreconditionError("<xi1, xi2> is degenerate (xi1·xi2 = ±(2k-2))");
  }
};

struct LemsimoTargets {
  IntVector beta1, beta2;
  IntegerLattice s1, s2;  // saturations of <ξ1, ξ2> and <β1 - f, β2 - f>
  Isometry phi;           // S1 → S2, φ(ξ_i) = β_i - f
  bool displayed;         // β from the closed formulas (otherwise from the fallback search)
};

struct LemsimoTrace {
  std::string targets;  // "displayed" or "searched"
  IntMatrix phi, psi, extension;
  IntVector isotropic1, isotropic2;
  bool eta_applied = false;
  bool theta_applied = false;
};

struct LemsimoSolution {
  Isometry g;
  IntVector beta1, beta2;
  LemsimoTrace trace;
};

namespace detail {

/// C with Ξ = X·C, for Ξ = [ξ1 ξ2] and X the saturation basis.
inline IntMatrix saturation_coords(const IntegerLattice& s, const IntVector& xi1, const IntVector& xi2) {
  IntMatrix c(2, 2);
  const IntVector* xis[2] = {&xi1, &xi2};
  for (std::size_t i = 0; i < 2; ++i) {
    auto coords = s.from_ambient(to_rational(*xis[i]));
    if (!coords || !is_integral(*coords)) throw InternalError("saturation does not contain its generators");
    c.set_col(i, to_integer(*coords));
  }
  return c;
}

/// φ: S1 → S2 sending the saturation basis to the columns of y, or nothing when
/// y is not integral or does not span a primitive sublattice.
inline std::optional<LemsimoTargets> targets_from_images(const IntegerLattice& s1, const RatMatrix& y,
                                                         IntVector beta1, IntVector beta2, bool displayed) {
  if (!is_integral(y)) return std::nullopt;
  const IntMatrix yi = to_integer(y);
  std::vector<IntVector> cols{yi.col(0), yi.col(1)};
  if (rank(yi) != 2) return std::nullopt;
  IntegerLattice s2 = reduced(saturate({cols[0], cols[1]}, u3_ambient(), "S2"));
  IntegerLattice span = IntegerLattice::sublattice(u3_ambient(), yi, "S2");
  if (!same_sublattice(s2, span)) return std::nullopt;
  IntMatrix m(2, 2);
  for (std::size_t j = 0; j < 2; ++j) m.set_col(j, to_integer(*s2.from_ambient(to_rational(cols[j]))));
  return LemsimoTargets{std::move(beta1), std::move(beta2), s1, s2, Isometry(s1, s2, m), displayed};
}

}  // namespace detail

/// β1 = e2 + (k-1)f2, β2 = l·f2 + (k-1)e3 + f3 with l = ξ1·ξ2, and φ on the saturation
/// S1 of <ξ1, ξ2>. When ⟨ξ1, ξ2⟩ is not saturated these β can fail to give an integral
/// or primitive image; then β_i = Σ C_ji z_j is searched with z_j ∈ U2⊕U3 realizing the
/// Gram matrix of S1. Throws LemsimoObstructed when no β ⊥ U1 can work.
inline LemsimoTargets build_targets(const LemsimoProblem& p) {
  p.validate();
  const Int k = p.k, ll = p.l();
  IntegerLattice s1 = reduced(saturate({p.xi1, p.xi2}, u3_ambient(), "S1"));
  const IntMatrix c = detail::saturation_coords(s1, p.xi1, p.xi2);
  const RatMatrix cinv = inverse(to_rational(c));
  RatVector ell(2);
  for (std::size_t j = 0; j < 2; ++j) {
    ell[j] = cinv(0, j) + cinv(1, j);
    if (!ell[j].is_integer()) {
      std::ostringstream os;
      os << "no isometry sends xi_i to beta_i - f with beta_i orthogonal to U1: a saturation generator would pair "
         << ell[j].str() << " with e";
      throw LemsimoObstructed(os.str(), ell[j]);
    }
  }

  const IntVector f = u3::f();
  const IntVector beta1{0, 0, 1, k - 1, 0, 0};
  const IntVector beta2{0, 0, 0, ll, k - 1, 1};
  RatMatrix b(6, 2);
  b.set_col(0, to_rational(beta1 - f));
  b.set_col(1, to_rational(beta2 - f));
  if (auto t = detail::targets_from_images(s1, b * cinv, beta1, beta2, true)) return *t;

  // fallback: z_j ∈ U2⊕U3 with Gram(z) = Gram(S1), y_j = z_j - ℓ_j f
  const IntMatrix& gs = s1.gram();
  const IntMatrix g4 = hyperbolic_sum(2).gram();
  auto embed = [](const IntVector& z) { return IntVector{0, 0, z[0], z[1], z[2], z[3]}; };
  const auto first = vectors_of_norm(g4, gs(0, 0), p.search_bound);
  const auto second = vectors_of_norm(g4, gs(1, 1), p.search_bound);
  for (const auto& z1 : first) {
    const IntVector gz1 = g4 * z1;
    for (const auto& z2 : second) {
      if (dot(gz1, z2) != gs(0, 1)) continue;
      const IntVector y1 = embed(z1) - scale(ell[0].to_int(), f);
      const IntVector y2 = embed(z2) - scale(ell[1].to_int(), f);
      const IntVector b1 = scale(c(0, 0), embed(z1)) + scale(c(1, 0), embed(z2));
      const IntVector b2 = scale(c(0, 1), embed(z1)) + scale(c(1, 1), embed(z2));
      if (auto t = detail::targets_from_images(s1, to_rational(IntMatrix::from_columns({y1, y2})), b1, b2, false))
        return *t;
    }
  }
  throw NotFound("targets", p.search_bound);
}

inline OrientationDatum u3_orientation() { return canonical_orientation_u3(*u3_ambient()); }

/// g ∈ SO⁺(U⊕U⊕U) with g(ξ_i) = β_i - f. Throws NotFound (with the stage) when a
/// bounded search is exhausted, LemsimoObstructed when no solution exists.
inline LemsimoSolution solve(const LemsimoProblem& p) {
  LemsimoTargets t = build_targets(p);
  const IntegerLattice k1 = reduced(orth_complement(t.s1, "K1"));
  const IntegerLattice k2 = reduced(orth_complement(t.s2, "K2"));
  const GlueData g1 = glue(t.s1, k1);
  const GlueData g2 = glue(t.s2, k2);

  const Int bound = p.search_bound;
  if (bound <= 0) throw NotFound("split K1", bound);
  const HyperbolicSplit sp1 = canonical_split(k1, t.s1.gram(), bound, "split K1");
  const HyperbolicSplit sp2 = canonical_split(k2, t.s1.gram(), bound, "split K2");
  const Isometry psi = find_companion(t.phi, g1, g2, bound, &sp1, &sp2);
  const Isometry ext = extend_isometry(t.phi, psi, g1, g2);

  LemsimoTrace trace{t.displayed ? "displayed" : "searched", t.phi.matrix(), psi.matrix(), ext.matrix(),
                     sp1.isotropic, sp2.isotropic};
  const Isometry id_s2 = Isometry::identity(t.s2);
  Isometry g = ext;
  if (det_char(g) == -1) {
    const Isometry eta = extend_isometry(id_s2, swap_hyperbolic(sp2), g2, g2);
    if (det_char(eta) != -1 || !disc_map(swap_hyperbolic(sp2)).is_identity())
      throw InternalError("eta must have det -1 and trivial discriminant action");
    g = eta * g;
    trace.eta_applied = true;
  }
  const OrientationDatum eps = u3_orientation();
  if (ori_char(g, eps) == 1) {
    const Isometry theta_k = negate_hyperbolic(sp2);
    const Isometry theta = extend_isometry(id_s2, theta_k, g2, g2);
    if (ori_char(theta, eps) != 1 || det_char(theta) != 1 || !disc_map(theta_k).is_identity())
      throw InternalError("theta must have ori 1, det 1 and trivial discriminant action");
    g = theta * g;
    trace.theta_applied = true;
  }

  const IntVector f = u3::f();
  if (det_char(g) != 1 || ori_char(g, eps) != 0 || g(p.xi1) != t.beta1 - f || g(p.xi2) != t.beta2 - f)
    throw InternalError("lemsimo postconditions failed");
  return LemsimoSolution{g, t.beta1, t.beta2, trace};
}

}  // namespace mlat
