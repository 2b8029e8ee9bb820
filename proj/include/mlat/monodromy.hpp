#pragma once

// Words in the elementary deformation and Fourier–Mukai morphisms, their images on
// the Mukai lattice, the sign-twisted restriction to v⊥ and N-membership certificates.

#include <string>
#include <vector>

#include "mlat/mukai.hpp"

namespace mlat {

enum class TokenKind { SurfaceLift, TensorL, Poincare, PoincareDual, Elliptic, CongruenceId };

inline std::string to_string(TokenKind k) {
  switch (k) {
    case TokenKind::SurfaceLift: return "surface_lift";
    case TokenKind::TensorL: return "tensor";
    case TokenKind::Poincare: return "poincare";
    case TokenKind::PoincareDual: return "poincare_dual";
    case TokenKind::Elliptic: return "elliptic";
    case TokenKind::CongruenceId: return "congruence_id";
  }
  return "?";
}

inline TokenKind token_kind_from_string(const std::string& s) {
  for (TokenKind k : {TokenKind::SurfaceLift, TokenKind::TensorL, TokenKind::Poincare, TokenKind::PoincareDual,
                      TokenKind::Elliptic, TokenKind::CongruenceId})
    if (to_string(k) == s) return k;
  throw ArgumentError("unknown token kind '" + s + "'");
}

/// One elementary morphism. `lift` is the 6×6 matrix of a surface lift on H², `cls`
/// the NS class of a tensor token; `inverse` marks the inverse morphism.
struct Token {
  TokenKind kind = TokenKind::CongruenceId;
  IntMatrix lift;
  IntVector cls;
  bool inverse = false;

  static Token surface_lift(IntMatrix h) { return {TokenKind::SurfaceLift, std::move(h), {}, false}; }
  static Token tensor(IntVector c) { return {TokenKind::TensorL, {}, std::move(c), false}; }
  static Token of(TokenKind k) { return {k, {}, {}, false}; }
  Token inverted() const {
    Token t = *this;
    t.inverse = !t.inverse;
    return t;
  }
};

struct GroupoidWord {
  MkTriple triple;
  std::vector<Token> tokens;
};

/// id ⊕ h ⊕ id for h an isometry of the H² block U⊕U⊕U.
inline Isometry extend_surface(const IntMatrix& h, const MukaiModel& model) {
  if (h.rows() != 6 || h.cols() != 6) throw ArgumentError("surface lift must be 6x6");
  IntMatrix m = IntMatrix::identity(kMukaiRank);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i + 1, j + 1) = h(i, j);
  return Isometry(model.lattice(), model.lattice(), m);
}

/// Surface lifts are deformation images: they must lie in SO⁺(U⊕U⊕U).
inline void require_so_plus_h2(const IntMatrix& h) {
  const IntegerLattice h2 = hyperbolic_sum(3);
  const Isometry g(h2, h2, h);
  if (det_char(g) != 1 || ori_char(g, canonical_orientation_u3(h2)) != 0)
    throw PreconditionError("surface lift must have det 1 and ori 0");
}

inline Isometry token_isometry(const Token& t, const MukaiModel& model) {
  Isometry g = Isometry::identity(model.lattice());
  switch (t.kind) {
    case TokenKind::SurfaceLift:
      require_so_plus_h2(t.lift);
      g = extend_surface(t.lift, model);
      break;
    case TokenKind::TensorL: g = fm_action(FmKind::Tensor, model, t.cls); break;
    case TokenKind::Poincare: g = fm_action(FmKind::Poincare, model); break;
    case TokenKind::PoincareDual: g = fm_action(FmKind::PoincareDual, model); break;
    case TokenKind::Elliptic: g = fm_action(FmKind::Elliptic, model); break;
    case TokenKind::CongruenceId: break;
  }
  return t.inverse ? g.inverse() : g;
}

struct WordImage {
  Isometry composite;
  bool fixes_v;
};

/// Composite of the token images, applied left to right in path order.
inline WordImage eval_phi_tilde(const GroupoidWord& w, const MukaiModel& model) {
  w.triple.validate();
  Isometry g = Isometry::identity(model.lattice());
  for (const Token& t : w.tokens) g = token_isometry(t, model) * g;
  const IntVector v = w.triple.v();
  return {g, g(v) == v};
}

/// (-1)^ori(g) · g restricted to v⊥ in its canonical basis.
inline Isometry psi_restrict(const Isometry& g, const MkTriple& triple, const MukaiModel& model) {
  const IntVector v = triple.v();
  if (g(v) != v) throw PreconditionError("psi_restrict: g does not fix v");
  const IntegerLattice vp = v_perp(v, model.lattice_ptr());
  IntMatrix m = restricted_matrix(g, vp, vp);
  if (epsilon_ori(g, model) == 1) m = -m;
  return Isometry(vp, vp, m);
}

struct MonodromyCertificate {
  GroupoidWord word;
  Isometry composite;
  int ori = 0;  // of the composite, against ε_S
  Isometry restricted;
  int det = 1;  // characters of the restricted isometry
  int restricted_ori = 0;
  int disc = 1;  // ±1, or 0 when disc is not ±id
  bool in_W = false;
  bool in_N = false;
};

inline MonodromyCertificate certify(const GroupoidWord& w, const MukaiModel& model) {
  const WordImage img = eval_phi_tilde(w, model);
  if (!img.fixes_v) throw PreconditionError("word does not fix v");
  const Isometry res = psi_restrict(img.composite, w.triple, model);
  const OrientationDatum eps = canonical_orientation_u3(res.source());
  MonodromyCertificate c{w, img.composite, epsilon_ori(img.composite, model), res};
  c.det = det_char(res);
  c.restricted_ori = ori_char(res, eps);
  c.disc = disc_sign(res);
  c.in_W = in_W(res, eps);
  c.in_N = in_N(res, eps);
  return c;
}

/// [TensorL(p·ω), PoincareDual, Poincare⁻¹, TensorL(p·ω)], whose image is the duality D.
inline GroupoidWord propdual_word(const MkTriple& triple, Int p, const MukaiModel& model) {
  if (p < 1) throw ArgumentError("p must be >= 1");
  const IntVector ph = scale(p, model.omega_h2());
  return {triple,
          {Token::tensor(ph), Token::of(TokenKind::PoincareDual), Token::of(TokenKind::Poincare).inverted(),
           Token::tensor(ph)}};
}

inline MonodromyCertificate propdual_certificate(const MkTriple& triple, Int p, const MukaiModel& model) {
  return certify(propdual_word(triple, p, model), model);
}

inline MonodromyCertificate surface_lift_in_N(const IntMatrix& h, const MkTriple& triple, const MukaiModel& model) {
  return certify(GroupoidWord{triple, {Token::surface_lift(h)}}, model);
}

/// R_s ∘ R_{s1} on the Mukai lattice, s = (1,0,1), s1 = (1,0,-1).
inline Isometry involution_rs_rs1(const MukaiModel& model) {
  const IntVector s = mukai_coords(1, IntVector(6, 0), 1);
  const IntVector s1 = mukai_coords(1, IntVector(6, 0), -1);
  return reflection(s, model.lattice()) * reflection(s1, model.lattice());
}

/// i*: v⊥ → w⊥ in the shared basis is multiplication by m.
inline IntVector istar(const IntVector& x, Int m) { return scale(m, x); }

/// i♯: conjugation by the similitude; on the shared basis it keeps the matrix.
inline Isometry isharp(const Isometry& g, const IntegerLattice& w_perp) {
  if (g.source().gram() != w_perp.gram()) throw ArgumentError("isharp: v⊥ and w⊥ do not share a basis");
  return Isometry(w_perp, w_perp, g.matrix());
}

}  // namespace mlat
