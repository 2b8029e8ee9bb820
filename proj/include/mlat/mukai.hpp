#pragma once

// The Mukai lattice H⁰ ⊕ H² ⊕ H⁴ of an elliptic Abelian surface, in coordinates
// (r, e, f, e2, f2, e3, f3, a) with NS = U1 = <e, f> and pairing ξ·ξ' - r·a' - r'·a.

#include <array>
#include <string>

#include "mlat/weyl.hpp"

namespace mlat {

struct DecisionDegenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMukaiRank = 8;

struct MukaiVector {
  Int r = 0;
  std::array<Int, 6> xi{};
  Int a = 0;

  IntVector coords() const { return {r, xi[0], xi[1], xi[2], xi[3], xi[4], xi[5], a}; }
  IntVector h2() const { return IntVector(xi.begin(), xi.end()); }

  static MukaiVector from_coords(const IntVector& c) {
    if (c.size() != kMukaiRank) throw ArgumentError("a Mukai vector has 8 coordinates");
    return {c[0], {c[1], c[2], c[3], c[4], c[5], c[6]}, c[7]};
  }
  static MukaiVector make(Int r, const IntVector& xi, Int a) {
    if (xi.size() != 6) throw ArgumentError("the H2 component has 6 coordinates");
    return {r, {xi[0], xi[1], xi[2], xi[3], xi[4], xi[5]}, a};
  }
  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

inline IntVector mukai_coords(Int r, const IntVector& xi, Int a) { return MukaiVector::make(r, xi, a).coords(); }

/// H² component of a Mukai coordinate vector (Int or Rational).
template <class T>
std::vector<T> h2_part(const std::vector<T>& x) {
  return std::vector<T>(x.begin() + 1, x.begin() + 7);
}

inline IntegerLattice mukai_lattice() {
  IntMatrix g(kMukaiRank, kMukaiRank);
  for (std::size_t i = 1; i < 7; i += 2) g(i, i + 1) = g(i + 1, i) = 1;
  g(0, 7) = g(7, 0) = -1;
  return IntegerLattice(g, "Mukai");
}

inline Int mukai_pairing(const MukaiVector& x, const MukaiVector& y) {
  const IntVector a = x.h2(), b = y.h2();
  const IntMatrix g = hyperbolic_sum(3).gram();
  return checked::sub(checked::sub(dot(a, g * b), checked::mul(x.r, y.a)), checked::mul(y.r, x.a));
}

/// Lattice model with ample class ω = e + t·f and period plane span(e2+f2, e3+f3).
class MukaiModel {
 public:
  explicit MukaiModel(Int t = 2, bool elliptic_marking = true)
      : t_(t), elliptic_marking_(elliptic_marking), lattice_(share(mukai_lattice())) {
    if (t < 2) throw ArgumentError("ample parameter t must be >= 2");
  }

  Int t() const { return t_; }
  bool elliptic_marking() const { return elliptic_marking_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const IntegerLattice& lattice() const { return *lattice_; }

  IntVector omega_h2() const { return {1, t_, 0, 0, 0, 0}; }
  IntVector omega() const { return mukai_coords(0, omega_h2(), 0); }
  IntVector rho1() const { return mukai_coords(0, {0, 0, 1, 1, 0, 0}, 0); }
  IntVector rho2() const { return mukai_coords(0, {0, 0, 0, 0, 1, 1}, 0); }

  /// ε_S = {ω, ρ1, ρ2, (1,0,-1)}.
  OrientationDatum eps_S() const {
    return OrientationDatum(*lattice_, {omega(), rho1(), rho2(), mukai_coords(1, IntVector(6, 0), -1)});
  }

  /// r ≥ 0, ξ ∈ NS, and for r = 0 either ξ ≠ 0 with ξ·ω > 0 or ξ = 0 with a > 0.
  bool is_mukai_vector(const MukaiVector& x) const {
    if (x.r < 0) return false;
    for (std::size_t i = 2; i < 6; ++i)
      if (x.xi[i] != 0) return false;
    if (x.r > 0) return true;
    const IntVector xi = x.h2();
    const bool zero = std::all_of(xi.begin(), xi.end(), [](Int c) { return c == 0; });
    if (zero) return x.a > 0;
    return dot(xi, hyperbolic_sum(3).gram() * omega_h2()) > 0;
  }

 private:
  Int t_;
  bool elliptic_marking_;
  LatticePtr lattice_;
};

/// (m, k)-triple: v = m·w with w primitive, w² = 2k, k > 2.
struct MkTriple {
  Int m = 1;
  Int k = 3;
  Int t = 2;
  MukaiVector w{1, {}, -3};

  static MkTriple standard(Int m, Int k, Int t = 2) {
    MkTriple tr{m, k, t, MukaiVector{1, {}, -k}};
    tr.validate();
    return tr;
  }

  void validate() const {
    if (m < 1) throw ArgumentError("m must be >= 1");
    if (k <= 2) throw PreconditionError("k must be > 2");
    if (content(w.coords()) != 1) throw ArgumentError("w must be primitive");
    if (mukai_pairing(w, w) != 2 * k) throw ArgumentError("w must have square 2k");
  }

  IntVector v() const { return scale(m, w.coords()); }
};

/// v⊥ in the Mukai lattice. For v = m(1,0,-k) the basis is {e, f, e2, f2, e3, f3, (1,0,k)}
/// with Gram U⊕U⊕U⊕<-2k>; otherwise the HNF basis of the kernel.
inline IntegerLattice v_perp(const IntVector& v, const LatticePtr& mukai) {
  if (v.size() != kMukaiRank) throw ArgumentError("v must have 8 coordinates");
  if (content(v) == 0) throw ArgumentError("v_perp of the zero vector");
  if (mukai->square(v) <= 0) throw ArgumentError("v_perp needs v² > 0");
  const Int m = v[0];
  bool standard = m > 0 && v[7] % m == 0 && v[7] < 0;
  for (std::size_t i = 1; i < 7; ++i) standard = standard && v[i] == 0;
  if (standard) {
    const Int k = -v[7] / m;
    IntMatrix b(kMukaiRank, 7);
    for (std::size_t i = 0; i < 6; ++i) b(i + 1, i) = 1;
    b(0, 6) = 1;
    b(7, 6) = k;
    return IntegerLattice::sublattice(mukai, b, "v-perp");
  }
  const IntegerLattice line = IntegerLattice::sublattice(mukai, IntMatrix::from_columns({v}));
  return orth_complement(line, "v-perp");
}

// ------------------------------------------------------------------ FM actions

enum class FmKind { Tensor, Poincare, Dual, PoincareDual, Elliptic };

inline std::string to_string(FmKind k) {
  switch (k) {
    case FmKind::Tensor: return "tensor";
    case FmKind::Poincare: return "poincare";
    case FmKind::Dual: return "dual";
    case FmKind::PoincareDual: return "poincare_dual";
    case FmKind::Elliptic: return "elliptic";
  }
  return "?";
}

inline FmKind fm_kind_from_string(const std::string& s) {
  for (FmKind k : {FmKind::Tensor, FmKind::Poincare, FmKind::Dual, FmKind::PoincareDual, FmKind::Elliptic})
    if (to_string(k) == s) return k;
  throw ArgumentError("unknown FM action '" + s + "'");
}

/// Cohomological action on the Mukai lattice, with the marking ξ̂ = ξ. `c` is the
/// NS class of the line bundle for Tensor (6 H² coordinates, supported on U1).
inline Isometry fm_action(FmKind kind, const MukaiModel& model, const IntVector& c = {}) {
  const IntegerLattice& l = model.lattice();
  IntMatrix m(kMukaiRank, kMukaiRank);
  switch (kind) {
    case FmKind::Tensor: {
      if (c.size() != 6) throw ArgumentError("tensor needs an NS class with 6 coordinates");
      for (std::size_t i = 2; i < 6; ++i)
        if (c[i] != 0) throw PreconditionError("tensor class must lie in NS = U1");
      const IntMatrix g = hyperbolic_sum(3).gram();
      const IntVector gc = g * c;
      m.set_col(0, mukai_coords(1, c, dot(c, gc) / 2));
      for (std::size_t i = 0; i < 6; ++i) {
        m(i + 1, i + 1) = 1;
        m(7, i + 1) = gc[i];
      }
      m(7, 7) = 1;
      break;
    }
    case FmKind::Poincare:
    case FmKind::PoincareDual: {
      const Int s = kind == FmKind::Poincare ? -1 : 1;
      m(7, 0) = 1;
      m(0, 7) = 1;
      for (std::size_t i = 1; i < 7; ++i) m(i, i) = s;
      break;
    }
    case FmKind::Dual:
      m = IntMatrix::identity(kMukaiRank);
      for (std::size_t i = 1; i < 7; ++i) m(i, i) = -1;
      break;
    case FmKind::Elliptic: {
      if (!model.elliptic_marking()) throw PreconditionError("elliptic action needs the U1 = <e,f> marking");
      m.set_col(0, {0, 1, 0, 0, 0, 0, 0, 1});    // (1,0,0) ↦ (0,e,1)
      m.set_col(7, {0, 0, -1, 0, 0, 0, 0, 0});   // (0,0,1) ↦ (0,-f,0)
      m.set_col(1, {-1, 0, -1, 0, 0, 0, 0, 0});  // (0,e,0) ↦ (-1,-f,0)
      m.set_col(2, {0, 0, 0, 0, 0, 0, 0, 1});    // (0,f,0) ↦ (0,0,1)
      for (std::size_t i = 3; i < 7; ++i) m(i, i) = -1;
      break;
    }
  }
  return Isometry(l, l, m);
}

inline int epsilon_ori(const Isometry& phi, const MukaiModel& model) { return ori_char(phi, model.eps_S()); }

namespace detail {

/// True when phi maps span(ρ1, ρ2) onto itself preserving its orientation.
inline bool preserves_period(const Isometry& phi, const MukaiModel& model) {
  IntMatrix block(2, 2);
  const IntVector rhos[2] = {model.rho1(), model.rho2()};
  for (std::size_t j = 0; j < 2; ++j) {
    const IntVector x = phi(rhos[j]);
    if (x[0] != 0 || x[1] != 0 || x[2] != 0 || x[7] != 0 || x[3] != x[4] || x[5] != x[6]) return false;
    block(0, j) = x[3];
    block(1, j) = x[5];
  }
  return determinant(block) > 0;
}

}  // namespace detail

/// Orientation via the Kähler-class criterion: the test class built from φ(1,0,0),
/// φ(0,0,1) and φ(0,ω,-ω²/2) must lie in the positive cone component of ω.
inline int hodge_ori(const Isometry& phi, const MukaiModel& model) {
  const IntegerLattice& l = model.lattice();
  if (phi.source().gram() != l.gram() || phi.target().gram() != l.gram())
    throw ArgumentError("hodge_ori needs an isometry of the Mukai lattice");
  if (!detail::preserves_period(phi, model)) throw PreconditionError("not a Hodge isometry of the lattice model");

  const Int t = model.t();  // ω²/2
  const IntVector w = model.omega_h2();
  const IntVector big_omega = mukai_coords(0, w, -t);
  const IntVector one = mukai_coords(1, IntVector(6, 0), 0);
  const IntVector pt = mukai_coords(0, IntVector(6, 0), 1);
  const Int r = phi(pt)[0];
  const Int chi = phi(one)[0];
  const Int chi_w = phi(big_omega)[0];
  const IntVector u0 = mukai_coords(-r, IntVector(6, 0), chi);
  const IntVector u1 = mukai_coords(0, scale(-r, w), checked::add(checked::mul(r, t), chi_w));
  const RatVector p0 = to_rational(h2_part(phi(u0)));
  const RatVector p1 = to_rational(h2_part(phi(u1)));

  RatVector cls;
  if (r != 0) {
    const Rational rr(r);
    cls = scale(Rational(chi_w) / rr + Rational(t), p0) - scale(Rational(chi) / rr - Rational(t), p1);
  } else {
    cls = scale(Rational(chi), to_rational(h2_part(phi(big_omega)))) -
          scale(Rational(chi_w), to_rational(h2_part(phi(one)))) - scale(Rational(t), p0 - p1);
  }
  const IntegerLattice h2 = hyperbolic_sum(3);
  const Rational sq = h2.inner(cls, cls);
  if (sq.sign() <= 0) throw DecisionDegenerate("test class has square " + sq.str() + " <= 0");
  return h2.inner(cls, to_rational(w)).sign() > 0 ? 0 : 1;
}

}  // namespace mlat
