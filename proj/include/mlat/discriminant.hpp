#pragma once

// Discriminant groups A_Λ = Λ∨/Λ with their finite quadratic forms, the induced
// action of isometries, Nikulin glue for primitive sublattices of unimodular
// lattices, and the extension of isometry pairs across the glue.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mlat/isometry.hpp"

namespace mlat {

struct ExtensionObstructed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Λ∨/Λ ≅ ⊕ Z/d_i with d_1 | d_2 | ... and every d_i > 1.
///
/// Generator i is represented by the rational lift V[:, i]/d_i (lattice coordinates),
/// where U·G·V is the Smith form of the Gram matrix G. Group elements are integer
/// coordinate vectors reduced modulo the invariants.
class DiscriminantData {
 public:
  static DiscriminantData of(const IntegerLattice& l) {
    DiscriminantData d;
    d.gram_ = to_rational(l.gram());
    // U·G·V = D: lifts are columns of V over d_i, and since V⁻¹G⁻¹ = D⁻¹U the i-th
    // coordinate of y ∈ Λ∨ is U_i·(G·y) mod d_i. Both are reduced to keep entries small.
    SmithForm s = smith_normal_form(l.gram());
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < l.rank(); ++i) {
      Int di = s.invariant(i);
      if (di == 1) continue;
      d.invariants_.push_back(di);
      RatVector lift(l.rank());
      for (std::size_t r = 0; r < l.rank(); ++r) lift[r] = Rational(mod(s.right(r, i), di), di);
      d.lifts_.push_back(std::move(lift));
      IntVector row = s.left.row(i);
      for (Int& x : row) x = mod(x, di);
      rows.push_back(std::move(row));
    }
    d.coord_rows_ = rows.empty() ? IntMatrix(0, l.rank()) : IntMatrix::from_rows(rows);
    return d;
  }

  const std::vector<Int>& invariants() const { return invariants_; }
  const std::vector<RatVector>& generator_lifts() const { return lifts_; }
  std::size_t length() const { return invariants_.size(); }
  bool trivial() const { return invariants_.empty(); }
  bool cyclic() const { return invariants_.size() <= 1; }
  std::size_t dimension() const { return gram_.rows(); }

  Int order() const {
    Int o = 1;
    for (Int d : invariants_) o = checked::mul(o, d);
    return o;
  }

  IntVector reduce(IntVector c) const {
    require_len(c);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod(c[i], invariants_[i]);
    return c;
  }

  /// Class of a dual-lattice vector (lattice coordinates over Q).
  IntVector coords_of(const RatVector& y) const {
    if (y.size() != dimension()) throw ArgumentError("dual vector has wrong dimension");
    const RatVector gy = gram_ * y;
    if (!is_integral(gy)) throw ArgumentError("vector is not in the dual lattice");
    IntVector z = to_integer(gy);
    for (Int& x : z) x = mod(x, order());
    IntVector c(length());
    for (std::size_t i = 0; i < length(); ++i) c[i] = mod(dot(coord_rows_.row(i), z), invariants_[i]);
    return c;
  }

  RatVector lift_of(const IntVector& c) const {
    require_len(c);
    RatVector y(dimension());
    for (std::size_t i = 0; i < length(); ++i) y = y + scale(Rational(c[i]), lifts_[i]);
    return y;
  }

  /// q̄(x) in [0, 2).
  Rational qbar(const IntVector& c) const {
    RatVector y = lift_of(c);
    return dot(y, gram_ * y).reduce_mod(2);
  }

  /// b̄(x, y) in [0, 1).
  Rational bilinear(const IntVector& a, const IntVector& b) const {
    return dot(lift_of(a), gram_ * lift_of(b)).reduce_mod(1);
  }

  IntVector generator(std::size_t i) const {
    IntVector c(length(), 0);
    c.at(i) = 1;
    return c;
  }

  std::vector<Rational> qbar_generators() const {
    std::vector<Rational> q;
    for (std::size_t i = 0; i < length(); ++i) q.push_back(qbar(generator(i)));
    return q;
  }

  /// All group elements in lexicographic coordinate order.
  std::vector<IntVector> elements() const {
    std::vector<IntVector> out;
    IntVector c(length(), 0);
    while (true) {
      out.push_back(c);
      std::size_t i = length();
      while (i > 0) {
        --i;
        if (++c[i] < invariants_[i]) goto next;
        c[i] = 0;
      }
      return out;
    next:;
    }
  }

 private:
  void require_len(const IntVector& c) const {
    if (c.size() != length()) throw ArgumentError("discriminant element has wrong length");
  }

  RatMatrix gram_;
  std::vector<Int> invariants_;
  std::vector<RatVector> lifts_;
  IntMatrix coord_rows_;  // rows of U mod d_i
};

inline DiscriminantData disc_group(const IntegerLattice& l) { return DiscriminantData::of(l); }

/// Homomorphism A → B between discriminant groups; column j is the image of generator j.
class DiscHom {
 public:
  DiscHom(std::vector<Int> source_inv, std::vector<Int> target_inv, IntMatrix m)
      : src_(std::move(source_inv)), tgt_(std::move(target_inv)), m_(std::move(m)) {
    if (m_.rows() != tgt_.size() || m_.cols() != src_.size()) throw ArgumentError("DiscHom matrix shape mismatch");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = 0; j < m_.cols(); ++j) m_(i, j) = mod(m_(i, j), tgt_[i]);
  }

  static DiscHom identity(const std::vector<Int>& inv) {
    return DiscHom(inv, inv, IntMatrix::identity(inv.size()));
  }
  static DiscHom scalar(const std::vector<Int>& inv, Int a) {
    return DiscHom(inv, inv, a * IntMatrix::identity(inv.size()));
  }

  const std::vector<Int>& source_invariants() const { return src_; }
  const std::vector<Int>& target_invariants() const { return tgt_; }
  const IntMatrix& matrix() const { return m_; }

  IntVector operator()(const IntVector& c) const {
    IntVector r = m_ * c;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(r[i], tgt_[i]);
    return r;
  }

  /// (a * b) = a ∘ b
  friend DiscHom operator*(const DiscHom& a, const DiscHom& b) {
    if (a.src_ != b.tgt_) throw ArgumentError("composition of incompatible discriminant maps");
    return DiscHom(b.src_, a.tgt_, a.m_ * b.m_);
  }

  friend bool operator==(const DiscHom& a, const DiscHom& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.m_ == b.m_;
  }
  friend bool operator!=(const DiscHom& a, const DiscHom& b) { return !(a == b); }
  friend bool operator<(const DiscHom& a, const DiscHom& b) { return a.m_ < b.m_; }

  bool is_scalar(Int a) const { return src_ == tgt_ && *this == scalar(src_, a); }
  bool is_identity() const { return is_scalar(1); }

  std::string str() const { return m_.str(); }

 private:
  std::vector<Int> src_, tgt_;
  IntMatrix m_;
};

/// Induced map disc(g): A_source → A_target.
inline DiscHom disc_map(const Isometry& g) {
  const DiscriminantData a = disc_group(g.source());
  const DiscriminantData b = disc_group(g.target());
  IntMatrix m(b.length(), a.length());
  for (std::size_t j = 0; j < a.length(); ++j) m.set_col(j, b.coords_of(g(a.generator_lifts()[j])));
  return DiscHom(a.invariants(), b.invariants(), m);
}

/// Residues a mod 2k with a² ≡ 1 mod 4k: the automorphisms of Z/2k preserving q̄(gen) = −1/(2k).
inline std::vector<Int> enum_disc_autos(Int k) {
  if (k < 1) throw ArgumentError("enum_disc_autos requires k >= 1");
  const Int n = checked::mul(2, k), m4 = checked::mul(4, k);
  std::vector<Int> out;
  for (Int a = 1; a <= n; ++a) {
    const Int r = a % n;
    if (gcd(r, n) != 1) continue;
    if (checked::mul(r, r) % m4 == 1 % m4) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Brute-force enumeration of O(A) for |A| <= 2000 (q̄-preserving automorphisms).
inline std::vector<DiscHom> orthogonal_group(const DiscriminantData& a) {
  if (a.order() > 2000) throw ArgumentError("orthogonal_group: discriminant group too large to enumerate");
  const auto elems = a.elements();
  const std::size_t n = a.length();
  std::vector<DiscHom> out;
  std::vector<IntVector> images(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      DiscHom h(a.invariants(), a.invariants(), IntMatrix::from_columns(images));
      std::vector<IntVector> seen;
      for (const auto& x : elems) seen.push_back(h(x));
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) == seen.end()) out.push_back(std::move(h));
      return;
    }
    const IntVector gi = a.generator(i);
    for (const auto& c : elems) {
      bool ok = a.qbar(c) == a.qbar(gi);
      // order of the image must divide d_i
      IntVector dc = scale(a.invariants()[i], c);
      ok = ok && a.reduce(dc) == IntVector(n, 0);
      for (std::size_t j = 0; ok && j < i; ++j) ok = a.bilinear(c, images[j]) == a.bilinear(gi, a.generator(j));
      if (!ok) continue;
      images[i] = c;
      rec(i + 1);
    }
  };
  if (n == 0) return {DiscHom::identity({})};
  rec(0);
  return out;
}

/// Nikulin glue of a primitive sublattice S of a unimodular lattice and its complement K.
struct GlueData {
  IntegerLattice s;
  IntegerLattice k;
  DiscriminantData disc_s;
  DiscriminantData disc_k;
  DiscHom gamma;      // A_S → A_K, anti-isometry
  DiscHom gamma_inv;  // A_K → A_S
  /// Generators of H = L/(S⊕K) ⊂ A_S ⊕ A_K as (A_S part, A_K part).
  std::vector<std::pair<IntVector, IntVector>> glue_group;
};

namespace detail {

/// Orthogonal projection of an ambient vector onto span(sub), in sub coordinates.
inline RatVector project(const IntegerLattice& sub, const IntVector& x) {
  const auto& emb = *sub.embedding();
  IntVector pairing = emb.basis.transpose() * (emb.ambient->gram() * x);
  return inverse(sub.gram()) * to_rational(pairing);
}

/// Map A_from → A_to sending the class of p_from(x) to the class of p_to(x), x ∈ L.
inline DiscHom glue_map(const IntegerLattice& from, const DiscriminantData& dfrom, const IntegerLattice& to,
                        const DiscriminantData& dto) {
  const auto& emb = *from.embedding();
  IntMatrix pairing = emb.basis.transpose() * emb.ambient->gram();
  IntMatrix m(dto.length(), dfrom.length());
  for (std::size_t j = 0; j < dfrom.length(); ++j) {
    RatVector want = to_rational(from.gram()) * dfrom.generator_lifts()[j];
    auto x = solve_integer(pairing, to_integer(want));
    if (!x) throw InternalError("no ambient vector realizes a dual class (ambient not unimodular?)");
    m.set_col(j, dto.coords_of(project(to, *x)));
  }
  return DiscHom(dfrom.invariants(), dto.invariants(), m);
}

}  // namespace detail

/// γ_SK with its verification: q̄_S(x) + q̄_K(γx) ≡ 0 mod 2 on generators, bilinear
/// parts opposite mod 1, and both projections of the glue group bijective.
inline GlueData glue(const IntegerLattice& s, const IntegerLattice& k) {
  if (!s.has_embedding() || !k.has_embedding()) throw PreconditionError("glue needs embedded sublattices");
  const auto& amb = *s.embedding()->ambient;
  if (!amb.unimodular()) throw PreconditionError("glue: ambient lattice is not unimodular");
  if (amb.gram() != k.embedding()->ambient->gram()) throw PreconditionError("glue: S and K live in different lattices");
  if (!is_primitive(s)) throw PreconditionError("glue: S is not primitive");
  if (!same_sublattice(orth_complement(s), k)) throw PreconditionError("glue: K is not the orthogonal complement of S");

  GlueData g{s, k, disc_group(s), disc_group(k), DiscHom::identity({}), DiscHom::identity({}), {}};
  if (g.disc_s.order() != g.disc_k.order()) throw InternalError("glue: |A_S| != |A_K|");
  g.gamma = detail::glue_map(s, g.disc_s, k, g.disc_k);
  g.gamma_inv = detail::glue_map(k, g.disc_k, s, g.disc_s);
  if (!(g.gamma_inv * g.gamma).is_identity() || !(g.gamma * g.gamma_inv).is_identity())
    throw InternalError("glue: projections of the glue group are not bijective");
  for (std::size_t i = 0; i < g.disc_s.length(); ++i) {
    IntVector x = g.disc_s.generator(i), gx = g.gamma(x);
    if ((g.disc_s.qbar(x) + g.disc_k.qbar(gx)).reduce_mod(2) != Rational(0))
      throw InternalError("glue: gamma is not an anti-isometry");
    for (std::size_t j = 0; j < i; ++j) {
      IntVector y = g.disc_s.generator(j);
      if ((g.disc_s.bilinear(x, y) + g.disc_k.bilinear(gx, g.gamma(y))).reduce_mod(1) != Rational(0))
        throw InternalError("glue: gamma does not reverse the bilinear form");
    }
    g.glue_group.emplace_back(x, gx);
  }
  return g;
}

/// The isometry of L restricting to phi on S1 and psi on K1 (Nikulin's criterion).
/// Throws ExtensionObstructed when disc(psi)∘γ1 ≠ γ2∘disc(phi).
inline Isometry extend_isometry(const Isometry& phi, const Isometry& psi, const GlueData& g1, const GlueData& g2) {
  if (phi.source().gram() != g1.s.gram() || phi.target().gram() != g2.s.gram() ||
      psi.source().gram() != g1.k.gram() || psi.target().gram() != g2.k.gram())
    throw ArgumentError("extend_isometry: maps do not match the glue data");
  const DiscHom lhs = disc_map(psi) * g1.gamma;
  const DiscHom rhs = g2.gamma * disc_map(phi);
  if (lhs != rhs)
    throw ExtensionObstructed("disc(psi)∘γ1 = " + lhs.str() + " differs from γ2∘disc(phi) = " + rhs.str());

  const auto& s1 = *g1.s.embedding();
  const auto& k1 = *g1.k.embedding();
  const auto& s2 = *g2.s.embedding();
  const auto& k2 = *g2.k.embedding();
  const std::size_t n = s1.ambient->rank();
  IntMatrix x(n, n), y(n, n);
  const IntMatrix ys = s2.basis * phi.matrix();
  const IntMatrix yk = k2.basis * psi.matrix();
  const std::size_t rs = g1.s.rank();
  for (std::size_t j = 0; j < rs; ++j) {
    x.set_col(j, s1.basis.col(j));
    y.set_col(j, ys.col(j));
  }
  for (std::size_t j = 0; j < g1.k.rank(); ++j) {
    x.set_col(rs + j, k1.basis.col(j));
    y.set_col(rs + j, yk.col(j));
  }
  RatMatrix ext = to_rational(y) * inverse(x);
  if (!is_integral(ext)) throw InternalError("rational extension is not integral despite compatible glue");
  return Isometry(*s1.ambient, *s2.ambient, to_integer(ext));
}

/// Matrix of g restricted to `from`, in coordinates of `to` (g(from) ⊆ to required).
inline IntMatrix restricted_matrix(const Isometry& g, const IntegerLattice& from, const IntegerLattice& to) {
  const auto& emb = *from.embedding();
  IntMatrix out(to.rank(), from.rank());
  for (std::size_t j = 0; j < from.rank(); ++j) {
    auto c = to.from_ambient(to_rational(g(emb.basis.col(j))));
    if (!c || !is_integral(*c)) throw ArgumentError("isometry does not map the sublattice into the target");
    out.set_col(j, to_integer(*c));
  }
  return out;
}

}  // namespace mlat
