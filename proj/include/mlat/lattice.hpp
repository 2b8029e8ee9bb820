#pragma once

// Even integral lattices: Gram forms, standard constructors, saturation,
// orthogonal complements and primitivity.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mlat/matrix.hpp"

namespace mlat {

class IntegerLattice;
using LatticePtr = std::shared_ptr<const IntegerLattice>;

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Sublattice data: generators as columns of `basis`, in ambient coordinates.
struct Embedding {
  LatticePtr ambient;
  IntMatrix basis;
};

/// A free Z-module with an even, symmetric, non-degenerate Gram form.
///
/// The representation is basis dependent: two lattices compare equal only if
/// their Gram matrices (and embeddings, when present) coincide entrywise.
class IntegerLattice {
 public:
  explicit IntegerLattice(IntMatrix gram, std::string label = {}) : gram_(std::move(gram)), label_(std::move(label)) {
    validate();
  }

  /// Sublattice of `ambient` spanned by the columns of `basis`.
  static IntegerLattice sublattice(LatticePtr ambient, IntMatrix basis, std::string label = {}) {
    if (!ambient) throw ArgumentError("sublattice without ambient lattice");
    if (basis.rows() != ambient->rank()) throw ArgumentError("embedding basis has wrong ambient dimension");
    IntMatrix gram = basis.transpose() * ambient->gram() * basis;
    IntegerLattice l(std::move(gram), std::move(label));
    l.embedding_ = Embedding{std::move(ambient), std::move(basis)};
    return l;
  }

  std::size_t rank() const { return gram_.rows(); }
  const IntMatrix& gram() const { return gram_; }
  const std::string& label() const { return label_; }
  const std::optional<Embedding>& embedding() const { return embedding_; }
  bool has_embedding() const { return embedding_.has_value(); }

  IntegerLattice with_label(std::string label) const {
    IntegerLattice l = *this;
    l.label_ = std::move(label);
    return l;
  }

  Int inner(const IntVector& x, const IntVector& y) const {
    require_dim(x);
    require_dim(y);
    return dot(x, gram_ * y);
  }
  Int square(const IntVector& x) const { return inner(x, x); }

  Rational inner(const RatVector& x, const RatVector& y) const {
    require_dim(x);
    require_dim(y);
    return dot(x, to_rational(gram_) * y);
  }

  Int determinant() const { return mlat::determinant(gram_); }
  bool unimodular() const {
    Int d = determinant();
    return d == 1 || d == -1;
  }

  /// Congruent diagonalization over Q: transform^T * gram * transform == diag.
  struct Diagonalization {
    std::vector<Rational> diag;
    RatMatrix transform;
  };

  Diagonalization diagonalize() const {
    const std::size_t n = rank();
    RatMatrix a = to_rational(gram_);
    RatMatrix t = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (a(k, k) == Rational(0)) {
        std::size_t p = k + 1;
        while (p < n && a(p, p) == Rational(0)) ++p;
        if (p < n) {
          a.swap_rows(k, p);
          a.swap_cols(k, p);
          t.swap_cols(k, p);
        } else {
          p = k + 1;
          while (p < n && a(k, p) == Rational(0)) ++p;
          if (p == n) throw InternalError("degenerate form during diagonalization");
          a.add_row(k, p, Rational(1));
          a.add_col(k, p, Rational(1));
          t.add_col(k, p, Rational(1));
        }
      }
      const Rational piv = a(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a(i, k) == Rational(0)) continue;
        Rational f = -(a(i, k) / piv);
        a.add_row(i, k, f);
        a.add_col(i, k, f);
        t.add_col(i, k, f);
      }
    }
    Diagonalization d{{}, std::move(t)};
    for (std::size_t i = 0; i < n; ++i) d.diag.push_back(a(i, i));
    return d;
  }

  Signature signature() const {
    Signature sig;
    for (const auto& x : diagonalize().diag) (x.sign() > 0 ? sig.positive : sig.negative)++;
    return sig;
  }

  /// Coordinates of this lattice's vector in the ambient lattice.
  IntVector to_ambient(const IntVector& x) const {
    require_embedding();
    require_dim(x);
    return embedding_->basis * x;
  }

  /// Coordinates (over Q) of an ambient vector lying in span(basis); nullopt if outside.
  std::optional<RatVector> from_ambient(const RatVector& y) const {
    require_embedding();
    const auto& amb = *embedding_->ambient;
    RatMatrix bt_g = to_rational(embedding_->basis.transpose() * amb.gram());
    RatVector c = inverse(to_rational(gram_)) * (bt_g * y);
    if (to_rational(embedding_->basis) * c != y) return std::nullopt;
    return c;
  }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    if (a.gram_ != b.gram_) return false;
    if (a.embedding_.has_value() != b.embedding_.has_value()) return false;
    if (!a.embedding_) return true;
    return a.embedding_->basis == b.embedding_->basis &&
           a.embedding_->ambient->gram() == b.embedding_->ambient->gram();
  }

 private:
  template <class V>
  void require_dim(const V& x) const {
    if (x.size() != rank())
      throw ArgumentError("vector of length " + std::to_string(x.size()) + " for lattice of rank " +
                          std::to_string(rank()));
  }
  void require_embedding() const {
    if (!embedding_) throw PreconditionError("lattice '" + label_ + "' carries no embedding");
  }

  void validate() const {
    if (!gram_.square() || gram_.rows() == 0) throw ArgumentError("Gram matrix must be square and non-empty");
    for (std::size_t i = 0; i < rank(); ++i) {
      if (gram_(i, i) % 2 != 0) throw ArgumentError("Gram matrix has odd diagonal entry (lattice not even)");
      for (std::size_t j = 0; j < i; ++j)
        if (gram_(i, j) != gram_(j, i)) throw ArgumentError("Gram matrix is not symmetric");
    }
    if (mlat::determinant(gram_) == 0) throw ArgumentError("Gram matrix is degenerate");
  }

  IntMatrix gram_;
  std::string label_;
  std::optional<Embedding> embedding_;
};

inline LatticePtr share(IntegerLattice l) { return std::make_shared<const IntegerLattice>(std::move(l)); }

// ---------------------------------------------------------------- constructors

inline IntegerLattice hyperbolic_U() { return IntegerLattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

inline IntegerLattice minus_2k(Int k) {
  if (k < 1) throw ArgumentError("minus_2k requires k >= 1");
  return IntegerLattice(IntMatrix{{checked::mul(-2, k)}}, "<" + std::to_string(checked::mul(-2, k)) + ">");
}

inline IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
  const std::size_t n = a.rank() + b.rank();
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
  return IntegerLattice(std::move(g), a.label() + "+" + b.label());
}

inline IntegerLattice direct_sum(const std::vector<IntegerLattice>& parts) {
  if (parts.empty()) throw ArgumentError("empty direct sum");
  IntegerLattice acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
  return acc;
}

/// U^{⊕n}
inline IntegerLattice hyperbolic_sum(int n) {
  return direct_sum(std::vector<IntegerLattice>(static_cast<std::size_t>(n), hyperbolic_U()));
}

/// U⊕U⊕U⊕<-2k>.
inline IntegerLattice u3_minus_2k(Int k) { return direct_sum(hyperbolic_sum(3), minus_2k(k)); }

/// The same module with the form multiplied by c (c = -1 gives S(-1)).
inline IntegerLattice twist(const IntegerLattice& l, Int c) {
  std::string lbl = l.label().empty() ? std::string() : l.label() + "(" + std::to_string(c) + ")";
  return IntegerLattice(c * l.gram(), lbl);
}

// ---------------------------------------------------------------- sublattices

/// Smallest primitive sublattice of `l` containing the given vectors (in `l` coordinates).
inline IntegerLattice saturate(const std::vector<IntVector>& gens, const LatticePtr& l, std::string label = {}) {
  if (gens.empty()) throw ArgumentError("saturate needs at least one generator");
  IntMatrix rows = IntMatrix::from_rows(gens);
  if (rows.cols() != l->rank()) throw ArgumentError("generator dimension does not match lattice rank");
  SmithForm s = smith_normal_form(rows);
  if (s.rank != gens.size()) throw ArgumentError("saturate: generators are linearly dependent");
  IntMatrix vinv = inverse_unimodular(s.right);
  IntMatrix top(s.rank, l->rank());
  for (std::size_t i = 0; i < s.rank; ++i)
    for (std::size_t j = 0; j < l->rank(); ++j) top(i, j) = vinv(i, j);
  return IntegerLattice::sublattice(l, hermite_normal_form(top).transpose(), std::move(label));
}

/// Orthogonal complement S⊥ inside the ambient lattice of S.
inline IntegerLattice orth_complement(const IntegerLattice& s, std::string label = {}) {
  if (!s.has_embedding()) throw PreconditionError("orth_complement needs an embedded sublattice");
  const auto& emb = *s.embedding();
  IntMatrix pairing = emb.basis.transpose() * emb.ambient->gram();
  IntMatrix ker = integer_kernel(pairing);
  if (ker.cols() == 0) throw ArgumentError("orthogonal complement is zero");
  return IntegerLattice::sublattice(emb.ambient, hermite_normal_form(ker.transpose()).transpose(), std::move(label));
}

/// Unimodular change of the columns of `b` making them short in the Euclidean norm:
/// pairwise size reduction until no step shortens a column, then sorting by norm.
inline IntMatrix reduce_columns(IntMatrix b) {
  const auto norm = [&](std::size_t j) { return dot(b.col(j), b.col(j)); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < b.cols(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (i == j) continue;
        const Int nj = norm(j);
        if (nj == 0) continue;
        const Int q = floor_div(checked::add(checked::mul(2, dot(b.col(i), b.col(j))), nj), checked::mul(2, nj));
        if (q == 0) continue;
        const IntVector cand = b.col(i) - scale(q, b.col(j));
        if (dot(cand, cand) < norm(i)) {
          b.set_col(i, cand);
          changed = true;
        }
      }
  }
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(b.col(j));
  std::stable_sort(cols.begin(), cols.end(), [](const IntVector& x, const IntVector& y) { return dot(x, x) < dot(y, y); });
  return IntMatrix::from_columns(cols);
}

/// The same sublattice with a basis reduced in ambient coordinates.
inline IntegerLattice reduced(const IntegerLattice& s) {
  if (!s.has_embedding()) throw PreconditionError("reduced needs an embedded sublattice");
  return IntegerLattice::sublattice(s.embedding()->ambient, reduce_columns(s.embedding()->basis), s.label());
}

/// True when both embedded lattices span the same submodule of the same ambient lattice.
inline bool same_sublattice(const IntegerLattice& a, const IntegerLattice& b) {
  if (!a.has_embedding() || !b.has_embedding()) throw PreconditionError("same_sublattice needs embeddings");
  if (a.embedding()->ambient->gram() != b.embedding()->ambient->gram()) return false;
  return hermite_normal_form(a.embedding()->basis.transpose()) ==
         hermite_normal_form(b.embedding()->basis.transpose());
}

inline bool is_primitive(const IntegerLattice& s) {
  if (!s.has_embedding()) throw PreconditionError("is_primitive needs an embedded sublattice");
  const auto& emb = *s.embedding();
  std::vector<IntVector> gens;
  for (std::size_t j = 0; j < emb.basis.cols(); ++j) gens.push_back(emb.basis.col(j));
  return same_sublattice(saturate(gens, emb.ambient), s);
}

}  // namespace mlat
