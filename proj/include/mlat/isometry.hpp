#pragma once

// Isometries between lattices, the determinant and orientation characters,
// and reflections.

#include <optional>
#include <string>
#include <vector>

#include "mlat/lattice.hpp"

namespace mlat {

inline bool preserves_form(const IntMatrix& m, const IntMatrix& source_gram, const IntMatrix& target_gram) {
  if (m.rows() != target_gram.rows() || m.cols() != source_gram.rows()) return false;
  return m.transpose() * target_gram * m == source_gram;
}

/// Bijective isometry source -> target. Column j of `matrix` holds the target
/// coordinates of the image of the j-th source basis vector.
class Isometry {
 public:
  Isometry(IntegerLattice source, IntegerLattice target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (source_.rank() != target_.rank()) throw ArgumentError("isometry between lattices of different rank");
    if (!preserves_form(matrix_, source_.gram(), target_.gram()))
      throw ArgumentError("matrix does not preserve the Gram forms: " + matrix_.str());
    Int d = mlat::determinant(matrix_);
    if (d != 1 && d != -1) throw ArgumentError("isometry matrix is not invertible over Z");
  }

  static Isometry identity(const IntegerLattice& l) { return Isometry(l, l, IntMatrix::identity(l.rank())); }
  static Isometry negation(const IntegerLattice& l) { return Isometry(l, l, -IntMatrix::identity(l.rank())); }

  const IntegerLattice& source() const { return source_; }
  const IntegerLattice& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }
  bool is_automorphism() const { return source_.gram() == target_.gram(); }

  IntVector operator()(const IntVector& x) const { return matrix_ * x; }
  RatVector operator()(const RatVector& x) const { return to_rational(matrix_) * x; }

  Isometry inverse() const { return Isometry(Trusted{}, target_, source_, inverse_unimodular(matrix_)); }

  /// (g * h) = g ∘ h, defined when h.target and g.source share a Gram form.
  friend Isometry operator*(const Isometry& g, const Isometry& h) {
    if (g.source_.gram() != h.target_.gram()) throw ArgumentError("composition of incompatible isometries");
    return Isometry(Trusted{}, h.source_, g.target_, g.matrix_ * h.matrix_);
  }

  friend bool operator==(const Isometry& a, const Isometry& b) {
    return a.matrix_ == b.matrix_ && a.source_.gram() == b.source_.gram() && a.target_.gram() == b.target_.gram();
  }

 private:
  // inverses and composites of isometries; the form check could overflow needlessly
  struct Trusted {};
  Isometry(Trusted, IntegerLattice source, IntegerLattice target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

  IntegerLattice source_;
  IntegerLattice target_;
  IntMatrix matrix_;
};

/// Ordered rational basis of a maximal positive-definite subspace, stored as columns
/// in the lattice's coordinates.
class OrientationDatum {
 public:
  OrientationDatum(const IntegerLattice& l, RatMatrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() != l.rank()) throw ArgumentError("orientation basis has wrong dimension");
    const Signature sig = l.signature();
    if (basis_.cols() != static_cast<std::size_t>(sig.positive))
      throw ArgumentError("orientation basis size differs from the positive index");
    RatMatrix g = basis_.transpose() * to_rational(l.gram()) * basis_;
    // Sylvester: all leading minors positive
    for (std::size_t k = 1; k <= g.rows(); ++k) {
      RatMatrix minor(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = g(i, j);
      if (determinant(minor).sign() <= 0) throw ArgumentError("orientation basis is not positive definite");
    }
  }

  OrientationDatum(const IntegerLattice& l, const std::vector<IntVector>& vectors)
      : OrientationDatum(l, to_rational(IntMatrix::from_columns(vectors))) {}

  /// Positive vectors read off a congruent diagonalization of the Gram form.
  static OrientationDatum from_diagonalization(const IntegerLattice& l) {
    auto d = l.diagonalize();
    std::vector<RatVector> cols;
    for (std::size_t i = 0; i < d.diag.size(); ++i)
      if (d.diag[i].sign() > 0) cols.push_back(d.transform.col(i));
    if (cols.empty()) throw ArgumentError("lattice has no positive directions");
    return OrientationDatum(l, RatMatrix::from_columns(cols));
  }

  const RatMatrix& basis() const { return basis_; }
  std::size_t size() const { return basis_.cols(); }

 private:
  RatMatrix basis_;
};

inline int det_char(const Isometry& g) {
  if (!g.is_automorphism()) throw ArgumentError("det_char needs an isometry of a lattice to itself");
  return static_cast<int>(mlat::determinant(g.matrix()));
}

/// Orientation character: 0 when g preserves the orientation of positive
/// subspaces, 1 otherwise. Computed as the sign of det(Bᵀ·G·g·B), which has the
/// sign of the determinant of (orthogonal projection onto span B) ∘ g on span B.
inline int ori_char(const Isometry& g, const OrientationDatum& eps) {
  if (!g.is_automorphism()) throw ArgumentError("ori_char needs an isometry of a lattice to itself");
  const RatMatrix& b = eps.basis();
  if (b.rows() != g.source().rank()) throw ArgumentError("orientation datum does not match the lattice");
  RatMatrix p = b.transpose() * to_rational(g.target().gram()) * to_rational(g.matrix()) * b;
  const int s = determinant(p).sign();
  if (s == 0) throw InternalError("projection of the positive subspace is singular");
  return s > 0 ? 0 : 1;
}

/// Reflection x ↦ x − 2(x·u)/(u·u)·u when it is integral on l.
inline std::optional<Isometry> integral_reflection(const IntVector& u, const IntegerLattice& l) {
  const Int uu = l.square(u);
  if (uu == 0) return std::nullopt;
  IntVector gu = l.gram() * u;
  const std::size_t n = l.rank();
  IntMatrix m = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    Int num = checked::mul(2, gu[j]);
    if (num % uu != 0) return std::nullopt;
    Int c = num / uu;
    for (std::size_t i = 0; i < n; ++i) m(i, j) = checked::sub(m(i, j), checked::mul(c, u[i]));
  }
  return Isometry(l, l, std::move(m));
}

/// R_u for a (±2)-vector u.
inline Isometry reflection(const IntVector& u, const IntegerLattice& l) {
  const Int uu = l.square(u);
  if (uu != 2 && uu != -2) throw ArgumentError("reflection needs u·u = ±2, got " + std::to_string(uu));
  return *integral_reflection(u, l);
}

/// ρ_u = −(u·u/2)·R_u for a (±2)-vector u.
inline Isometry rho(const IntVector& u, const IntegerLattice& l) {
  Isometry r = reflection(u, l);
  if (l.square(u) == -2) return r;
  return Isometry(l, l, -r.matrix());
}

}  // namespace mlat
