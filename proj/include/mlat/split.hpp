#pragma once

// Splitting a hyperbolic plane off a rank-4 complement: K ≅ U ⊕ S(-1).

#include <functional>
#include <optional>
#include <string>

#include "mlat/isometry.hpp"
#include "mlat/search.hpp"

namespace mlat {

struct HyperbolicSplit {
  IntegerLattice model;  // U ⊕ S(-1) in its standard block basis
  Isometry to_model;     // K → model
  IntVector isotropic;   // u, in K coordinates; maps to e of U
  IntVector partner;     // u'' with u''² = 0 and u·u'' = 1; maps to f of U
};

/// Visits every split of K as U ⊕ S(-1) found by bounded search: u runs over the box
/// of radius `bound` in shell order, and the first column of the rank-2 isometry onto
/// S(-1) is bounded by `bound`. Stops when `visit` returns true.
inline void for_each_split(const IntegerLattice& k, const IntMatrix& s_gram, Int bound,
                           const std::function<bool(const HyperbolicSplit&)>& visit) {
  const IntegerLattice s_minus = IntegerLattice(-s_gram, "S(-1)");
  const IntegerLattice model = direct_sum(hyperbolic_U(), s_minus);
  if (k.rank() != model.rank()) throw ArgumentError("canonical_split: rank of K differs from rank of U⊕S(-1)");
  const IntMatrix& g = k.gram();

  for_each_in_box(k.rank(), bound, [&](const IntVector& u) {
    if (dot(u, g * u) != 0 || content(u) != 1) return false;
    const IntVector gu = g * u;
    if (content(gu) != 1) return false;
    auto partner = solve_integer(IntMatrix::from_rows({gu}), IntVector{1});
    if (!partner) return false;
    const Int half = dot(*partner, g * *partner) / 2;
    const IntVector u2 = *partner - scale(half, u);
    // complement of the hyperbolic plane <u, u2>
    const IntMatrix pairing = IntMatrix::from_rows({gu, g * u2});
    const IntMatrix mb = reduce_columns(integer_kernel(pairing));
    const IntMatrix mgram = mb.transpose() * g * mb;
    auto p = find_isometry_bounded(mgram, s_minus.gram(), bound);
    if (!p) return false;

    IntMatrix m(k.rank(), k.rank());
    const RatMatrix mgram_inv = inverse(mgram);
    for (std::size_t j = 0; j < k.rank(); ++j) {
      IntVector b(k.rank(), 0);
      b[j] = 1;
      const Int alpha = dot(b, g * u2);
      const Int beta = dot(b, gu);
      const IntVector rest = b - scale(alpha, u) - scale(beta, u2);
      const IntVector rest_coords = to_integer(mgram_inv * to_rational(mb.transpose() * (g * rest)));
      const IntVector tail = *p * rest_coords;
      m(0, j) = alpha;
      m(1, j) = beta;
      for (std::size_t i = 0; i < tail.size(); ++i) m(2 + i, j) = tail[i];
    }
    return visit(HyperbolicSplit{model, Isometry(k, model, m), u, u2});
  });
}

/// The first split visited by for_each_split. Throws NotFound.
inline HyperbolicSplit canonical_split(const IntegerLattice& k, const IntMatrix& s_gram, Int bound,
                                       const std::string& stage = "canonical_split") {
  std::optional<HyperbolicSplit> found;
  for_each_split(k, s_gram, bound, [&](const HyperbolicSplit& sp) {
    found = sp;
    return true;
  });
  if (!found) throw NotFound(stage, bound);
  return *found;
}

/// η: swaps the two isotropic generators of U and fixes S(-1); det −1, trivial on A_K.
inline Isometry swap_hyperbolic(const HyperbolicSplit& sp) {
  IntMatrix m = IntMatrix::identity(sp.model.rank());
  m(0, 0) = 0;
  m(1, 1) = 0;
  m(0, 1) = 1;
  m(1, 0) = 1;
  const Isometry on_model(sp.model, sp.model, m);
  return sp.to_model.inverse() * on_model * sp.to_model;
}

/// θ: −id on U, id on S(-1); det 1, orientation reversing, trivial on A_K.
inline Isometry negate_hyperbolic(const HyperbolicSplit& sp) {
  IntMatrix m = IntMatrix::identity(sp.model.rank());
  m(0, 0) = -1;
  m(1, 1) = -1;
  const Isometry on_model(sp.model, sp.model, m);
  return sp.to_model.inverse() * on_model * sp.to_model;
}

}  // namespace mlat
