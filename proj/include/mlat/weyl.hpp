#pragma once

// Membership in W(Λ) and N(Λ) = ker(det·disc) for lattices with cyclic
// discriminant group, and the index 2^ρ(k).

#include <string>

#include "mlat/discriminant.hpp"

namespace mlat {

/// +1 or -1 when disc(g) = ±id on a cyclic discriminant group, 0 otherwise.
inline int disc_sign(const Isometry& g) {
  const DiscriminantData a = disc_group(g.source());
  if (!a.cyclic()) throw PreconditionError("disc_sign needs a cyclic discriminant group");
  const DiscHom d = disc_map(g);
  if (d.is_scalar(1)) return 1;
  if (d.is_scalar(-1)) return -1;
  return 0;
}

inline bool in_W(const Isometry& g, const OrientationDatum& eps) {
  return ori_char(g, eps) == 0 && disc_sign(g) != 0;
}

inline bool in_N(const Isometry& g, const OrientationDatum& eps) {
  return in_W(g, eps) && det_char(g) * disc_sign(g) == 1;
}

/// Number of distinct prime factors, by trial division.
inline int distinct_primes(Int n) {
  if (n < 1) throw ArgumentError("distinct_primes needs n >= 1");
  int count = 0;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ++count;
    while (n % p == 0) n /= p;
  }
  return count + (n > 1 ? 1 : 0);
}

/// [O⁺(Λ) : N(Λ)] = 2^ρ(k), cross-checked against the brute-force count of O(A_Λ).
inline Int index_monodromy(Int k) {
  if (k <= 2) throw PreconditionError("index_monodromy requires k > 2");
  const Int formula = Int{1} << distinct_primes(k);
  const Int counted = static_cast<Int>(enum_disc_autos(k).size());
  if (formula != counted)
    throw InternalError("2^rho(k) = " + std::to_string(formula) + " but |O(A)| = " + std::to_string(counted));
  return formula;
}

/// {e1+f1, e2+f2, e3+f3} on U⊕U⊕U⊕<-2k> in its standard basis.
inline OrientationDatum canonical_orientation_u3(const IntegerLattice& l) {
  if (l.rank() < 6) throw ArgumentError("canonical orientation needs a lattice containing U⊕U⊕U");
  std::vector<IntVector> vs;
  for (std::size_t i = 0; i < 3; ++i) {
    IntVector v(l.rank(), 0);
    v[2 * i] = 1;
    v[2 * i + 1] = 1;
    vs.push_back(v);
  }
  return OrientationDatum(l, vs);
}

}  // namespace mlat
