#pragma once

// Deterministic bounded searches over integer coordinate boxes.

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlat/matrix.hpp"

namespace mlat {

/// A bounded search exhausted its box without finding a solution. This is not a
/// disproof: a larger bound may succeed.
struct NotFound : std::runtime_error {
  NotFound(std::string stage, Int bound)
      : std::runtime_error(stage + ": search exhausted at bound " + std::to_string(bound)),
        stage(std::move(stage)),
        bound(bound) {}
  std::string stage;
  Int bound;
};

/// Visits non-zero vectors of Z^dim with max-norm 1, 2, ..., bound; within a shell
/// in lexicographic order. Stops early when `visit` returns true.
inline bool for_each_in_box(std::size_t dim, Int bound, const std::function<bool(const IntVector&)>& visit) {
  if (dim == 0) return false;
  IntVector v(dim);
  for (Int r = 1; r <= bound; ++r) {
    std::fill(v.begin(), v.end(), -r);
    while (true) {
      bool on_shell = false;
      for (Int x : v)
        if (x == r || x == -r) on_shell = true;
      if (on_shell && visit(v)) return true;
      bool carry = true;
      for (std::size_t i = dim; carry && i > 0; --i) {
        if (v[i - 1] < r) {
          ++v[i - 1];
          carry = false;
        } else {
          v[i - 1] = -r;
        }
      }
      if (carry) break;
    }
  }
  return false;
}

/// Vectors x in the box with xᵀ·gram·x == norm, in search order.
inline std::vector<IntVector> vectors_of_norm(const IntMatrix& gram, Int norm, Int bound) {
  std::vector<IntVector> out;
  for_each_in_box(gram.rows(), bound, [&](const IntVector& x) {
    if (dot(x, gram * x) == norm) out.push_back(x);
    return false;
  });
  return out;
}

namespace detail {

/// Rank 2: the second column y is fixed by x·y = from01 and det[x y] = ±1.
inline std::optional<IntMatrix> isometry_rank2(const IntMatrix& from, const IntMatrix& to,
                                               const std::vector<IntVector>& firsts) {
  for (const auto& x : firsts) {
    const IntVector tx = to * x;
    const Int det = checked::add(checked::mul(tx[0], x[0]), checked::mul(tx[1], x[1]));
    if (det == 0) continue;
    for (Int sign : {1, -1}) {
      // [tx0 tx1; -x1 x0]·y = [from01; sign]
      const Int n0 = checked::sub(checked::mul(x[0], from(0, 1)), checked::mul(tx[1], sign));
      const Int n1 = checked::add(checked::mul(x[1], from(0, 1)), checked::mul(tx[0], sign));
      if (n0 % det != 0 || n1 % det != 0) continue;
      const IntVector y{n0 / det, n1 / det};
      if (dot(y, to * y) != from(1, 1)) continue;
      return IntMatrix::from_columns({x, y});
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Integer matrix P with Pᵀ·to·P == from and det P = ±1, i.e. an isometry from the
/// `from` form onto the `to` form; first in search order. Columns are searched in the
/// box of radius `bound`, except that in rank 2 the second column is solved for.
inline std::optional<IntMatrix> find_isometry_bounded(const IntMatrix& from, const IntMatrix& to, Int bound) {
  const std::size_t n = from.rows();
  if (to.rows() != n) return std::nullopt;
  std::vector<std::vector<IntVector>> candidates(n);
  for (std::size_t j = 0; j < (n == 2 ? 1 : n); ++j) {
    candidates[j] = vectors_of_norm(to, from(j, j), bound);
    if (candidates[j].empty()) return std::nullopt;
  }
  if (n == 2) return detail::isometry_rank2(from, to, candidates[0]);
  std::vector<IntVector> chosen(n);
  std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
    if (j == n) {
      IntMatrix p = IntMatrix::from_columns(chosen);
      Int d = determinant(p);
      return d == 1 || d == -1;
    }
    for (const auto& c : candidates[j]) {
      bool ok = true;
      IntVector tc = to * c;
      for (std::size_t i = 0; i < j && ok; ++i) ok = dot(chosen[i], tc) == from(i, j);
      if (!ok) continue;
      chosen[j] = c;
      if (rec(j + 1)) return true;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return IntMatrix::from_columns(chosen);
}

}  // namespace mlat
