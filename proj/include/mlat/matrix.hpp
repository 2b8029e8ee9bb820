#pragma once

// Dense matrices over Z and Q with the normal forms used throughout:
// Hermite normal form (sublattice bases) and Smith normal form with
// transforms (quotients, kernels, integer solving).

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mlat/arith.hpp"

namespace mlat {

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ArgumentError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<std::vector<T>>& cols) {
    if (cols.empty()) return {};
    Matrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != m.rows_) throw ArgumentError("column length mismatch");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw ArgumentError("row length mismatch");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_col(std::size_t j, const std::vector<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ArgumentError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c(i, j) = detail::add(c(i, j), detail::mul(aik, b(k, j)));
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw ArgumentError("matrix-vector dimension mismatch");
    std::vector<T> r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) r[i] = detail::add(r[i], detail::mul(a(i, k), v[k]));
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = detail::add(a.data_[i], b.data_[i]);
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = detail::sub(a.data_[i], b.data_[i]);
    return c;
  }
  Matrix operator-() const {
    Matrix c = *this;
    for (auto& x : c.data_) x = detail::sub(T(0), x);
    return c;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = detail::mul(s, x);
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Lexicographic order on (rows, cols, entries); used for deterministic tie-breaks.
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == T(0)) return;
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) = detail::add((*this)(dst, j), detail::mul(factor, (*this)(src, j)));
  }
  void add_col(std::size_t dst, std::size_t src, const T& factor) {
    if (factor == T(0)) return;
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) = detail::add((*this)(i, dst), detail::mul(factor, (*this)(i, src)));
  }

 private:
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw ArgumentError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

inline bool is_integral(const RatMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_integer()) return false;
  return true;
}

inline bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_integer(); });
}

inline IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_int();
  return r;
}

inline IntVector to_integer(const RatVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].to_int();
  return r;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw ArgumentError("dot product dimension mismatch");
  T s{};
  for (std::size_t i = 0; i < a.size(); ++i) s = detail::add(s, detail::mul(a[i], b[i]));
  return s;
}

template <class T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw ArgumentError("vector dimension mismatch");
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = detail::add(a[i], b[i]);
  return r;
}

template <class T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw ArgumentError("vector dimension mismatch");
  std::vector<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = detail::sub(a[i], b[i]);
  return r;
}

template <class T>
std::vector<T> scale(const T& s, const std::vector<T>& v) {
  std::vector<T> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = detail::mul(s, v[i]);
  return r;
}

inline Int content(const IntVector& v) {
  Int g = 0;
  for (Int x : v) g = gcd(g, x);
  return g;
}

/// Determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& m) {
  if (!m.square()) throw ArgumentError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a(i, j)) * a(k, k) - static_cast<__int128>(a(i, k)) * a(k, j);
        a(i, j) = checked::narrow(v / prev);
      }
    prev = a(k, k);
  }
  return checked::mul(sign, a(n - 1, n - 1));
}

inline Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw ArgumentError("determinant of non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == Rational(0)) ++p;
    if (p == n) return Rational(0);
    if (p != k) {
      a.swap_rows(k, p);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) a.add_row(i, k, -(a(i, k) / a(k, k)));
  }
  return det;
}

/// Inverse over Q by Gauss-Jordan; throws ArgumentError when singular.
inline RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw ArgumentError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == Rational(0)) ++p;
    if (p == n) throw ArgumentError("singular matrix");
    a.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rational piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) = a(k, j) / piv;
      inv(k, j) = inv(k, j) / piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == Rational(0)) continue;
      Rational f = -a(i, k);
      a.add_row(i, k, f);
      inv.add_row(i, k, f);
    }
  }
  return inv;
}

inline RatMatrix inverse(const IntMatrix& m) { return inverse(to_rational(m)); }

/// Inverse of a unimodular integer matrix.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  RatMatrix inv = inverse(m);
  if (!is_integral(inv)) throw ArgumentError("matrix is not unimodular");
  return to_integer(inv);
}

/// Smith normal form with transforms: left * m * right == diag.
/// Diagonal entries are non-negative and each divides the next.
struct SmithForm {
  IntMatrix diag;
  IntMatrix left;
  IntMatrix right;
  std::size_t rank = 0;

  Int invariant(std::size_t i) const { return diag(i, i); }
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix d = m, u = IntMatrix::identity(rows), v = IntMatrix::identity(cols);
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest non-zero entry of the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      Int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          Int x = d(i, j) < 0 ? -d(i, j) : d(i, j);
          if (x != 0 && (best == 0 || x < best)) {
            best = x;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) goto done;
      if (pi != t) {
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
      }
      if (pj != t) {
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Int q = floor_div(d(i, t), d(t, t));
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Int q = floor_div(d(t, j), d(t, t));
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = checked::neg(d(t, j));
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = checked::neg(u(t, j));
    }
  }
done:
  SmithForm s{d, u, v, 0};
  for (std::size_t i = 0; i < std::min(rows, cols); ++i)
    if (d(i, i) != 0) ++s.rank;
  return s;
}

inline std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

/// Row-style Hermite normal form of the row lattice of m: echelon rows with positive
/// pivots and entries above each pivot reduced into [0, pivot). Zero rows are dropped.
inline IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // gcd-combine all rows below r into row r for column c
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      Int s, t;
      Int x = a(r, c), y = a(i, c);
      Int g = ext_gcd(x, y, s, t);
      Int xg = x / g, yg = y / g;
      for (std::size_t j = 0; j < cols; ++j) {
        Int ar = a(r, j), ai = a(i, j);
        a(r, j) = checked::add(checked::mul(s, ar), checked::mul(t, ai));
        a(i, j) = checked::sub(checked::mul(xg, ai), checked::mul(yg, ar));
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (std::size_t j = 0; j < cols; ++j) a(r, j) = checked::neg(a(r, j));
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(a(i, c), a(r, c));
      a.add_row(i, r, -q);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

/// Integer solution x of a*x = b, or nullopt when none exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw ArgumentError("solve_integer dimension mismatch");
  SmithForm s = smith_normal_form(a);
  IntVector ub = s.left * b;
  IntVector y(a.cols(), 0);
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      Int d = s.invariant(i);
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

/// Basis (as columns) of the integer kernel {x : a*x = 0}; the kernel is primitive.
inline IntMatrix integer_kernel(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  IntMatrix k(a.cols(), a.cols() - s.rank);
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) k(i, j - s.rank) = s.right(i, j);
  return k;
}

}  // namespace mlat
