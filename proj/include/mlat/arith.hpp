#pragma once

// Checked 64-bit integer arithmetic and exact rationals.
//
// Every operation that could leave the int64 range throws OverflowError
// instead of wrapping.

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mlat {

using Int = std::int64_t;

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("integer overflow narrowing 128-bit value");
  return static_cast<Int>(v);
}

}  // namespace checked

/// Floor division and the matching non-negative remainder.
inline Int floor_div(Int a, Int b) {
  if (b == 0) throw ArgumentError("division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod(Int a, Int m) {
  if (m == 0) throw ArgumentError("modulus zero");
  Int r = a % m;
  if (r < 0) r += (m < 0 ? -m : m);
  return r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

/// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
inline Int ext_gcd(Int a, Int b, Int& s, Int& t) {
  Int old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = checked::sub(old_r, checked::mul(q, r));
    old_r = r;
    r = tmp;
    tmp = checked::sub(old_s, checked::mul(q, cs));
    old_s = cs;
    cs = tmp;
    tmp = checked::sub(old_t, checked::mul(q, ct));
    old_t = ct;
    ct = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

/// Exact rational number with checked int64 numerator and positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Int n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d) {
    if (d == 0) throw ArgumentError("rational with zero denominator");
    set(static_cast<__int128>(n), static_cast<__int128>(d));
  }

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  Int to_int() const {
    if (den_ != 1) throw ArgumentError("rational " + str() + " is not an integer");
    return num_;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p" or "p/q".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.set(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
          static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.set(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw ArgumentError("rational division by zero");
    Rational r;
    r.set(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    r.num_ = checked::neg(num_);
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Representative of this value modulo m (m a positive integer), in [0, m).
  Rational reduce_mod(Int m) const {
    // num/den - m*floor(num/(den*m))
    __int128 dm = static_cast<__int128>(den_) * m;
    __int128 n = num_;
    __int128 q = n / dm;
    if (n % dm != 0 && n < 0) --q;
    Rational r;
    r.set(n - q * dm, den_);
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void set(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    num_ = checked::narrow(n);
    den_ = checked::narrow(d);
  }

  Int num_ = 0;
  Int den_ = 1;
};

namespace detail {
inline Int add(Int a, Int b) { return checked::add(a, b); }
inline Int sub(Int a, Int b) { return checked::sub(a, b); }
inline Int mul(Int a, Int b) { return checked::mul(a, b); }
inline Rational add(const Rational& a, const Rational& b) { return a + b; }
inline Rational sub(const Rational& a, const Rational& b) { return a - b; }
inline Rational mul(const Rational& a, const Rational& b) { return a * b; }
}  // namespace detail

}  // namespace mlat
