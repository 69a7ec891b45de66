#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "plic/error.hpp"

namespace plic {

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Backed by GMP.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    require(den != 0, ErrorKind::ParseError, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }
  explicit Rational(const mpz_class& value) : value_(value) {}

  /// Accepts "p/q" or "p" with optional leading sign.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
      std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
      if (i >= part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    auto strip_plus = [](std::string part) {
      if (!part.empty() && part[0] == '+') part.erase(0, 1);
      return part;
    };
    if (slash == std::string::npos) {
      require(valid_int(s), ErrorKind::ParseError, "not a rational: '" + s + "'");
      return Rational(mpz_class(strip_plus(s)));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    require(valid_int(num) && valid_int(den) && den[0] != '-' && den[0] != '+',
            ErrorKind::ParseError, "not a rational: '" + s + "'");
    mpz_class d(den);
    require(d != 0, ErrorKind::ParseError, "zero denominator in '" + s + "'");
    mpq_class q(mpz_class(strip_plus(num)), d);
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }

  /// Canonical "p/q" form, q > 0, always with the slash.
  std::string str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  /// Fixed-point decimal with `digits` fractional digits, round-half-even.
  std::string decimal(int digits) const {
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpz_class num = value_.get_num() * scale;
    const mpz_class& den = value_.get_den();
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class twice = 2 * r;
    if (twice > den || (twice == den && mpz_odd_p(q.get_mpz_t()))) q += 1;
    bool negative = q < 0;
    mpz_class mag = negative ? mpz_class(-q) : q;
    std::string digits_str = mag.get_str();
    if (digits > 0) {
      if (static_cast<int>(digits_str.size()) <= digits)
        digits_str.insert(0, static_cast<std::size_t>(digits + 1) - digits_str.size(), '0');
      digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), ".");
    }
    return (negative ? "-" : "") + digits_str;
  }

  double to_double() const { return value_.get_d(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    require(!o.is_zero(), ErrorKind::InternalInvariant, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

}  // namespace plic

template <>
struct std::hash<plic::Rational> {
  std::size_t operator()(const plic::Rational& r) const {
    return std::hash<std::string>{}(r.str());
  }
};
