#pragma once

// Exact arithmetic over Q and a fixed real quadratic field Q(sqrt d).
//
// Every predicate elsewhere in the library is decided here, by integer
// arithmetic only. Decimal output exists for diagnostics and never feeds a
// branch.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bpv/errors.hpp"

namespace bpv {

using Integer = mpz_class;

Integer ipow(const Integer& base, unsigned long exp);
// floor(sqrt(n)) for n >= 0.
Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer parse_integer(std::string_view text);

// A canonical fraction: denominator > 0, gcd(|num|, den) = 1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Accepts "n" or "n/d" with optional leading sign.
  static Rational parse(std::string_view text);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  const mpq_class& mpq() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Integer floor() const;
  Integer ceil() const;
  Rational abs() const { return Rational(::abs(v_)); }
  Rational inverse() const;
  // Integer power; negative exponents invert.
  Rational pow(long exp) const;

  // Always "num/den", including den = 1.
  std::string to_string() const;

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// a + b*sqrt(d) with d >= 0 squarefree. When d is 0 or 1 the element is
// folded into its rational part (b = 0). Elements with b = 0 combine with any
// field; two irrational elements must share d.
class FieldReal {
 public:
  FieldReal() = default;
  FieldReal(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  FieldReal(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  // d may be any nonnegative integer; its square part is moved into b.
  FieldReal(const Rational& a, const Rational& b, const Integer& d);

  // "(a+b*sqrt(d))/e" with integers a, b, d, e; also accepts a plain rational.
  static FieldReal parse(std::string_view text);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& d() const { return d_; }
  bool is_rational() const { return b_.is_zero(); }

  // (a+b*sqrt(d))/1 in the text form used by certificates.
  std::string to_string() const;

  FieldReal& operator+=(const FieldReal& o);
  FieldReal& operator-=(const FieldReal& o);
  FieldReal& operator*=(const FieldReal& o);
  FieldReal& operator/=(const FieldReal& o);

  friend FieldReal operator+(FieldReal x, const FieldReal& y) { return x += y; }
  friend FieldReal operator-(FieldReal x, const FieldReal& y) { return x -= y; }
  friend FieldReal operator*(FieldReal x, const FieldReal& y) { return x *= y; }
  friend FieldReal operator/(FieldReal x, const FieldReal& y) { return x /= y; }
  friend FieldReal operator-(const FieldReal& x);

  // Equality of values; (a, b) are canonical for a fixed d.
  friend bool operator==(const FieldReal& x, const FieldReal& y);

 private:
  void adopt_field(const FieldReal& o);

  Rational a_;
  Rational b_;
  Integer d_ = 0;
};

// Sign of a + b*sqrt(d), by comparing a^2 with b^2 d when signs disagree.
int field_sign(const FieldReal& x);
int field_cmp(const FieldReal& x, const FieldReal& y);
FieldReal field_abs(const FieldReal& x);
FieldReal field_pow(const FieldReal& x, unsigned long n);
Integer field_floor(const FieldReal& x);
// Throws HalfIntegerTie when x is exactly n + 1/2.
Integer nearest_integer(const FieldReal& x);
// Correctly rounded (half away from zero) decimal with `digits` places.
std::string to_decimal(const FieldReal& x, int digits);

// Sign of x^e - y^f for x, y > 0, decided by raising both sides to the least
// common denominator of e and f.
int rat_pow_cmp(const Rational& x, const Rational& e, const Rational& y, const Rational& f);

// A product of positive rationals raised to rational exponents.
struct PowerTerm {
  Rational base;
  Rational exp;
};
// Sign of prod(lhs) - prod(rhs).
int power_product_cmp(std::span<const PowerTerm> lhs, std::span<const PowerTerm> rhs);

}  // namespace bpv
