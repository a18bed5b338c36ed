#include "bpv/exactnum.hpp"

#include <regex>
#include <stdexcept>
#include <string>

namespace bpv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFieldMismatch: return "FieldMismatch";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kHalfIntegerTie: return "HalfIntegerTie";
    case ErrorKind::kRationalInput: return "RationalInput";
    case ErrorKind::kDegenerateExponent: return "DegenerateExponent";
    case ErrorKind::kInvalidBeta: return "InvalidBeta";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kNoLineFound: return "NoLineFound";
    case ErrorKind::kLevelUnderflow: return "LevelUnderflow";
    case ErrorKind::kInsufficientEnumeration: return "InsufficientEnumeration";
    case ErrorKind::kWindowTooLarge: return "WindowTooLarge";
    case ErrorKind::kExtractionFailed: return "ExtractionFailed";
    case ErrorKind::kSizeLimit: return "SizeLimit";
    case ErrorKind::kStrategyAbort: return "StrategyAbort";
    case ErrorKind::kIllegalMove: return "IllegalMove";
    case ErrorKind::kCertificationFailed: return "CertificationFailed";
  }
  return "Error";
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Integer isqrt(const Integer& n) {
  if (sgn(n) < 0) throw std::domain_error("isqrt of negative integer");
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

bool is_perfect_square(const Integer& n) {
  return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

Integer parse_integer(std::string_view text) {
  static const std::regex kInt(R"(\s*([+-]?[0-9]+)\s*)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kInt)) throw Error(ErrorKind::kParse, "not an integer: '" + s + "'");
  std::string digits = m[1].str();
  if (digits[0] == '+') digits.erase(0, 1);
  return Integer(digits);
}

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw std::domain_error("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  static const std::regex kRat(R"(\s*([+-]?[0-9]+)\s*(?:/\s*([0-9]+))?\s*)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, kRat)) throw Error(ErrorKind::kParse, "not a rational: '" + s + "'");
  Integer num = parse_integer(m[1].str());
  Integer den = m[2].matched ? Integer(m[2].str()) : Integer(1);
  if (sgn(den) == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + s + "'");
  return Rational(num, den);
}

Integer Rational::floor() const { return floor_div(num(), den()); }
Integer Rational::ceil() const { return ceil_div(num(), den()); }

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return Rational(den(), num());
}

Rational Rational::pow(long exp) const {
  if (exp < 0) return inverse().pow(-exp);
  auto e = static_cast<unsigned long>(exp);
  return Rational(ipow(num(), e), ipow(den(), e));
}

std::string Rational::to_string() const { return num().get_str() + "/" + den().get_str(); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------
// FieldReal

namespace {

// Splits d = f^2 * core with core squarefree (trial division).
std::pair<Integer, Integer> square_split(Integer d) {
  Integer f = 1;
  for (Integer p = 2; p * p <= d; ++p) {
    Integer pp = p * p;
    while (d % pp == 0) {
      d /= pp;
      f *= p;
    }
    if (p > 10000000) {
      if (is_perfect_square(d)) {
        f *= isqrt(d);
        d = 1;
      }
      break;
    }
  }
  return {f, d};
}

}  // namespace

FieldReal::FieldReal(const Rational& a, const Rational& b, const Integer& d) : a_(a) {
  if (sgn(d) < 0) throw std::invalid_argument("negative radicand");
  if (b.is_zero() || sgn(d) == 0) return;
  auto [f, core] = square_split(d);
  if (core == 1) {
    a_ += b * Rational(f);
    return;
  }
  b_ = b * Rational(f);
  d_ = core;
}

FieldReal FieldReal::parse(std::string_view text) {
  static const std::regex kSurd(
      R"(\s*\(?\s*([+-]?[0-9]+)\s*([+-])\s*([0-9]+)\s*\*\s*sqrt\s*\(\s*([0-9]+)\s*\)\s*\)?\s*(?:/\s*([0-9]+))?\s*)");
  std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kSurd)) {
    Integer a = parse_integer(m[1].str());
    Integer b(m[3].str());
    if (m[2].str() == "-") b = -b;
    Integer d(m[4].str());
    Integer e = m[5].matched ? Integer(m[5].str()) : Integer(1);
    if (sgn(e) == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + s + "'");
    return FieldReal(Rational(a, e), Rational(b, e), d);
  }
  return FieldReal(Rational::parse(s));
}

std::string FieldReal::to_string() const {
  // Stored as a + b*sqrt(d); emit over the common denominator.
  Integer e;
  mpz_lcm(e.get_mpz_t(), a_.den().get_mpz_t(), b_.den().get_mpz_t());
  Integer an = a_.num() * (e / a_.den());
  Integer bn = b_.num() * (e / b_.den());
  std::string out = "(" + an.get_str();
  out += sgn(bn) < 0 ? "-" : "+";
  out += Integer(abs(bn)).get_str() + "*sqrt(" + d_.get_str() + "))/" + e.get_str();
  return out;
}

void FieldReal::adopt_field(const FieldReal& o) {
  if (o.b_.is_zero()) return;
  if (b_.is_zero()) {
    d_ = o.d_;
    return;
  }
  if (d_ != o.d_) {
    throw Error(ErrorKind::kFieldMismatch,
                "sqrt(" + d_.get_str() + ") vs sqrt(" + o.d_.get_str() + ")");
  }
}

FieldReal& FieldReal::operator+=(const FieldReal& o) {
  adopt_field(o);
  a_ += o.a_;
  b_ += o.b_;
  if (b_.is_zero()) d_ = 0;
  return *this;
}

FieldReal& FieldReal::operator-=(const FieldReal& o) {
  adopt_field(o);
  a_ -= o.a_;
  b_ -= o.b_;
  if (b_.is_zero()) d_ = 0;
  return *this;
}

FieldReal& FieldReal::operator*=(const FieldReal& o) {
  adopt_field(o);
  Rational a = a_ * o.a_ + b_ * o.b_ * Rational(d_);
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  if (b_.is_zero()) d_ = 0;
  return *this;
}

FieldReal& FieldReal::operator/=(const FieldReal& o) {
  adopt_field(o);
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * Rational(o.d_);
  if (norm.is_zero()) throw std::domain_error("division by zero field element");
  FieldReal conj = o;
  conj.b_ = -conj.b_;
  *this *= conj;
  a_ /= norm;
  b_ /= norm;
  return *this;
}

FieldReal operator-(const FieldReal& x) {
  FieldReal out = x;
  out.a_ = -out.a_;
  out.b_ = -out.b_;
  return out;
}

bool operator==(const FieldReal& x, const FieldReal& y) {
  return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.d_ == y.d_);
}

int field_sign(const FieldReal& x) {
  int sa = x.a().sign();
  int sb = x.b().sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger square wins.
  mpq_class a2 = x.a().mpq() * x.a().mpq();
  mpq_class b2d = x.b().mpq() * x.b().mpq() * mpq_class(x.d());
  int c = cmp(a2, b2d);
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

int field_cmp(const FieldReal& x, const FieldReal& y) { return field_sign(x - y); }

FieldReal field_abs(const FieldReal& x) { return field_sign(x) < 0 ? -x : x; }

FieldReal field_pow(const FieldReal& x, unsigned long n) {
  FieldReal result(1);
  FieldReal base = x;
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Integer field_floor(const FieldReal& x) {
  if (x.is_rational()) return x.a().floor();
  // x = (A + B*sqrt(d)) / E over a common denominator E > 0.
  Integer e;
  mpz_lcm(e.get_mpz_t(), x.a().den().get_mpz_t(), x.b().den().get_mpz_t());
  Integer a = x.a().num() * (e / x.a().den());
  Integer b = x.b().num() * (e / x.b().den());
  Integer n = b * b * x.d();
  Integer k = isqrt(n);
  if (sgn(b) > 0) return floor_div(a + k, e);
  Integer root_ceil = (k * k == n) ? k : k + 1;
  return floor_div(a - root_ceil, e);
}

Integer nearest_integer(const FieldReal& x) {
  FieldReal shifted = x + FieldReal(Rational(1, 2));
  if (shifted.is_rational() && shifted.a().is_integer()) {
    throw Error(ErrorKind::kHalfIntegerTie, x.a().to_string() + " is a half-integer");
  }
  return field_floor(shifted);
}

std::string to_decimal(const FieldReal& x, int digits) {
  if (digits < 0) digits = 0;
  int s = field_sign(x);
  Integer scale = ipow(Integer(10), static_cast<unsigned long>(digits));
  FieldReal scaled = field_abs(x) * FieldReal(Rational(scale)) + FieldReal(Rational(1, 2));
  Integer n = field_floor(scaled);
  Integer whole = n / scale;
  Integer frac = n % scale;
  std::string out;
  if (s < 0 && sgn(n) != 0) out += "-";
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

int power_product_cmp(std::span<const PowerTerm> lhs, std::span<const PowerTerm> rhs) {
  Integer l = 1;
  auto absorb = [&l](std::span<const PowerTerm> side) {
    for (const auto& t : side) {
      if (t.base.sign() <= 0) throw std::invalid_argument("power_product_cmp needs positive bases");
      Integer den = t.exp.den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
  };
  absorb(lhs);
  absorb(rhs);
  Rational left(1);
  Rational right(1);
  auto raise = [&l](std::span<const PowerTerm> side, Rational& same, Rational& other) {
    for (const auto& t : side) {
      Integer n = t.exp.num() * (l / t.exp.den());
      if (!n.fits_slong_p()) throw std::overflow_error("exponent too large");
      long e = n.get_si();
      if (e >= 0) {
        same *= t.base.pow(e);
      } else {
        other *= t.base.pow(-e);
      }
    }
  };
  raise(lhs, left, right);
  raise(rhs, right, left);
  auto c = left <=> right;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int rat_pow_cmp(const Rational& x, const Rational& e, const Rational& y, const Rational& f) {
  const PowerTerm lhs[] = {{x, e}};
  const PowerTerm rhs[] = {{y, f}};
  return power_product_cmp(lhs, rhs);
}

}  // namespace bpv
