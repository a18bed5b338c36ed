#include "bpv/diophantine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace bpv {

const Integer& CFExpansion::term(std::size_t k) const {
  if (k < preperiod.size()) return preperiod[k];
  return period[(k - preperiod.size()) % period.size()];
}

std::vector<Convergent> CFExpansion::convergents_until(const Integer& q_max) const {
  std::vector<Convergent> out;
  Integer p2 = 0, q2 = 1, p1 = 1, q1 = 0;
  for (std::size_t k = 0;; ++k) {
    const Integer& a = term(k);
    Integer p = a * p1 + p2;
    Integer q = a * q1 + q2;
    out.push_back({p, q});
    if (q > q_max) break;
    p2 = std::move(p1);
    q2 = std::move(q1);
    p1 = out.back().p;
    q1 = out.back().q;
  }
  return out;
}

namespace {

// floor((P + sqrt(D)) / Q) with D not a perfect square.
Integer surd_floor(const Integer& p, const Integer& d, const Integer& q) {
  Integer k = isqrt(d);
  if (sgn(q) > 0) return floor_div(p + k, q);
  return floor_div(p + k + 1, q);
}

}  // namespace

CFExpansion cf_expand(const FieldReal& theta) {
  if (theta.is_rational()) {
    throw Error(ErrorKind::kRationalInput, "theta = " + theta.a().to_string() + " is rational");
  }
  // theta = (X + Y sqrt(d)) / E.
  Integer e;
  mpz_lcm(e.get_mpz_t(), theta.a().den().get_mpz_t(), theta.b().den().get_mpz_t());
  Integer x = theta.a().num() * (e / theta.a().den());
  Integer y = theta.b().num() * (e / theta.b().den());
  Integer P = x, Q = e;
  if (sgn(y) < 0) {
    P = -x;
    Q = -e;
  }
  Integer D = y * y * theta.d();
  if ((D - P * P) % Q != 0) {
    Integer aq = abs(Q);
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }

  CFExpansion cf;
  cf.theta = theta;
  std::vector<Integer> terms;
  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  constexpr std::size_t kMaxTerms = 1000000;
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    if (k >= 1) {
      auto [it, fresh] = seen.emplace(std::make_pair(P, Q), k);
      if (!fresh) {
        std::size_t start = it->second;
        cf.preperiod.assign(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(start));
        cf.period.assign(terms.begin() + static_cast<std::ptrdiff_t>(start), terms.end());
        break;
      }
    }
    Integer a = surd_floor(P, D, Q);
    terms.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  if (cf.period.empty()) throw std::runtime_error("continued fraction period not found");
  cf.convergents = cf.convergents_until(ipow(Integer(10), 20));
  return cf;
}

BadnessBound badness_floor(const CFExpansion& cf) {
  Integer m = 0;
  for (std::size_t k = 1; k < cf.preperiod.size(); ++k) m = std::max(m, Integer(cf.preperiod[k]));
  for (const auto& a : cf.period) m = std::max(m, a);
  return {cf.theta, m, Rational(Integer(1), m + 2)};
}

BadnessScan brute_force_badness(const FieldReal& theta, std::uint64_t q_max) {
  if (q_max < 1) throw std::invalid_argument("q_max must be >= 1");
  BadnessScan best;
  bool have = false;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    FieldReal qt = theta * FieldReal(Rational(Integer(static_cast<unsigned long>(q))));
    Integer p = nearest_integer(qt);
    FieldReal v = field_abs(qt - FieldReal(Rational(p))) *
                  FieldReal(Rational(Integer(static_cast<unsigned long>(q))));
    if (!have || field_cmp(v, best.value) < 0) {
      best.q_star = static_cast<unsigned long>(q);
      best.value = v;
      have = true;
    }
  }
  Integer scale = ipow(Integer(10), 15);
  Integer n = field_floor(best.value * FieldReal(Rational(scale)));
  best.lower = Rational(n, scale);
  best.upper = Rational(n + 1, scale);
  return best;
}

bool below_power_threshold(const FieldReal& x, const Rational& eps, const Rational& s,
                           const Integer& q) {
  if (s.sign() < 0) throw std::invalid_argument("negative exponent");
  FieldReal ax = field_abs(x);
  if (field_sign(ax) == 0) return eps.sign() > 0;
  unsigned long v = s.den().get_ui();
  unsigned long u = s.num().get_ui();
  FieldReal lhs = field_pow(ax, v) * FieldReal(Rational(ipow(q, u)));
  return field_cmp(lhs, FieldReal(eps.pow(static_cast<long>(v)))) < 0;
}

namespace {

// Distance from the closed interval [lo, hi] to the nearest integer.
FieldReal distance_to_integers(const FieldReal& lo, const FieldReal& hi) {
  Integer k = field_floor(hi);
  FieldReal kf{Rational(k)};
  if (field_cmp(kf, lo) >= 0) return FieldReal(0);
  FieldReal left = lo - kf;
  FieldReal right = FieldReal(Rational(Integer(k + 1))) - hi;
  return field_cmp(left, right) <= 0 ? left : right;
}

struct OstrowskiWalk {
  const FieldReal& theta;
  const Rational& eps;
  const Rational& s_exp;
  const Integer& q_min;
  const Integer& q_max;
  std::vector<Integer> a;        // a_{k+1} bound for digit k
  std::vector<Integer> q;        // q_k
  std::vector<FieldReal> eta;    // q_k theta - p_k
  std::vector<FieldReal> bound;  // sum_{k>=j} a_{k+1} |eta_k|
  std::vector<Integer> qreach;   // sum_{k>=j} a_{k+1} q_k
  std::vector<SmallPart> out;

  void walk(std::size_t j, const Integer& q_part, const FieldReal& s, bool prev_zero) {
    if (q_part > q_max) return;
    if (q_part + qreach[j] < q_min) return;
    Integer q_floor = std::max(std::max(q_part, q_min), Integer(1));
    FieldReal dmin = distance_to_integers(s - bound[j], s + bound[j]);
    if (!below_power_threshold(dmin, eps, s_exp, q_floor)) return;
    if (j == q.size()) {
      if (q_part < q_min || sgn(q_part) <= 0) return;
      FieldReal qt = theta * FieldReal(Rational(q_part));
      Integer p = nearest_integer(qt);
      if (below_power_threshold(qt - FieldReal(Rational(p)), eps, s_exp, q_part)) {
        out.push_back({q_part, p});
      }
      return;
    }
    Integer top = (j == 0) ? Integer(a[0] - 1) : a[j];
    for (Integer b = 0; b <= top; ++b) {
      if (j > 0 && b == a[j] && !prev_zero) break;
      walk(j + 1, q_part + b * q[j], s + FieldReal(Rational(b)) * eta[j], b == 0);
    }
  }
};

}  // namespace

std::vector<SmallPart> small_fractional_parts(const FieldReal& theta, const Rational& eps,
                                              const Rational& s_exp, const Integer& q_min,
                                              const Integer& q_max) {
  if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
  if (q_max < q_min || q_max < 1) return {};
  CFExpansion cf = cf_expand(theta);
  std::vector<Convergent> conv = cf.convergents_until(q_max);
  OstrowskiWalk w{theta, eps, s_exp, q_min, q_max, {}, {}, {}, {}, {}, {}};
  // Digits k = 0..K with q_K <= q_max.
  for (std::size_t k = 0; k < conv.size() && conv[k].q <= q_max; ++k) {
    w.q.push_back(conv[k].q);
    w.a.push_back(cf.term(k + 1));
    w.eta.push_back(theta * FieldReal(Rational(conv[k].q)) - FieldReal(Rational(conv[k].p)));
  }
  std::size_t n = w.q.size();
  w.bound.assign(n + 1, FieldReal(0));
  w.qreach.assign(n + 1, Integer(0));
  for (std::size_t j = n; j-- > 0;) {
    w.bound[j] = w.bound[j + 1] + FieldReal(Rational(w.a[j])) * field_abs(w.eta[j]);
    w.qreach[j] = w.qreach[j + 1] + w.a[j] * w.q[j];
  }
  w.walk(0, Integer(0), FieldReal(0), true);
  std::sort(w.out.begin(), w.out.end(), [](const SmallPart& x, const SmallPart& y) { return x.q < y.q; });
  return w.out;
}

}  // namespace bpv
