#include <algorithm>
#include <random>
#include <vector>

#include "bpv/diophantine.hpp"
#include "doctest.h"

using namespace bpv;

namespace {

FieldReal golden() { return FieldReal::parse("(1+1*sqrt(5))/2"); }
FieldReal root2() { return FieldReal::parse("(0+1*sqrt(2))/1"); }

// Continued-fraction terms from a 4096-bit float, an oracle independent of
// the surd recurrence.
std::vector<long> float_terms(const FieldReal& x, int n) {
  mpf_set_default_prec(4096);
  mpf_class v = mpf_class(x.a().mpq()) + mpf_class(x.b().mpq()) * sqrt(mpf_class(x.d()));
  std::vector<long> out;
  for (int i = 0; i < n; ++i) {
    mpf_class f = floor(v);
    out.push_back(f.get_si());
    v = 1 / (v - f);
  }
  return out;
}

// Direct scan over q: the set the Ostrowski walk must reproduce.
std::vector<SmallPart> direct_scan(const FieldReal& theta, const Rational& eps, const Rational& s,
                                   long q_min, long q_max) {
  std::vector<SmallPart> out;
  for (long q = q_min; q <= q_max; ++q) {
    FieldReal qt = theta * FieldReal(Rational(q));
    Integer p = nearest_integer(qt);
    if (below_power_threshold(qt - FieldReal(Rational(p)), eps, s, Integer(q))) out.push_back({Integer(q), p});
  }
  return out;
}

}  // namespace

TEST_CASE("periodic expansions") {
  CFExpansion g = cf_expand(golden());
  CHECK(g.preperiod == std::vector<Integer>{1});
  CHECK(g.period == std::vector<Integer>{1});
  CFExpansion r = cf_expand(root2());
  CHECK(r.preperiod == std::vector<Integer>{1});
  CHECK(r.period == std::vector<Integer>{2});
  CHECK_THROWS_AS(cf_expand(FieldReal(Rational(Integer(3), Integer(7)))), Error);
}

TEST_CASE("expansions match a float oracle") {
  const char* cases[] = {"(0+1*sqrt(2))/1", "(1+1*sqrt(5))/2", "(0+1*sqrt(7))/1", "(3+2*sqrt(13))/5",
                         "(-4+1*sqrt(19))/3", "(0+1*sqrt(94))/1", "(5-1*sqrt(11))/2"};
  for (const char* c : cases) {
    FieldReal x = FieldReal::parse(c);
    CFExpansion cf = cf_expand(x);
    std::vector<long> t = float_terms(x, 60);
    for (std::size_t k = 0; k < t.size(); ++k) CHECK(cf.term(k) == t[k]);
    const Convergent& last = cf.convergents.back();
    CHECK(last.q > ipow(Integer(10), 20));
  }
}

TEST_CASE("badness floor") {
  CHECK(badness_floor(cf_expand(golden())).certified_floor == Rational(Integer(1), Integer(3)));
  CHECK(badness_floor(cf_expand(root2())).certified_floor == Rational(Integer(1), Integer(4)));
  // a_0 = 9 does not enter the floor.
  CHECK(badness_floor(cf_expand(FieldReal::parse("(0+1*sqrt(94))/1"))).max_partial_quotient == 18);
}

TEST_CASE("brute-force badness never beats the certified floor") {
  for (const char* c : {"(0+1*sqrt(2))/1", "(1+1*sqrt(5))/2", "(0+1*sqrt(7))/1", "(0+1*sqrt(94))/1"}) {
    FieldReal x = FieldReal::parse(c);
    BadnessScan scan = brute_force_badness(x, 2000);
    Rational floor = badness_floor(cf_expand(x)).certified_floor;
    CHECK(scan.lower >= floor);
    CHECK(scan.lower < scan.upper);
  }
  BadnessScan g = brute_force_badness(golden(), 10);
  CHECK(g.q_star == 1);
  CHECK(to_decimal(g.value, 6) == "0.381966");
  BadnessScan r = brute_force_badness(root2(), 10);
  CHECK(r.q_star == 2);
  CHECK(r.value == FieldReal(Rational(6), Rational(-4), Integer(2)));
}

TEST_CASE("small fractional parts examples") {
  auto g = small_fractional_parts(golden(), Rational(Integer(1), Integer(100)), Rational(0), 1, 1000);
  bool has55 = false;
  for (auto& sp : g) has55 |= sp.q == 55;
  CHECK(has55);
  CHECK(small_fractional_parts(golden(), Rational(Integer(1), Integer(100)), Rational(0), 1, 3).empty());
  auto r = small_fractional_parts(root2(), Rational(Integer(1), Integer(10)), Rational(Integer(1), Integer(2)), 1, 30);
  bool has29 = false;
  for (auto& sp : r) has29 |= sp.q == 29;
  CHECK(has29);
}

TEST_CASE("ostrowski walk agrees with a direct scan") {
  struct Case { const char* theta; Rational eps; Rational s; long lo, hi; };
  std::vector<Case> cases = {
      {"(1+1*sqrt(5))/2", Rational(Integer(1), Integer(3)), Rational(Integer(1), Integer(4)), 1, 3000},
      {"(1+1*sqrt(5))/2", Rational(Integer(1), Integer(50)), Rational(0), 1, 5000},
      {"(0+1*sqrt(2))/1", Rational(Integer(1), Integer(4)), Rational(Integer(1), Integer(2)), 1, 4000},
      {"(0+1*sqrt(2))/1", Rational(Integer(1), Integer(1024)), Rational(Integer(1), Integer(2)), 1, 5000},
      {"(0+1*sqrt(7))/1", Rational(Integer(1), Integer(5)), Rational(Integer(1), Integer(3)), 17, 2500},
      {"(3+2*sqrt(13))/5", Rational(Integer(1), Integer(2)), Rational(Integer(1), Integer(2)), 1, 2000},
      {"(0+1*sqrt(94))/1", Rational(Integer(1), Integer(7)), Rational(Integer(2), Integer(3)), 100, 3000},
  };
  for (const auto& c : cases) {
    FieldReal x = FieldReal::parse(c.theta);
    auto fast = small_fractional_parts(x, c.eps, c.s, c.lo, c.hi);
    auto slow = direct_scan(x, c.eps, c.s, c.lo, c.hi);
    CHECK(fast == slow);
  }
}

TEST_CASE("convergents satisfy the best-approximation bound") {
  for (const char* c : {"(0+1*sqrt(2))/1", "(1+1*sqrt(5))/2", "(0+1*sqrt(94))/1", "(3+2*sqrt(13))/5"}) {
    FieldReal x = FieldReal::parse(c);
    CFExpansion cf = cf_expand(x);
    for (std::size_t k = 0; k + 1 < cf.convergents.size(); ++k) {
      const auto& cv = cf.convergents[k];
      CHECK(gcd(cv.p, cv.q) == 1);
      FieldReal err = field_abs(x * FieldReal(Rational(cv.q)) - FieldReal(Rational(cv.p)));
      CHECK(field_cmp(err, FieldReal(Rational(Integer(1), cf.convergents[k + 1].q))) < 0);
    }
  }
}

TEST_CASE("floor stays below brute-force scans at several horizons") {
  for (const char* c : {"(0+1*sqrt(2))/1", "(1+1*sqrt(5))/2", "(0+1*sqrt(3))/1"}) {
    FieldReal x = FieldReal::parse(c);
    Rational floor = badness_floor(cf_expand(x)).certified_floor;
    for (std::uint64_t qm : {1000ULL, 10000ULL, 100000ULL}) CHECK(brute_force_badness(x, qm).lower >= floor);
  }
  BadnessScan one = brute_force_badness(golden(), 1);
  CHECK(one.q_star == 1);
  CHECK(to_decimal(one.value, 4) == "0.3820");
}

TEST_CASE("random windows agree with the direct scan") {
  std::mt19937_64 rng(2024);
  const char* thetas[] = {"(0+1*sqrt(2))/1", "(1+1*sqrt(5))/2", "(0+1*sqrt(3))/1", "(1+2*sqrt(7))/3"};
  std::uniform_int_distribution<long> lo(1, 200000), width(1, 8000), en(1, 20), sn(0, 4);
  for (int i = 0; i < 50; ++i) {
    FieldReal x = FieldReal::parse(thetas[i % 4]);
    long a = lo(rng);
    long b = std::min(a + width(rng), 1000000L);
    Rational eps(Integer(1), Integer(en(rng)));
    Rational s(Integer(sn(rng)), Integer(4));
    CHECK(small_fractional_parts(x, eps, s, a, b) == direct_scan(x, eps, s, a, b));
  }
}
