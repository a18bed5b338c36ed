#include <cmath>
#include <random>

#include "bpv/verify.hpp"
#include "configs.hpp"
#include "doctest.h"

using namespace bpv;
using testcfg::q;

namespace {

GameConstants sparse() {
  return make_constants(q(1, 2), q(1, 2), q(1, 2), FieldReal::parse("(0+1*sqrt(2))/1"), q(1), CMode::kOverride,
                        Rational(Integer(1), Integer(1) << 40));
}

long double ld(const Rational& x) { return std::strtold(to_decimal(FieldReal(x), 40).c_str(), nullptr); }

// max(q^s ||q theta||, q^t ||q y||) >= c for q <= bound, in long double; the
// first failing q, or 0.
long oracle_small_q(long double theta, long double s, long double t, long double c, long double y, long bound) {
  for (long qq = 1; qq <= bound; ++qq) {
    long double x = qq * theta, z = qq * y;
    long double a = std::pow((long double)qq, s) * std::fabs(x - std::nearbyint(x));
    long double b = std::pow((long double)qq, t) * std::fabs(z - std::nearbyint(z));
    if (std::max(a, b) < c) return qq;
  }
  return 0;
}

struct Played {
  GameConstants k;
  GameConfig cfg;
  Transcript t;
};

}  // namespace

TEST_CASE("cleared inequality terms") {
  GameConstants k = testcfg::dense();
  const long double theta = std::sqrt(2.0L);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    Integer qq(static_cast<long>(rng() % 5000 + 1));
    Integer p = nearest_integer(k.theta * FieldReal(Rational(qq)));
    Integer r(static_cast<long>(rng() % (512 * qq.get_ui())));
    RatPoint P{p, qq, r};
    Rational y(Integer(static_cast<long>(rng() % 1000000)), Integer(1000000 / 512));
    long double qd = qq.get_d();
    long double a = std::sqrt(qd) * std::fabs(qd * theta - p.get_d());
    long double b = std::sqrt(qd) * std::fabs(qd * ld(y) - r.get_d());
    if (std::fabs(a - 0.1L) > 1e-12L) CHECK(first_term_clear(P, k) == (a >= 0.1L));
    if (std::fabs(b - 0.1L) > 1e-12L) CHECK(second_term_clear(P, y, k) == (b >= 0.1L));
    // The second term fails exactly on Delta(P).
    CHECK(second_term_clear(P, y, k) == !delta_contains(P, y, k));
    // A point of C fails the first term.
    CHECK(first_term_clear(P, k) == !in_C(P, k));
  }
}

TEST_CASE("a neighbourhood that meets an interval fails the inequality somewhere in it") {
  GameConstants k = testcfg::dense();
  PointCatalog cat(k, 2);
  IntervalQ region{q(3), q(5)};
  auto pts = cat.meeting(region, 1, 2);
  REQUIRE(!pts.empty());
  for (const auto& cp : pts) {
    const Rational centre = cp.point.y();
    IntervalQ I{centre - q(1, 1000000), centre + q(1, 1000000)};
    REQUIRE(delta_meets(cp.point, I, k));
    CHECK_FALSE(midpoint_clear(cp.point, centre, k));
    CHECK(midpoint_clear(cp.point, centre + q(1), k) == !delta_contains(cp.point, centre + q(1), k));
  }
}

TEST_CASE("small-q scan against a floating oracle") {
  GameConstants k = testcfg::dense();
  const long double theta = std::sqrt(2.0L);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    Rational y(Integer(static_cast<long>(rng() % 100000000)), Integer(100000000 / 512));
    SmallQScan s = small_q_scan(k, y, 3000);
    long bad = oracle_small_q(theta, 0.5L, 0.5L, 0.1L, ld(y), 3000);
    CHECK(s.ok == (bad == 0));
    if (!s.ok) CHECK(s.witness->q == bad);
    CHECK(s.second_term_checks > 0);
  }
  // y = 1/29 sits on the centre of the q = 29 point.
  SmallQScan s = small_q_scan(k, q(1, 29), 3000);
  CHECK_FALSE(s.ok);
  REQUIRE(s.witness);
  CHECK(s.witness->q == oracle_small_q(theta, 0.5L, 0.5L, 0.1L, 1.0L / 29, 3000));
  CHECK(s.witness->q <= 29);

  // No denominator below 10^5 comes near c in the golden configuration.
  GameConstants g2 = testcfg::g2();
  SmallQScan g = small_q_scan(g2, q(1, 3), 100000);
  CHECK(g.ok);
  CHECK(g.second_term_checks == 0);
}

TEST_CASE("empty point set: trivially valid certificate") {
  GameConstants k = sparse();
  PointCatalog cat(k, 3);
  GeometricTree tree(cat);
  HitPlanner hp(tree);
  auto sel = extract_selector(hp, 3, 6);
  GameConfig cfg = make_game_config(k, 3);
  AliceBpv alice(sel, k);
  BobRandom bob(4);
  Transcript t = play(k, cfg, alice, bob);
  Certificate c = certify(t, k, cfg, cat);
  CHECK(c.valid());
  CHECK(c.verdicts.empty());
  CHECK(c.small_q.bound == 100000);
  CHECK(c.small_q.ok);
  CHECK(c.window.contains(c.final_interval));
  CHECK(c.y == c.final_interval.midpoint());
  CHECK(recheck(c, &t).empty());

  Transcript unfinished = t;
  unfinished.status = "abort";
  CHECK_THROWS_AS(certify(unfinished, k, cfg, cat), Error);
  GameConfig other = make_game_config(k, 2);
  CHECK_THROWS_AS(certify(t, k, other, cat), Error);
  CertifyOptions outside;
  outside.point = c.final_interval.right + q(1);
  CHECK_THROWS_AS(certify(t, k, cfg, cat, outside), Error);
}

TEST_CASE("golden certificates") {
  GameConstants k = testcfg::g2();
  PointCatalog cat(k, 20);
  GeometricTree tree(cat);
  HitPlanner hp(tree);
  auto sel = extract_selector(hp, 20, 6);
  GameConfig cfg = make_game_config(k, 20);

  std::vector<Transcript> games;
  for (std::uint64_t seed : {0u, 1u}) {
    AliceBpv alice(sel, k);
    BobRandom bob(seed);
    games.push_back(play(k, cfg, alice, bob));
  }
  {
    AliceBpv alice(sel, k);
    BobAdversarial bob(cat);
    games.push_back(play(k, cfg, alice, bob));
  }
  std::size_t with_points = 0;
  for (const auto& t : games) {
    REQUIRE(t.status == "ok");
    Certificate c = certify(t, k, cfg, cat);
    CHECK(c.valid());
    CHECK(c.mode == CMode::kCertified);
    CHECK(c.small_q.ok);
    for (const auto& v : c.verdicts) CHECK(v.point.level <= 20);
    if (!c.verdicts.empty()) ++with_points;

    // Idempotent, and the JSON form is lossless.
    Certificate again = certify(t, k, cfg, cat);
    CHECK(again == c);
    CHECK(to_json(again) == to_json(c));
    Certificate back = certificate_from_json(to_json(c));
    CHECK(back == c);
    CHECK(recheck(back, &t).empty());
  }
  CHECK(with_points > 0);

  // Fault injection: move the final interval onto a dangerous point.
  const Transcript& t = games[0];
  Certificate c = certify(t, k, cfg, cat);
  REQUIRE(!c.verdicts.empty());
  const ClassifiedPoint P = c.verdicts.front().point;
  const Rational half = c.final_interval.length() / q(2);
  Transcript tampered = t;
  tampered.final_interval = {P.point.y() - half, P.point.y() + half};
  try {
    certify(tampered, k, cfg, cat);
    FAIL("tampered transcript was certified");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCertificationFailed);
    CHECK(std::string(e.what()).find(P.point.to_string()) != std::string::npos);
  }
  // The same point fails the inequality at its own centre.
  CHECK_FALSE(midpoint_clear(P.point, P.point.y(), k));

  // Tampered certificates are caught by the recheck.
  Certificate moved = c;
  moved.final_interval = tampered.final_interval;
  moved.y = tampered.final_interval.midpoint();
  CHECK_FALSE(recheck(moved).empty());
  Certificate dropped = c;
  dropped.verdicts.pop_back();
  CHECK_FALSE(recheck(dropped).empty());
  Certificate flipped = c;
  flipped.verdicts.front().y_clear = false;
  CHECK_FALSE(flipped.valid());
  CHECK_FALSE(recheck(flipped).empty());
  Certificate cheap = c;
  cheap.c = c.c * q(2);
  CHECK_FALSE(recheck(cheap).empty());
  Transcript other = games[1];
  CHECK_FALSE(recheck(c, &other).empty());
}

TEST_CASE("lemma audits in the golden configuration") {
  GameConstants k = testcfg::g2();
  PointCatalog cat(k, 20);
  GeometricTree tree(cat);
  auto anchors = cluster_anchors(k, 6, 2, 1);
  REQUIRE(!anchors.empty());
  for (const auto& a : anchors) CHECK(a.height() == 6);
  Lemma42Report r42 = audit_lemma42(tree, 20, anchors);
  CHECK(r42.ok());
  CHECK(r42.points > 0);
  CHECK(r42.multi_groups > 0);
  Lemma43Report r43 = audit_lemma43(tree, 20, anchors);
  CHECK(r43.ok());
  CHECK(r43.max_count >= 1);
  CHECK(r43.max_count <= 2);
  CHECK(r43.triples == r42.groups);
}

TEST_CASE("lemma audits in an override configuration report") {
  GameConstants k = testcfg::g1();
  PointCatalog cat(k, 3);
  GeometricTree tree(cat);
  auto anchors = cluster_anchors(k, 2, 2, 1);
  Lemma42Report r42 = audit_lemma42(tree, 3, anchors);
  Lemma43Report r43 = audit_lemma43(tree, 3, anchors);
  CHECK(r42.points > 0);
  CHECK(r43.triples == r42.groups);
  CHECK(to_json(r42).find("\"kind\": \"lemma42\"") != std::string::npos);
  CHECK(to_json(r43).find("\"max_count\"") != std::string::npos);

  // Nothing to audit without points.
  GameConstants e = sparse();
  PointCatalog ecat(e, 3);
  GeometricTree etree(ecat);
  Lemma43Report empty = audit_lemma43(etree, 3, {Vertex{}});
  CHECK(empty.points == 0);
  CHECK(empty.max_count == 0);
}

TEST_CASE("growth audit") {
  GameConstants k = testcfg::g2();
  PointCatalog cat(k, 20);
  GeometricTree tree(cat);
  GrowthReport g = audit_growth(tree, 3);
  CHECK(g.asserted);
  CHECK(g.ok());
  REQUIRE(g.audit.a.size() == 4);
  CHECK(g.audit.a[1] >= 4);

  GameConstants e = sparse();
  PointCatalog ecat(e, 3);
  GeometricTree etree(ecat);
  GrowthReport ge = audit_growth(etree, 3);
  CHECK_FALSE(ge.asserted);
  CHECK(ge.audit.a == std::vector<Integer>{1, 6, 36, 216});
}
