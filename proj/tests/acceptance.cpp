// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every check is recomputed here rather than trusted from
// the library's own flags where an independent route is cheap.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bpv/verify.hpp"
#include "cli.hpp"
#include "configs.hpp"

using namespace bpv;
using testcfg::q;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

// ---- criterion 2 oracle -------------------------------------------------

std::set<Vertex> random_mask(Digit n, long h, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::set<Vertex> out;
  std::vector<Vertex> layer{Vertex{}};
  for (long i = 0; i < h; ++i) {
    std::vector<Vertex> next;
    for (const auto& v : layer) {
      for (Digit d = 0; d < n; ++d) {
        Vertex c = v.child(d);
        if (keep(rng)) out.insert(c);
        next.push_back(c);
      }
    }
    layer = std::move(next);
  }
  return out;
}

bool meets_S(const RegularSubtree& t, long h, const Vertex& base, MaskTree& tree) {
  for (const auto& leaf : subtree_leaves(t, h)) {
    Vertex w = base;
    for (Digit d : leaf.path) w.path.push_back(d);
    if (tree.in_S(w)) return true;
  }
  return false;
}

// Explicit enumeration of the (m, h)-regular subtrees; when there are too
// many, the root choice is factored out.
bool oracle_hit(MaskTree& tree, const Vertex& v, Digit m, long h) {
  const Digit n = tree.branching();
  if (!tree.in_S(v)) return false;
  if (h == 0) return true;
  if (count_regular_subtrees(n, m, h) <= 5000) {
    for (const auto& t : oracle_enumerate_regular_subtrees(n, m, h)) {
      if (!meets_S(t, h, v, tree)) return false;
    }
    return true;
  }
  std::vector<bool> all_meet(n);
  auto below = oracle_enumerate_regular_subtrees(n, m, h - 1);
  for (Digit d = 0; d < n; ++d) {
    Vertex c = v.child(d);
    bool ok = tree.in_S(c);
    for (std::size_t i = 0; ok && i < below.size(); ++i) ok = meets_S(below[i], h - 1, c, tree);
    all_meet[d] = ok;
  }
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<Digit>(__builtin_popcount(mask)) != m) continue;
    bool any = false;
    for (Digit d = 0; d < n; ++d) any |= (mask >> d & 1u) && all_meet[d];
    if (!any) return false;
  }
  return true;
}

// The selector spans an (N - m + 1, h)-regular subtree lying in S.
bool selector_verified(SubtreeSelector& sel, MaskTree& tree, Digit n, Digit m) {
  const auto& ch = sel.materialize();
  std::vector<Vertex> frontier{Vertex{}};
  for (long i = 0; i < sel.horizon(); ++i) {
    std::vector<Vertex> next;
    for (const auto& v : frontier) {
      if (!tree.in_S(v)) return false;
      auto it = ch.find(v);
      if (it == ch.end()) return false;
      const auto& c = it->second;
      if (c.size() != static_cast<std::size_t>(n - m + 1)) return false;
      std::set<Digit> distinct(c.begin(), c.end());
      if (distinct.size() != c.size() || *distinct.rbegin() >= n) return false;
      for (Digit d : c) next.push_back(v.child(d));
    }
    frontier = std::move(next);
  }
  return std::all_of(frontier.begin(), frontier.end(), [&](const Vertex& v) { return tree.in_S(v); });
}

// ---- criterion 3 oracle -------------------------------------------------

Integer iabs(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// B y = A x + C through P with gcd 1, B > 0, |A|^v <= q^u, B^v <= q^w.
bool cleared_line_ok(const RatPoint& P, const Line& L, const GameConstants& k) {
  if (L.B <= 0) return false;
  if (gcd(gcd(iabs(L.A), L.B), iabs(L.C)) != 1) return false;
  if (L.B * P.r != L.A * P.p + L.C * P.q) return false;
  if (ipow(iabs(L.A), k.v) > ipow(P.q, k.u)) return false;
  return ipow(L.B, k.v) <= ipow(P.q, k.w);
}

// Smallest B, then smallest |A|, then A >= 0, in machine integers.
std::optional<Line> brute_line(const RatPoint& P, const GameConstants& k) {
  const long qq = P.q.get_si(), p = Integer(P.p % P.q).get_si(), r = Integer(P.r % P.q).get_si();
  auto pw = [](long b, unsigned long e) {
    long x = 1;
    for (unsigned long i = 0; i < e; ++i) x *= b;
    return x;
  };
  const long qu = pw(qq, k.u), qw = pw(qq, k.w);
  for (long B = 1; pw(B, k.v) <= qw; ++B) {
    for (long a = 0; pw(a, k.v) <= qu; ++a) {
      for (long A : {a, -a}) {
        if (A < 0 && a == 0) continue;
        if (((A * p - B * r) % qq + qq) % qq != 0) continue;
        Integer Ci = Integer(B) * P.r - Integer(A) * P.p;
        Integer C = Ci / P.q;
        return Line{Integer(A), Integer(B), C};
      }
    }
  }
  return std::nullopt;
}

// ---- criterion 4 oracle -------------------------------------------------

// Sign of B - H^(t/(1+t)) R^(-e), every denominator cleared by hand.
int threshold_cmp_oracle(const Integer& B, const Rational& H, const Rational& t, const Rational& R,
                         const Rational& e) {
  Rational a = t / (Rational(1) + t);
  Integer L;
  mpz_lcm(L.get_mpz_t(), a.den().get_mpz_t(), e.den().get_mpz_t());
  long ha = (a * Rational(L)).num().get_si();
  long re = (e * Rational(L)).num().get_si();
  unsigned long l = L.get_ui();
  Integer lhs_num = ipow(B, l), lhs_den = 1;
  Integer rn = re >= 0 ? R.num() : R.den(), rd = re >= 0 ? R.den() : R.num();
  lhs_num *= ipow(rn, static_cast<unsigned long>(std::labs(re)));
  lhs_den *= ipow(rd, static_cast<unsigned long>(std::labs(re)));
  Integer rhs_num = ipow(H.num(), static_cast<unsigned long>(ha));
  Integer rhs_den = ipow(H.den(), static_cast<unsigned long>(ha));
  Integer x = lhs_num * rhs_den, y = rhs_num * lhs_den;
  return x < y ? -1 : (x > y ? 1 : 0);
}

Rational class_exponent(const GameConstants& k, long j) { return k.lambda + Rational(j - 1) * k.mu; }

// Number of (n, k) cells of the partition containing the point, and the one
// found when unique.
std::pair<int, std::pair<long, long>> partition_cells(const ClassifiedPoint& cp, const GameConstants& k, long n_top) {
  Rational qB(Integer(cp.point.q * cp.line.B));
  int hits = 0;
  std::pair<long, long> found{0, 0};
  for (long n = 1; n <= n_top; ++n) {
    if (!(k.H(n) <= qB && qB < k.H(n + 1))) continue;
    for (long j = 1; j <= n; ++j) {
      bool above = threshold_cmp_oracle(cp.line.B, k.H(n + 1), k.t, k.R, class_exponent(k, j)) >= 0;
      bool below = j == 1 || threshold_cmp_oracle(cp.line.B, k.H(n + 1), k.t, k.R, class_exponent(k, j - 1)) < 0;
      if (above && below) {
        ++hits;
        found = {n, j};
      }
    }
  }
  return {hits, found};
}

// ---- shared golden setup -------------------------------------------------

struct Golden {
  GameConstants k = testcfg::g2();
  PointCatalog cat{k};
  GeometricTree tree{cat};
  HitPlanner hp{tree};
  long nstar = 0;
  long D = 0;
  std::optional<SubtreeSelector> sel;
  std::optional<GameConfig> cfg;
  std::vector<Transcript> random_games;       // seeds 0..99
  std::vector<Transcript> adversarial_games;  // seeds 0..9

  Golden() {
    nstar = cat.first_level().first;
    D = nstar + 2;
    sel.emplace(extract_selector(hp, D, 6));
    cfg = make_game_config(k, D);
  }

  Transcript play_random(std::uint64_t seed) {
    AliceBpv alice(*sel, k);
    BobRandom bob(seed);
    return play(k, *cfg, alice, bob);
  }
  Transcript play_adversarial(std::uint64_t seed) {
    AliceBpv alice(*sel, k);
    BobAdversarial bob(cat, seed);
    return play(k, *cfg, alice, bob);
  }
};

std::unique_ptr<Golden> golden_lab;
Golden& golden() {
  if (!golden_lab) golden_lab = std::make_unique<Golden>();
  return *golden_lab;
}

struct G1 {
  GameConstants k = testcfg::g1();
  PointCatalog cat{k};
  GeometricTree tree{cat};
  // The horizon of configs/sqrt2.conf; D = n* + 2 is defined for G2 only.
  long D = 3;
  std::vector<ClassifiedPoint> points;
  G1() {
    points = cat.meeting(k.a0, 1, D);
  }
};

std::unique_ptr<G1> g1_lab;
G1& g1() {
  if (!g1_lab) g1_lab = std::make_unique<G1>();
  return *g1_lab;
}

// ---- criteria ------------------------------------------------------------

Outcome badness() {
  FieldReal phi = FieldReal::parse("(1+1*sqrt(5))/2");
  BadnessScan scan = brute_force_badness(phi, 100000);
  Integer a = 1, b = 1;
  while (a + b <= 100000) {
    Integer c = a + b;
    a = b;
    b = c;
  }
  FieldReal qt = phi * FieldReal(Rational(b));
  FieldReal val = FieldReal(Rational(b)) * field_abs(qt - FieldReal(Rational(nearest_integer(qt))));
  FieldReal target = FieldReal::parse("(0+1*sqrt(5))/5");
  bool near = field_cmp(field_abs(val - target), FieldReal(q(1, 10000))) < 0;
  std::ostringstream d;
  d << "min over q <= 1e5 in [" << to_decimal(FieldReal(scan.lower), 6) << ", " << to_decimal(FieldReal(scan.upper), 6)
    << "] at q = " << scan.q_star << "; q = " << b << " gives " << to_decimal(val, 6);
  return {scan.lower >= q(1, 3) && near && b == 75025, d.str()};
}

Outcome hit_oracle() {
  std::mt19937_64 rng(2024);
  long trials = 0, mismatches = 0, extractions = 0, bad_extractions = 0;
  for (Digit n = 1; n <= 4; ++n) {
    for (Digit m = 1; m <= n; ++m) {
      for (long h = 0; h <= 3; ++h) {
        for (int trial = 0; trial < 200; ++trial) {
          double p = 0.45 + 0.5 * static_cast<double>(trial % 10) / 9.0;
          MaskTree tree(n, random_mask(n, h, p, rng));
          HitPlanner hp(tree);
          bool got = hp.hit(Vertex{}, h, m);
          ++trials;
          if (got != oracle_hit(tree, Vertex{}, m, h)) ++mismatches;
          if (got && h > 0) {
            ++extractions;
            SubtreeSelector sel = extract_selector(hp, h, m);
            if (!selector_verified(sel, tree, n, m)) ++bad_extractions;
          } else if (!got && h > 0) {
            bool threw = false;
            try {
              extract_selector(hp, h, m);
            } catch (const Error&) {
              threw = true;
            }
            if (!threw) ++bad_extractions;
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << trials << " masks, " << mismatches << " disagreements, " << extractions << " extractions, " << bad_extractions
    << " unverified";
  return {mismatches == 0 && bad_extractions == 0, d.str()};
}

Outcome lines() {
  G1& g = g1();
  const GameConstants& k = g.k;
  long checked = 0, small = 0, bad = 0, exhaustive = 0;
  auto check = [&](const RatPoint& P) {
    Line L = find_line(P, k);
    ++checked;
    if (!cleared_line_ok(P, L, k)) ++bad;
    if (P.q <= 500) {
      ++exhaustive;
      auto B = brute_line(P, k);
      if (!B || !cleared_line_ok(P, *B, k) || !(*B == L)) ++bad;
    }
  };
  for (const auto& cp : g.points) {
    check(cp.point);
    if (cp.point.q <= 10000) ++small;
  }
  const long enumerated_small = small;
  // No point of C in G1 has q <= 10^4 (that needs ||q sqrt 2|| < q^(-1/2)/1024),
  // so the small denominators come from the dense configuration: same theta
  // and exponents, c = 1/10.
  GameConstants dense = testcfg::dense();
  for (const auto& cp : enumerate_window(dense, 2, {q(0), q(4)})) {
    if (cp.point.q > 10000) continue;
    Line L = find_line(cp.point, dense);
    ++checked;
    ++small;
    if (!cleared_line_ok(cp.point, L, dense)) ++bad;
    if (cp.point.q <= 500) {
      ++exhaustive;
      auto B = brute_line(cp.point, dense);
      if (!B || !cleared_line_ok(cp.point, *B, dense) || !(*B == L)) ++bad;
    }
  }
  std::ostringstream d;
  d << checked << " lines (" << g.points.size() << " in G1, " << enumerated_small << " of them with q <= 1e4; "
    << small << " with q <= 1e4 overall), " << exhaustive << " exhaustive, " << bad << " failures";
  return {bad == 0 && exhaustive > 0, d.str()};
}

Outcome partition() {
  long points = 0, bad = 0;
  std::ostringstream d;
  auto run = [&](const GameConstants& k, const std::vector<ClassifiedPoint>& pts, long n_top) {
    for (const auto& cp : pts) {
      ++points;
      auto [hits, nk] = partition_cells(cp, k, n_top);
      if (hits != 1 || nk.first != cp.level || nk.second != cp.class_k || !line_valid(cp.point, cp.line, k)) ++bad;
    }
  };
  // Tiling: the levels tile [H_1, oo) and the classes of level n tile
  // [T_n, oo) when R > 1, mu > 0 and T_n <= 1 <= B.
  auto tiling = [&](const GameConstants& k, const char* name) {
    bool ok = k.R > 1 && k.mu > 0 && k.H(1) <= 1;
    long closing_fail = 0;
    for (long n = 1; n <= 30; ++n) {
      if (!(k.H(n) < k.H(n + 1))) ok = false;
      if (threshold_cmp_oracle(Integer(1), k.H(n + 1), k.t, k.R, class_exponent(k, n)) < 0) ++closing_fail;
      for (long j = 2; j <= n; ++j) {
        // T_j < T_{j-1}: compare library thresholds as a second route.
        if (power_product_cmp(class_threshold(k, n, j), class_threshold(k, n, j - 1)) >= 0) ok = false;
      }
    }
    d << name << ": closing bound fails for " << closing_fail << " of n <= 30; ";
    return ok && closing_fail == 0;
  };

  G1& a = g1();
  run(a.k, a.points, a.D + 5);
  Golden& g = golden();
  std::vector<ClassifiedPoint> gp;
  for (const auto& v : cluster_anchors(g.k, 6, 2, 1)) {
    auto pts = g.cat.meeting(interval_of(v, g.k), 1, g.D);
    gp.insert(gp.end(), pts.begin(), pts.end());
  }
  run(g.k, gp, g.D + 5);
  bool t1 = tiling(a.k, "G1"), t2 = tiling(g.k, "G2");
  d << points << " points (" << a.points.size() << " G1, " << gp.size() << " G2), " << bad << " without a unique cell";
  return {bad == 0 && t1 && t2 && !gp.empty() && !a.points.empty(), d.str()};
}

Outcome audits() {
  Golden& g = golden();
  std::vector<Vertex> anchors = cluster_anchors(g.k, 4, 3, 2);
  for (std::uint64_t seed = 0; seed < 3; ++seed) anchors.push_back(g.play_random(seed).blocks.at(3).tau);
  anchors.push_back(g.play_adversarial(0).blocks.at(3).tau);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  Lemma42Report r42 = audit_lemma42(g.tree, g.D, anchors);
  Lemma43Report r43 = audit_lemma43(g.tree, g.D, anchors);

  G1& o = g1();
  Lemma42Report o42 = audit_lemma42(o.tree, o.D, cluster_anchors(o.k, 2, 2, 1));
  Lemma43Report o43 = audit_lemma43(o.tree, o.D, cluster_anchors(o.k, 2, 2, 1));

  std::ostringstream d;
  d << "G2 D = " << g.D << ": " << anchors.size() << " anchors, " << r42.points << " points, " << r42.multi_groups
    << " shared-class groups, " << r42.violations.size() << " line violations, " << r43.triples << " triples, max "
    << r43.max_count << " cells, " << r43.violations.size() << " cell violations; G1 reports " << o42.violations.size()
    << " and " << o43.violations.size() << " (max " << o43.max_count << ")";
  return {r42.ok() && r43.ok() && r43.max_count <= 2 && r42.points > 0 && r42.multi_groups > 0, d.str()};
}

Outcome growth() {
  Golden& g = golden();
  const long depth = std::min(g.D, 8L);
  GrowthReport r = audit_growth(g.tree, depth, 6);
  const auto& a = r.audit.a;
  bool ok = static_cast<long>(a.size()) == depth + 1 && a.at(1) >= 4;
  for (std::size_t n = 1; ok && n < a.size(); ++n) ok = a[n] > 2 * a[n - 1];
  std::ostringstream d;
  d << "depth " << depth << ", a =";
  for (const auto& x : a) d << " " << x;
  return {ok, d.str()};
}

Outcome games() {
  Golden& g = golden();
  long aborts = 0, over = 0, invalid = 0;
  auto check = [&](const Transcript& t) {
    if (t.status != "ok") {
      ++aborts;
      return;
    }
    for (const auto& b : t.blocks) {
      if (b.dangerous[1] > 2 || b.dangerous[2] > 1 || b.dangerous[3] > 0) ++over;
    }
    Certificate c = certify(t, g.k, *g.cfg, g.cat);
    if (!c.valid() || !c.small_q.ok || c.small_q.bound < 100000 || !recheck(c, &t).empty()) ++invalid;
  };
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    g.random_games.push_back(g.play_random(seed));
    check(g.random_games.back());
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    g.adversarial_games.push_back(g.play_adversarial(seed));
    check(g.adversarial_games.back());
  }
  std::set<Rational> finals;
  for (const auto& t : g.adversarial_games) finals.insert(t.final_interval.left);
  std::ostringstream d;
  d << "110 games at D = " << g.D << ": " << aborts << " aborts, " << over << " blocks over (2,1,0), " << invalid
    << " invalid certificates; " << finals.size() << " distinct adversarial endings";
  return {aborts == 0 && over == 0 && invalid == 0, d.str()};
}

Outcome determinism() {
  Golden& g = golden();
  if (g.random_games.size() < 2) return fail("no games from the previous criterion");
  long mismatches = 0, replays = 0;
  for (std::uint64_t seed : {0u, 1u, 57u}) {
    if (to_json(g.play_random(seed)) != to_json(g.random_games[seed])) ++mismatches;
  }
  if (!g.adversarial_games.empty() && to_json(g.play_adversarial(0)) != to_json(g.adversarial_games[0])) ++mismatches;
  if (to_json(g.random_games[0]) == to_json(g.random_games[1])) ++mismatches;
  for (const auto& t : g.random_games) {
    if (!(replay(t, *g.cfg) == t.final_interval)) ++replays;
  }

  const Transcript& t = g.random_games[0];
  Certificate c = certify(t, g.k, *g.cfg, g.cat);
  bool idempotent = to_json(certify(t, g.k, *g.cfg, g.cat)) == to_json(c) &&
                    to_json(certificate_from_json(to_json(c))) == to_json(c);

  // Move the final interval onto a point of the certificate's window.
  std::string named;
  bool rejected = false;
  const PointVerdict* target = nullptr;
  for (const auto& tt : g.random_games) {
    Certificate cc = certify(tt, g.k, *g.cfg, g.cat);
    if (!cc.verdicts.empty()) {
      c = cc;
      target = &c.verdicts.front();
      break;
    }
  }
  if (target) {
    const RatPoint P = target->point.point;
    const Rational half = c.final_interval.length() / q(2);
    Transcript tampered = t;
    tampered.final_interval = {P.y() - half, P.y() + half};
    try {
      certify(tampered, g.k, *g.cfg, g.cat);
    } catch (const Error& e) {
      rejected = e.kind() == ErrorKind::kCertificationFailed &&
                 std::string(e.what()).find(P.to_string()) != std::string::npos;
      named = P.to_string();
    }
  }
  Transcript bent = t;
  bent.moves[5].interval = bent.moves[4].interval;
  bool bent_rejected = false;
  try {
    certify(bent, g.k, *g.cfg, g.cat);
  } catch (const Error&) {
    bent_rejected = true;
  }
  Certificate dropped = c;
  if (!dropped.verdicts.empty()) dropped.verdicts.pop_back();
  bool recheck_catches = !recheck(dropped).empty();

  std::ostringstream d;
  d << mismatches << " transcript mismatches, " << replays << " replay failures, certify "
    << (idempotent ? "idempotent" : "not idempotent") << ", tampered final " << (rejected ? "rejected naming " : "accepted")
    << named << ", illegal move " << (bent_rejected ? "rejected" : "accepted");
  return {mismatches == 0 && replays == 0 && idempotent && rejected && bent_rejected && recheck_catches, d.str()};
}

Outcome degenerate() {
  namespace fs = std::filesystem;
  std::string tmpl = (fs::temp_directory_path() / "bpv-acceptance-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) return fail("no temporary directory");
  const fs::path dir(tmpl);
  const std::string golden_body = "theta = (1+1*sqrt(5))/2\nbeta = 9/10\nl = 1\n";
  struct Case {
    std::string name, body;
    int expect;
    std::string needle;
  };
  std::vector<Case> cases{
      {"s0", golden_body + "s = 0\nt = 1\n", cli::kPrecondition, "Bad(0,1) = R x Bad"},
      {"t0", golden_body + "s = 1\nt = 0\n", cli::kPrecondition, "Bad(0,1) = R x Bad"},
      {"rational", "theta = (3+0*sqrt(5))/2\ns = 1/4\nt = 3/4\nbeta = 9/10\n", cli::kConfigError, ""},
      {"square", "theta = (0+1*sqrt(4))/1\ns = 1/4\nt = 3/4\nbeta = 9/10\n", cli::kConfigError, ""},
      {"c_zero", "theta = (0+1*sqrt(2))/1\ns = 1/2\nt = 1/2\nbeta = 1/2\nc_mode = override\nc_override = 0\n",
       cli::kConfigError, ""},
      {"c_negative",
       "theta = (0+1*sqrt(2))/1\ns = 1/2\nt = 1/2\nbeta = 1/2\nc_mode = override\nc_override = -1/2\n",
       cli::kConfigError, ""},
  };
  long wrong = 0;
  std::ostringstream d;
  for (const auto& c : cases) {
    const fs::path path = dir / (c.name + ".conf");
    std::ofstream(path) << c.body;
    std::ostringstream out, err;
    int code = cli::run({"constants", path.string()}, {out, err, [](int) { return std::nullopt; }});
    bool ok = code == c.expect && (c.needle.empty() || err.str().find(c.needle) != std::string::npos);
    if (!ok) ++wrong;
    d << c.name << "=" << code << " ";
  }
  fs::remove_all(dir);
  d << "(" << wrong << " unexpected)";
  return {wrong == 0, d.str()};
}

}  // namespace

// Optional arguments pick criteria by number; 8 reuses the games of 7.
int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "badness floor", 10, badness},
      {2, "hit oracle", 60, hit_oracle},
      {3, "lines", 60, lines},
      {4, "partition", 30, partition},
      {5, "audits", 300, audits},
      {6, "growth", 300, growth},
      {7, "games", 600, games},
      {8, "determinism", 120, determinism},
      {9, "degenerate configs", 30, degenerate},
  };
  int failures = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass && secs < c.limit_s;
    if (o.pass && !pass) o.detail += "; over the time limit";
    if (!pass) ++failures;
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(1);
    t << secs << " s / " << c.limit_s << " s";
    std::cout << "criterion " << c.id << " " << (pass ? "PASS" : "FAIL") << "  " << c.name << ": " << o.detail << " ["
              << t.str() << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
