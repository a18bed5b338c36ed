#include "bpv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "bpv/digest.hpp"

namespace bpv {

namespace {

using ojson = nlohmann::ordered_json;

Error failed(const std::string& what) { return Error(ErrorKind::kCertificationFailed, what); }

Integer iroot(const Integer& x, unsigned long n) {
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  return r;
}

bool by_level_q_r(const ClassifiedPoint& a, const ClassifiedPoint& b) {
  return std::tie(a.level, a.point.q, a.point.r) < std::tie(b.level, b.point.q, b.point.r);
}

std::string describe(const ClassifiedPoint& cp) {
  return "P = " + cp.point.to_string() + " (level " + std::to_string(cp.level) + ", class " +
         std::to_string(cp.class_k) + ")";
}

}  // namespace

bool first_term_clear(const RatPoint& P, const GameConstants& k) {
  FieldReal x = k.theta * FieldReal(Rational(P.q)) - FieldReal(Rational(P.p));
  return !below_power_threshold(x, k.c, k.s, P.q);
}

bool second_term_clear(const RatPoint& P, const Rational& y, const GameConstants& k) {
  Rational d = (y * Rational(P.q) - Rational(P.r)).abs();
  return d.pow(static_cast<long>(k.v)) * Rational(ipow(P.q, k.w)) >= k.c.pow(static_cast<long>(k.v));
}

SmallQScan small_q_scan(const GameConstants& k, const Rational& y, std::int64_t bound) {
  SmallQScan scan;
  scan.bound = bound;
  const Rational half(Integer(1), Integer(2));
  // A q whose first term exceeds c by a relative margin of 1e-6 in long double
  // is clear: for q <= 1e5 the rounding error of q^s |q theta - p| is below
  // 1e-12 relative. Everything else is decided exactly.
  const long double theta = std::strtold(to_decimal(k.theta, 30).c_str(), nullptr);
  const long double s = std::strtold(to_decimal(FieldReal(k.s), 30).c_str(), nullptr);
  const long double cut = std::strtold(to_decimal(FieldReal(k.c), 40).c_str(), nullptr) * (1.0L + 1e-6L);
  for (std::int64_t qi = 1; qi <= bound; ++qi) {
    const long double x = static_cast<long double>(qi) * theta;
    if (qi <= 100000 && std::fabs(x - std::nearbyint(x)) * std::pow(static_cast<long double>(qi), s) > cut) continue;
    Integer q(static_cast<long>(qi));
    Integer p = nearest_integer(k.theta * FieldReal(Rational(q)));
    RatPoint P{p, q, 0};
    if (first_term_clear(P, k)) continue;
    ++scan.second_term_checks;
    P.r = (y * Rational(q) + half).floor();
    if (!second_term_clear(P, y, k)) {
      scan.ok = false;
      scan.witness = P;
      break;
    }
  }
  return scan;
}

bool Certificate::valid() const {
  if (!small_q.ok) return false;
  return std::all_of(verdicts.begin(), verdicts.end(), [](const PointVerdict& v) { return v.avoids && v.y_clear; });
}

std::string points_digest(const std::vector<ClassifiedPoint>& pts) {
  std::string text;
  for (const auto& cp : pts) text += to_record(cp) + "\n";
  return sha256_hex(text);
}

namespace {

IntervalQ certify_window(const IntervalQ& final, const GameConstants& k, long exponent) {
  Rational pad = final.length() * k.R.pow(exponent);
  return {max(final.left - pad, std::min(k.a0.left, final.left)), min(final.right + pad, std::max(k.a0.right, final.right))};
}

std::vector<ClassifiedPoint> window_points(PointCatalog& cat, const IntervalQ& window, long horizon,
                                           std::uint64_t budget) {
  auto pts = cat.meeting(window, 1, horizon, budget);
  std::sort(pts.begin(), pts.end(), by_level_q_r);
  return pts;
}

}  // namespace

Certificate certify(const Transcript& t, const GameConstants& k, const GameConfig& cfg, PointCatalog& cat,
                    const CertifyOptions& opt) {
  if (t.status != "ok") throw failed("transcript status is " + t.status + (t.message.empty() ? "" : ": " + t.message));
  const std::string cdig = config_digest(k, cfg);
  if (t.config_digest != cdig) throw failed("transcript was played under another configuration");

  Certificate c;
  c.theta = k.theta;
  c.s = k.s;
  c.t = k.t;
  c.beta = k.beta;
  c.l = k.l;
  c.a0_left = k.a0.left;
  c.c = k.c;
  c.mode = k.c_mode;
  c.horizon = cfg.horizon;
  c.rounds = cfg.rounds;
  c.config_digest = cdig;
  c.transcript_digest = sha256_hex(to_json(t));
  c.final_interval = t.final_interval;
  c.window = certify_window(c.final_interval, k, opt.pad >= 0 ? opt.pad : std::max(1L, cfg.horizon - 5));
  c.y = opt.point.value_or(c.final_interval.midpoint());
  if (!c.final_interval.contains(c.y)) throw failed("point " + c.y.to_string() + " lies outside the final interval");

  auto pts = window_points(cat, c.window, cfg.horizon, opt.budget);
  for (const auto& cp : pts) {
    PointVerdict v{cp, !delta_meets(cp.point, c.final_interval, k), midpoint_clear(cp.point, c.y, k)};
    if (!v.avoids) throw failed(describe(cp) + ": Delta(P) meets the final interval " + c.final_interval.to_string());
    if (!v.y_clear) throw failed(describe(cp) + ": the inequality fails at y = " + c.y.to_string());
    c.verdicts.push_back(v);
  }
  c.points_digest = points_digest(pts);

  try {
    replay(t, cfg);
  } catch (const Error& e) {
    throw failed(std::string("transcript does not replay: ") + e.what());
  }

  c.small_q = small_q_scan(k, c.y, opt.small_q_bound);
  if (!c.small_q.ok) {
    throw failed("small-q scan: P = " + c.small_q.witness->to_string() + " violates the inequality at y = " +
                 c.y.to_string());
  }
  return c;
}

namespace {

ojson point_json(const PointVerdict& v) {
  const auto& cp = v.point;
  return ojson{{"p", cp.point.p.get_str()},         {"q", cp.point.q.get_str()},   {"r", cp.point.r.get_str()},
               {"A", cp.line.A.get_str()},          {"B", cp.line.B.get_str()},    {"C", cp.line.C.get_str()},
               {"level", cp.level},                 {"class", cp.class_k},         {"avoids", v.avoids},
               {"y_clear", v.y_clear}};
}

Integer int_at(const ojson& j, const char* key) { return parse_integer(j.at(key).get<std::string>()); }
Rational rat_at(const ojson& j, const char* key) { return Rational::parse(j.at(key).get<std::string>()); }

ojson interval_json(const IntervalQ& I) { return ojson{{"left", I.left.to_string()}, {"right", I.right.to_string()}}; }
IntervalQ interval_from(const ojson& j) { return {rat_at(j, "left"), rat_at(j, "right")}; }

const char* mode_name(CMode m) { return m == CMode::kCertified ? "certified" : "override"; }

}  // namespace

std::string to_json(const Certificate& c) {
  ojson j;
  j["kind"] = "certificate";
  j["constants"] = ojson{{"theta", c.theta.to_string()}, {"s", c.s.to_string()},   {"t", c.t.to_string()},
                         {"beta", c.beta.to_string()},   {"l", c.l.to_string()},   {"a0_left", c.a0_left.to_string()},
                         {"c", c.c.to_string()},         {"mode", mode_name(c.mode)}};
  j["horizon"] = c.horizon;
  j["rounds"] = c.rounds;
  j["config_digest"] = c.config_digest;
  j["transcript_digest"] = c.transcript_digest;
  j["points_digest"] = c.points_digest;
  j["final"] = interval_json(c.final_interval);
  j["window"] = interval_json(c.window);
  j["y"] = c.y.to_string();
  ojson pts = ojson::array();
  for (const auto& v : c.verdicts) pts.push_back(point_json(v));
  j["points"] = pts;
  ojson sq{{"bound", c.small_q.bound}, {"ok", c.small_q.ok}, {"second_term_checks", c.small_q.second_term_checks}};
  sq["witness"] = c.small_q.witness ? ojson(c.small_q.witness->to_string()) : ojson(nullptr);
  if (c.small_q.witness) {
    sq["witness_pqr"] = ojson::array({c.small_q.witness->p.get_str(), c.small_q.witness->q.get_str(),
                                      c.small_q.witness->r.get_str()});
  }
  j["small_q"] = sq;
  j["valid"] = c.valid();
  return j.dump(1) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  try {
    ojson j = ojson::parse(text);
    Certificate c;
    const auto& k = j.at("constants");
    c.theta = FieldReal::parse(k.at("theta").get<std::string>());
    c.s = rat_at(k, "s");
    c.t = rat_at(k, "t");
    c.beta = rat_at(k, "beta");
    c.l = rat_at(k, "l");
    c.a0_left = rat_at(k, "a0_left");
    c.c = rat_at(k, "c");
    const std::string mode = k.at("mode").get<std::string>();
    if (mode != "certified" && mode != "override") throw Error(ErrorKind::kParse, "unknown mode " + mode);
    c.mode = mode == "certified" ? CMode::kCertified : CMode::kOverride;
    c.horizon = j.at("horizon").get<long>();
    c.rounds = j.at("rounds").get<long>();
    c.config_digest = j.at("config_digest").get<std::string>();
    c.transcript_digest = j.at("transcript_digest").get<std::string>();
    c.points_digest = j.at("points_digest").get<std::string>();
    c.final_interval = interval_from(j.at("final"));
    c.window = interval_from(j.at("window"));
    c.y = rat_at(j, "y");
    for (const auto& p : j.at("points")) {
      PointVerdict v;
      v.point.point = {int_at(p, "p"), int_at(p, "q"), int_at(p, "r")};
      v.point.line = {int_at(p, "A"), int_at(p, "B"), int_at(p, "C")};
      v.point.level = p.at("level").get<long>();
      v.point.class_k = p.at("class").get<long>();
      v.avoids = p.at("avoids").get<bool>();
      v.y_clear = p.at("y_clear").get<bool>();
      c.verdicts.push_back(v);
    }
    const auto& sq = j.at("small_q");
    c.small_q.bound = sq.at("bound").get<std::int64_t>();
    c.small_q.ok = sq.at("ok").get<bool>();
    c.small_q.second_term_checks = sq.at("second_term_checks").get<std::int64_t>();
    if (sq.contains("witness_pqr")) {
      const auto& w = sq.at("witness_pqr");
      c.small_q.witness = RatPoint{parse_integer(w.at(0).get<std::string>()), parse_integer(w.at(1).get<std::string>()),
                                   parse_integer(w.at(2).get<std::string>())};
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("certificate: ") + e.what());
  }
}

std::vector<std::string> recheck(const Certificate& c, const Transcript* t) {
  std::vector<std::string> problems;
  std::optional<GameConstants> k;
  try {
    k = make_constants(c.s, c.t, c.beta, c.theta, c.l, c.mode,
                       c.mode == CMode::kOverride ? std::optional<Rational>(c.c) : std::nullopt, c.a0_left);
  } catch (const Error& e) {
    problems.push_back(std::string("constants: ") + e.what());
    return problems;
  }
  if (k->c != c.c) problems.push_back("c is " + k->c.to_string() + ", the certificate says " + c.c.to_string());
  GameConfig cfg = make_game_config(*k, c.horizon, c.rounds);
  if (config_digest(*k, cfg) != c.config_digest) problems.push_back("config digest mismatch");
  if (!c.window.contains(c.final_interval)) problems.push_back("window does not contain the final interval");
  if (!c.final_interval.contains(c.y)) problems.push_back("y lies outside the final interval");

  std::vector<ClassifiedPoint> listed;
  for (const auto& v : c.verdicts) {
    const auto& cp = v.point;
    listed.push_back(cp);
    const std::string who = describe(cp);
    if (!in_C(cp.point, *k)) problems.push_back(who + " is not in C");
    if (!line_valid(cp.point, cp.line, *k)) problems.push_back(who + ": invalid line");
    else if (!(classify(cp.point, cp.line, *k) == cp)) problems.push_back(who + ": level or class mismatch");
    if (cp.level < 1 || cp.level > c.horizon) problems.push_back(who + ": level outside 1.." + std::to_string(c.horizon));
    const bool avoids = !delta_meets(cp.point, c.final_interval, *k);
    const bool clear = midpoint_clear(cp.point, c.y, *k);
    if (avoids != v.avoids || clear != v.y_clear) problems.push_back(who + ": recorded verdict differs");
    if (!avoids) problems.push_back(who + ": Delta(P) meets the final interval");
    if (!clear) problems.push_back(who + ": the inequality fails at y");
  }
  if (points_digest(listed) != c.points_digest) problems.push_back("points digest mismatch");

  try {
    PointCatalog cat(*k, c.horizon);
    if (!(window_points(cat, c.window, c.horizon, 20000000) == listed)) {
      problems.push_back("the listed points are not the points meeting the window");
    }
  } catch (const Error& e) {
    problems.push_back(std::string("enumeration: ") + e.what());
  }

  SmallQScan sq = small_q_scan(*k, c.y, c.small_q.bound);
  if (!(sq == c.small_q)) problems.push_back("small-q scan differs from the recorded one");
  if (!sq.ok) problems.push_back("small-q scan fails at " + sq.witness->to_string());

  if (t) {
    if (sha256_hex(to_json(*t)) != c.transcript_digest) problems.push_back("transcript digest mismatch");
    if (!(t->final_interval == c.final_interval)) problems.push_back("transcript final interval differs");
    if (t->config_digest != c.config_digest) problems.push_back("transcript config digest differs");
    try {
      replay(*t, cfg);
    } catch (const Error& e) {
      problems.push_back(std::string("replay: ") + e.what());
    }
  }
  return problems;
}

namespace {

// Height-h cells below `under` whose interval meets Delta(P). Delta(P) is
// enclosed in [r/q - rho, r/q + rho] with rho = c / (q floor(q^t)), and the
// candidates are then tested exactly.
std::vector<Vertex> cells_meeting(const RatPoint& P, const Vertex& under, long h, const GameConstants& k) {
  std::vector<Vertex> out;
  if (h < under.height()) return out;
  Integer bt = iroot(ipow(P.q, k.w), k.v);
  Rational rho = k.c / (Rational(P.q) * Rational(bt));
  IntervalQ hull{P.y() - rho, P.y() + rho};
  IntervalQ base = interval_of(under, k);
  if (!base.meets(hull)) return out;

  std::vector<std::pair<Vertex, Rational>> level{{under, base.left}};
  for (long i = under.height() + 1; i <= h; ++i) {
    Rational w = k.l * k.R.pow(-i);
    std::vector<std::pair<Vertex, Rational>> next;
    for (const auto& [v, left] : level) {
      Integer lo = std::max(Integer(((hull.left - left) / w).floor() - 1), Integer(0));
      Integer hi = std::min(Integer(((hull.right - left) / w).floor()), Integer(k.bracketR - 1));
      for (Integer d = lo; d <= hi; ++d) {
        Rational cl = left + Rational(d) * w;
        if (IntervalQ{cl, cl + w}.meets(hull)) next.emplace_back(v.child(static_cast<Digit>(d.get_ui())), cl);
      }
    }
    level = std::move(next);
  }
  for (const auto& [v, left] : level) {
    if (delta_meets(P, IntervalQ{left, left + k.l * k.R.pow(-h)}, k)) out.push_back(v);
  }
  return out;
}

struct GroupKey {
  long n;
  long k;
  Vertex tau;
  auto operator<=>(const GroupKey&) const = default;
};

struct Groups {
  std::map<GroupKey, std::vector<ClassifiedPoint>> members;
  std::int64_t points = 0;
  std::int64_t outside_s = 0;
};

// Points of level n in [height(anchor), D] meeting I(anchor), grouped by
// (n, k, tau) for the surviving tau of height n - k >= height(anchor) whose
// interval meets Delta(P).
Groups gather(GeometricTree& tree, long horizon, const std::vector<Vertex>& anchors) {
  Groups g;
  const GameConstants& k = tree.constants();
  std::set<std::pair<Integer, Integer>> seen;
  for (const auto& a : anchors) {
    const IntervalQ region = interval_of(a, k);
    for (long n = std::max(1L, a.height()); n <= horizon; ++n) {
      for (const auto& cp : tree.catalog().meeting(region, n, n)) {
        if (seen.insert({cp.point.q, cp.point.r}).second) ++g.points;
        const long h = n - cp.class_k;
        if (h < a.height()) continue;
        for (const auto& tau : cells_meeting(cp.point, a, h, k)) {
          if (!tree.in_S(tau)) {
            ++g.outside_s;
            continue;
          }
          auto& list = g.members[{n, cp.class_k, tau}];
          if (std::find(list.begin(), list.end(), cp) == list.end()) list.push_back(cp);
        }
      }
    }
  }
  return g;
}

}  // namespace

Lemma42Report audit_lemma42(GeometricTree& tree, long horizon, const std::vector<Vertex>& anchors) {
  Lemma42Report rep;
  rep.horizon = horizon;
  rep.anchors = anchors;
  Groups g = gather(tree, horizon, anchors);
  rep.points = g.points;
  rep.outside_s = g.outside_s;
  for (const auto& [key, pts] : g.members) {
    ++rep.groups;
    if (pts.size() > 1) ++rep.multi_groups;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!(pts[i].line == pts[0].line)) {
        rep.violations.push_back({key.n, key.k, key.tau, pts[0], pts[i]});
        break;
      }
    }
  }
  return rep;
}

Lemma43Report audit_lemma43(GeometricTree& tree, long horizon, const std::vector<Vertex>& anchors) {
  Lemma43Report rep;
  rep.horizon = horizon;
  rep.anchors = anchors;
  Groups g = gather(tree, horizon, anchors);
  rep.points = g.points;
  rep.outside_s = g.outside_s;
  const GameConstants& k = tree.constants();
  for (const auto& [key, pts] : g.members) {
    ++rep.triples;
    std::set<Vertex> cells;
    for (const auto& cp : pts) {
      for (auto& v : cells_meeting(cp.point, key.tau, key.n, k)) cells.insert(std::move(v));
    }
    const long count = static_cast<long>(cells.size());
    rep.max_count = std::max(rep.max_count, count);
    if (count > 2) rep.violations.push_back({key.n, key.k, key.tau, {cells.begin(), cells.end()}});
  }
  return rep;
}

GrowthReport audit_growth(GeometricTree& tree, long depth, long m, const Vertex& anchor) {
  GrowthReport rep;
  rep.audit = growth_audit(tree, depth, m, anchor);
  rep.asserted = tree.constants().c_mode == CMode::kCertified;
  return rep;
}

std::vector<Vertex> cluster_anchors(const GameConstants& k, long height, long max_b, long max_a) {
  std::set<Vertex> out;
  const Integer scale = Integer(1) << 256;
  for (long b = 1; b <= max_b; ++b) {
    for (long a = -max_a; a <= max_a; ++a) {
      // A theta + B y + C = 0 with y in the root interval.
      FieldReal at = k.theta * FieldReal(Rational(a));
      Integer c_lo = -field_floor(at + FieldReal(k.a0.right * Rational(b)));
      Integer c_hi = -field_floor(at + FieldReal(k.a0.left * Rational(b))) + 1;
      for (Integer c = c_lo; c <= c_hi; ++c) {
        Integer g = gcd(gcd(Integer(a), Integer(b)), c);
        if (g != 1) continue;
        FieldReal y = -(at + FieldReal(Rational(c))) / FieldReal(Rational(b));
        Rational yr(field_floor(y * FieldReal(Rational(scale))), scale);
        if (!k.a0.contains(yr)) continue;
        if (auto v = vertex_at(yr, height, k)) out.insert(*v);
      }
    }
  }
  return {out.begin(), out.end()};
}

namespace {

ojson record_json(const ClassifiedPoint& cp) { return ojson(to_record(cp)); }

ojson anchors_json(const std::vector<Vertex>& anchors) {
  ojson a = ojson::array();
  for (const auto& v : anchors) a.push_back(v.to_string());
  return a;
}

}  // namespace

std::string to_json(const Lemma42Report& r) {
  ojson j;
  j["kind"] = "lemma42";
  j["horizon"] = r.horizon;
  j["anchors"] = anchors_json(r.anchors);
  j["points"] = r.points;
  j["groups"] = r.groups;
  j["multi_point_groups"] = r.multi_groups;
  j["outside_s"] = r.outside_s;
  ojson vs = ojson::array();
  for (const auto& v : r.violations) {
    vs.push_back(ojson{{"n", v.n}, {"k", v.k}, {"tau", v.tau.to_string()}, {"first", record_json(v.first)},
                       {"second", record_json(v.second)}});
  }
  j["violations"] = vs;
  j["ok"] = r.ok();
  return j.dump(1) + "\n";
}

std::string to_json(const Lemma43Report& r) {
  ojson j;
  j["kind"] = "lemma43";
  j["horizon"] = r.horizon;
  j["anchors"] = anchors_json(r.anchors);
  j["points"] = r.points;
  j["triples"] = r.triples;
  j["outside_s"] = r.outside_s;
  j["max_count"] = r.max_count;
  ojson vs = ojson::array();
  for (const auto& v : r.violations) {
    ojson cells = ojson::array();
    for (const auto& c : v.cells) cells.push_back(c.to_string());
    vs.push_back(ojson{{"n", v.n}, {"k", v.k}, {"tau", v.tau.to_string()}, {"cells", cells}});
  }
  j["violations"] = vs;
  j["ok"] = r.ok();
  return j.dump(1) + "\n";
}

std::string to_json(const GrowthReport& r) {
  ojson j;
  j["kind"] = "growth";
  j["anchor"] = r.audit.anchor.to_string();
  j["depth"] = r.audit.depth;
  j["m"] = r.audit.m;
  ojson a = ojson::array();
  for (const auto& x : r.audit.a) a.push_back(x.get_str());
  j["a"] = a;
  j["weak_growth"] = r.audit.weak_growth;
  j["recurrence_gaps"] = r.audit.recurrence_gaps;
  j["asserted"] = r.asserted;
  j["ok"] = r.ok();
  return j.dump(1) + "\n";
}

}  // namespace bpv
