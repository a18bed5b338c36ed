#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bpv/game.hpp"
#include "bpv/treeplan.hpp"
#include "bpv/verify.hpp"

namespace bpv::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Error config_error(const std::string& what) { return Error(ErrorKind::kInvalidConfig, what); }

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    long x = std::stol(v, &used);
    if (used != v.size()) throw config_error(key + ": not an integer: '" + v + "'");
    return x;
  } catch (const std::logic_error&) {
    throw config_error(key + ": not an integer: '" + v + "'");
  }
}

}  // namespace

Config parse_config(const std::string& text) {
  Config cfg;
  bool have_theta = false, have_s = false, have_t = false, have_beta = false, have_l = false;
  std::istringstream in(text);
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "theta") {
      cfg.theta = FieldReal::parse(value);
      have_theta = true;
    } else if (key == "s") {
      cfg.s = Rational::parse(value);
      have_s = true;
    } else if (key == "t") {
      cfg.t = Rational::parse(value);
      have_t = true;
    } else if (key == "beta") {
      cfg.beta = Rational::parse(value);
      have_beta = true;
    } else if (key == "l") {
      cfg.l = Rational::parse(value);
      have_l = true;
    } else if (key == "b0") {
      std::istringstream parts(value);
      std::string a, b, extra;
      if (!(parts >> a >> b) || (parts >> extra)) throw config_error("b0 needs two endpoints");
      cfg.b0 = IntervalQ{Rational::parse(a), Rational::parse(b)};
    } else if (key == "c_mode") {
      if (value == "certified") cfg.mode = CMode::kCertified;
      else if (value == "override") cfg.mode = CMode::kOverride;
      else throw config_error("c_mode must be certified or override");
    } else if (key == "c_override") {
      cfg.c_override = Rational::parse(value);
    } else if (key == "depth") {
      if (value != "auto") cfg.depth = parse_long(key, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "scan_bound") {
      cfg.scan_bound = parse_long(key, value);
    } else if (key == "m") {
      cfg.m = parse_long(key, value);
    } else {
      throw config_error("unknown key '" + key + "'");
    }
  }
  if (!have_theta || !have_s || !have_t || !have_beta) throw config_error("theta, s, t and beta are required");
  if (cfg.theta.is_rational()) {
    throw Error(ErrorKind::kRationalInput, "theta = " + cfg.theta.to_string() + " is rational");
  }
  if (cfg.s.sign() < 0 || cfg.t.sign() < 0 || cfg.s + cfg.t != Rational(1)) {
    throw config_error("s and t must be non-negative with s + t = 1");
  }
  if (cfg.b0) {
    if (cfg.b0->length().sign() <= 0) throw config_error("b0 must have positive length");
    Rational l = cfg.b0->length() / Rational(2);
    if (have_l && l != cfg.l) throw config_error("l disagrees with b0 (l must be half of |b0|)");
    cfg.l = l;
  }
  if (cfg.mode == CMode::kOverride && !cfg.c_override) throw config_error("override mode needs c_override");
  if (cfg.c_override && cfg.c_override->sign() <= 0) throw config_error("c_override must be positive");
  if (cfg.depth && *cfg.depth < 1) throw config_error("depth must be at least 1");
  if (cfg.scan_bound < 0) throw config_error("scan_bound must be non-negative");
  if (cfg.m < 2) throw config_error("m must be at least 2");
  return cfg;
}

GameConstants build_constants(const Config& cfg) {
  Rational left = cfg.b0 ? cfg.b0->left + cfg.l / Rational(2) : Rational(0);
  return make_constants(cfg.s, cfg.t, cfg.beta, cfg.theta, cfg.l, cfg.mode,
                        cfg.mode == CMode::kOverride ? cfg.c_override : std::nullopt, left);
}

namespace {

using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot write " + path);
  f << text;
}

long double approx(const Rational& x) { return std::strtold(to_decimal(FieldReal(x), 60).c_str(), nullptr); }

std::string hint(long double x) {
  std::ostringstream os;
  os << std::setprecision(7) << x;
  return os.str();
}

int exit_code(const Error& e, CMode mode) {
  switch (e.kind()) {
    case ErrorKind::kParse:
    case ErrorKind::kFieldMismatch:
    case ErrorKind::kRationalInput:
    case ErrorKind::kInvalidBeta:
    case ErrorKind::kInvalidConfig:
      return kConfigError;
    case ErrorKind::kStrategyAbort:
    case ErrorKind::kCertificationFailed:
    case ErrorKind::kIllegalMove:
      return kViolation;
    case ErrorKind::kExtractionFailed:
      return mode == CMode::kCertified ? kViolation : kPrecondition;
    default:
      return kPrecondition;
  }
}

struct Setup {
  Config cfg;
  GameConstants k;
  long depth = 0;
};

Setup load(const std::string& path, long depth_flag, Io& io, bool need_depth = true) {
  Setup s;
  s.cfg = parse_config(read_file(path));
  s.k = build_constants(s.cfg);
  if (depth_flag > 0) {
    s.depth = depth_flag;
  } else if (s.cfg.depth) {
    s.depth = *s.cfg.depth;
  } else if (need_depth) {
    PointCatalog cat(s.k);
    s.depth = cat.first_level().first + 2;
    io.err << "depth " << s.depth << " (first level with points + 2)\n";
  }
  return s;
}

int cmd_constants(const Setup& s, Io& io) {
  const GameConstants& k = s.k;
  auto& out = io.out;
  out << "theta    " << k.theta.to_string() << "  ~ " << to_decimal(k.theta, 12) << "\n";
  out << "s        " << k.s.to_string() << "\n";
  out << "t        " << k.t.to_string() << "\n";
  out << "u v w    " << k.u << " " << k.v << " " << k.w << "\n";
  out << "beta     " << k.beta.to_string() << "\n";
  out << "l        " << k.l.to_string() << "\n";
  out << "A_0      " << k.a0.to_string() << "\n";
  out << "R        " << k.R.to_string() << "  ~ " << hint(approx(k.R)) << "\n";
  out << "[R]      " << k.bracketR.get_str() << "\n";
  out << "c        " << k.c.to_string() << "  ~ " << hint(approx(k.c));
  if (k.c_mode == CMode::kCertified) {
    out << "  (certified, 2^-" << k.dyadic_exponent << ")\n";
  } else {
    out << "  (override)\n";
  }
  out << "  floor branch    1/(M+2)             " << k.floor_branch.to_string() << "  ~ "
      << hint(approx(k.floor_branch)) << "\n";
  out << "  packing branch  l/(4R)              " << k.packing_branch.to_string() << "  ~ "
      << hint(approx(k.packing_branch)) << "\n";
  const long double third =
      std::pow(approx(k.R), -(2.0L + 3.0L / (approx(k.t) * approx(k.t)))) / 8.0L;
  out << "  third branch    (1/8) R^(-2-3/t^2)  ~ " << hint(third) << "  "
      << (satisfies_third_branch(k.c, k.R, k.t) ? "holds" : "fails") << "\n";
  out << "lambda   " << k.lambda.to_string() << "\n";
  out << "mu       " << k.mu.to_string() << "\n";
  for (long n = 1; n <= 8; ++n) {
    Rational h = k.H(n);
    out << "H_" << n << "      " << h.to_string() << "  ~ " << hint(approx(h)) << "\n";
  }
  return kOk;
}

int cmd_enumerate(const Setup& s, const std::vector<std::string>& region, const std::string& out_path,
                  std::uint64_t budget, Io& io) {
  IntervalQ I = s.k.a0;
  if (!region.empty()) I = {Rational::parse(region.at(0)), Rational::parse(region.at(1))};
  if (I.right < I.left) throw config_error("region is empty");
  PointCatalog cat(s.k, s.depth);
  auto pts = cat.meeting(I, 1, s.depth, budget);
  std::sort(pts.begin(), pts.end(), [](const ClassifiedPoint& a, const ClassifiedPoint& b) {
    return std::tie(a.level, a.point.q, a.point.r) < std::tie(b.level, b.point.q, b.point.r);
  });
  std::ostringstream os;
  write_records(os, pts);
  write_output(out_path, os.str(), io.out);
  io.err << pts.size() << " points of level <= " << s.depth << " meet " << I.to_string() << "\n";
  return kOk;
}

int cmd_line(const Setup& s, const std::string& p, const std::string& q, const std::string& r, Io& io) {
  RatPoint P{parse_integer(p), parse_integer(q), parse_integer(r)};
  if (sgn(P.q) <= 0) throw config_error("q must be positive");
  const bool member = in_C(P, s.k);
  Line L = find_line(P, s.k);
  io.out << "P        " << P.to_string() << "\n";
  io.out << "in C     " << (member ? "yes" : "no") << "\n";
  io.out << "line     " << L.B.get_str() << " y = " << L.A.get_str() << " x " << (L.C < 0 ? "- " : "+ ")
         << Integer(abs(L.C)).get_str() << "\n";
  try {
    ClassifiedPoint cp = classify(P, L, s.k);
    io.out << "level    " << cp.level << "\n";
    io.out << "class    " << cp.class_k << "\n";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kLevelUnderflow) throw;
    io.out << "level    below H_1\n";
  }
  return kOk;
}

ojson vertex_list(const std::vector<Digit>& ds) {
  ojson a = ojson::array();
  for (Digit d : ds) a.push_back(d);
  return a;
}

int cmd_extract(const Setup& s, long m, bool materialize, std::size_t limit, const std::string& out_path, Io& io) {
  PointCatalog cat(s.k, s.depth);
  GeometricTree tree(cat);
  HitPlanner hp(tree);
  SubtreeSelector sel = extract_selector(hp, s.depth, m);
  ojson j;
  j["horizon"] = s.depth;
  j["m"] = m;
  j["keep"] = sel.keep();
  j["root"] = vertex_list(sel.chosen(Vertex{}));
  Vertex v;
  while (v.height() < s.depth) v = v.child(sel.chosen(v).front());
  j["leftmost_leaf"] = v.to_string();
  if (materialize) {
    ojson all = ojson::object();
    for (const auto& [u, ds] : sel.materialize(limit)) all[u.to_string()] = vertex_list(ds);
    j["choices"] = all;
  }
  j["evaluations"] = hp.stats().evaluations;
  j["pruned"] = hp.stats().pruned;
  write_output(out_path, j.dump(1) + "\n", io.out);
  io.err << "extracted a " << sel.keep() << "-regular subtree to depth " << s.depth << "\n";
  return kOk;
}

std::vector<Rational> read_script(const std::string& path) {
  std::vector<Rational> offsets;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (!line.empty()) offsets.push_back(Rational::parse(line));
  }
  return offsets;
}

int cmd_play(const Setup& s, const std::string& bob_kind, std::optional<std::uint64_t> seed_flag, long m,
             int timeout_s, const std::string& out_path, Io& io) {
  const std::uint64_t seed = seed_flag.value_or(s.cfg.seed);
  PointCatalog cat(s.k, s.depth);
  GeometricTree tree(cat);
  HitPlanner hp(tree);
  SubtreeSelector sel = extract_selector(hp, s.depth, m);
  GameConfig cfg = make_game_config(s.k, s.depth);
  AliceBpv alice(sel, s.k);

  std::unique_ptr<Player> bob;
  BobInteractive* interactive = nullptr;
  if (bob_kind == "random") {
    bob = std::make_unique<BobRandom>(seed);
  } else if (bob_kind == "adversarial") {
    // An explicit seed randomises ties.
    bob = std::make_unique<BobAdversarial>(cat, seed_flag);
  } else if (bob_kind.rfind("script:", 0) == 0) {
    bob = std::make_unique<BobScript>(read_script(bob_kind.substr(7)));
  } else if (bob_kind == "interactive") {
    if (!io.read_line) throw config_error("interactive play needs a terminal");
    std::ostream& prompt = out_path.empty() || out_path == "-" ? io.err : io.out;
    auto b = std::make_unique<BobInteractive>(
        [&io, timeout_s]() { return io.read_line(timeout_s * 1000); }, prompt, seed);
    interactive = b.get();
    bob = std::move(b);
  } else {
    throw config_error("unknown bob '" + bob_kind + "'");
  }

  Transcript t = play(s.k, cfg, alice, *bob);
  write_output(out_path, to_json(t), io.out);
  io.err << "status " << t.status;
  if (!t.message.empty()) io.err << ": " << t.message;
  io.err << "\nfinal  " << t.final_interval.to_string() << "\n";
  if (interactive && interactive->quit()) io.err << "session ended before the last round\n";
  if (t.status == "abort") return s.k.c_mode == CMode::kCertified ? kViolation : kPrecondition;
  return kOk;
}

int cmd_verify(const std::string& config_path, long depth_flag, const std::string& replay_path,
               const std::string& cert_path, const std::string& out_path, const std::string& point,
               long pad, Io& io) {
  if (!cert_path.empty()) {
    Certificate c = certificate_from_json(read_file(cert_path));
    std::optional<Transcript> t;
    if (!replay_path.empty()) t = transcript_from_json(read_file(replay_path));
    auto problems = recheck(c, t ? &*t : nullptr);
    for (const auto& p : problems) io.err << "problem: " << p << "\n";
    if (!problems.empty()) return kViolation;
    io.out << "certificate valid: " << c.verdicts.size() << " points of level <= " << c.horizon
           << " avoid " << c.final_interval.to_string() << "; small-q scan to " << c.small_q.bound << " clean\n";
    return kOk;
  }
  if (replay_path.empty() || config_path.empty()) throw config_error("verify needs a config and --replay, or --certificate");
  Setup s = load(config_path, depth_flag, io);
  Transcript t = transcript_from_json(read_file(replay_path));
  GameConfig cfg = make_game_config(s.k, s.depth);
  if (t.config_digest != config_digest(s.k, cfg)) {
    io.err << "transcript was played under another configuration or depth\n";
    return kConfigError;
  }
  if (t.status != "ok") {
    io.out << "replayed final interval " << replay(t, cfg).to_string() << "\n";
    io.err << "transcript status is " << t.status << "; nothing to certify\n";
    return kPrecondition;
  }
  // certify checks the points before replaying, so a moved final interval is
  // reported with the point it runs into.
  PointCatalog cat(s.k, s.depth);
  CertifyOptions opt;
  opt.small_q_bound = s.cfg.scan_bound;
  opt.pad = pad;
  if (!point.empty()) opt.point = Rational::parse(point);
  Certificate c = certify(t, s.k, cfg, cat, opt);
  if (!out_path.empty()) write_output(out_path, to_json(c), io.out);
  io.out << "replayed final interval " << c.final_interval.to_string() << "\n";
  io.out << "certificate valid: " << c.verdicts.size() << " points checked, small-q scan to " << c.small_q.bound
         << " clean\n";
  return kOk;
}

int cmd_oracle_subtrees(long n, long m, long h, bool quiet, Io& io) {
  if (n < 1 || m < 1 || m > n || h < 0) throw config_error("need 1 <= m <= N and h >= 0");
  auto all = oracle_enumerate_regular_subtrees(static_cast<Digit>(n), static_cast<Digit>(m), h);
  if (!quiet) {
    for (const auto& t : all) {
      std::string line;
      for (const auto& [v, ds] : t) {
        if (!line.empty()) line += " ";
        line += v.to_string() + ":";
        for (std::size_t i = 0; i < ds.size(); ++i) line += (i ? "," : "") + std::to_string(ds[i]);
      }
      io.out << line << "\n";
    }
  }
  io.out << all.size() << " subtrees (product formula "
         << count_regular_subtrees(static_cast<Digit>(n), static_cast<Digit>(m), h).get_str() << ")\n";
  return kOk;
}

int cmd_audit(const Setup& s, long anchor_height, long max_b, long max_a, long growth_depth,
              const std::string& out_path, Io& io) {
  PointCatalog cat(s.k, s.depth);
  GeometricTree tree(cat);
  const long h = std::min(anchor_height, s.depth);
  auto anchors = cluster_anchors(s.k, h, max_b, max_a);
  Lemma42Report r42 = audit_lemma42(tree, s.depth, anchors);
  Lemma43Report r43 = audit_lemma43(tree, s.depth, anchors);
  GrowthReport g = audit_growth(tree, growth_depth > 0 ? growth_depth : std::min(s.depth, 8L));
  ojson j;
  j["lemma42"] = ojson::parse(to_json(r42));
  j["lemma43"] = ojson::parse(to_json(r43));
  j["growth"] = ojson::parse(to_json(g));
  write_output(out_path, j.dump(1) + "\n", io.out);
  io.err << "line audit: " << r42.groups << " groups, " << r42.violations.size() << " violations\n"
         << "cell audit: " << r43.triples << " triples, max count " << r43.max_count << ", " << r43.violations.size()
         << " violations\n"
         << "growth: " << (g.ok() ? "holds" : "fails") << " to depth " << g.audit.depth << "\n";
  const bool clean = r42.ok() && r43.ok() && g.ok();
  if (s.k.c_mode == CMode::kOverride) {
    if (!clean) io.err << "override mode: violations reported, not asserted\n";
    return kOk;
  }
  return clean ? kOk : kViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, Io io) {
  CLI::App app{"Exact verification lab for a winning strategy in Schmidt's game", "bpvlab"};
  app.require_subcommand(1);

  std::string config_path, out_path, bob = "random", replay_path, cert_path, point;
  long depth = 0, m = 0, anchor_height = 4, max_b = 3, max_a = 2, growth_depth = 0, pad = -1;
  long on = 0, om = 0, oh = 0;
  int timeout_s = 300;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> region;
  std::string pp, pq, pr;
  std::uint64_t budget = 20000000;
  bool materialize = false, quiet = false;
  std::size_t limit = 1000000;

  auto add_config = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("config", config_path, "configuration file (key = value lines)");
    if (required) o->required();
  };
  auto* constants = app.add_subcommand("constants", "print the game constants");
  add_config(constants, true);

  auto* enumerate = app.add_subcommand("enumerate", "list the dangerous points meeting a region");
  add_config(enumerate, true);
  enumerate->add_option("--depth", depth, "highest level");
  enumerate->add_option("--region", region, "region endpoints a b")->expected(2);
  enumerate->add_option("--budget", budget, "candidate budget");
  enumerate->add_option("--out", out_path, "output file");

  auto* line = app.add_subcommand("line", "the line and class of a point (p/q, r/q)");
  add_config(line, true);
  line->add_option("--p", pp)->required();
  line->add_option("--q", pq)->required();
  line->add_option("--r", pr)->required();

  auto* extract = app.add_subcommand("extract", "extract a regular subtree of S");
  add_config(extract, true);
  extract->add_option("--depth", depth, "horizon D");
  extract->add_option("--m", m, "successors left out per vertex plus one");
  extract->add_flag("--materialize", materialize, "write every choice");
  extract->add_option("--limit", limit, "vertex limit for --materialize");
  extract->add_option("--out", out_path, "output file");

  auto* playc = app.add_subcommand("play", "play the game and write the transcript");
  add_config(playc, true);
  playc->add_option("--depth", depth, "horizon D");
  playc->add_option("--m", m, "successors left out per vertex plus one");
  playc->add_option("--bob", bob, "random | adversarial | script:FILE | interactive");
  playc->add_option("--seed", seed, "seed for the random Bob");
  playc->add_option("--timeout", timeout_s, "seconds to wait for interactive input");
  playc->add_option("--out", out_path, "transcript file");

  auto* verify = app.add_subcommand("verify", "replay and certify a transcript, or recheck a certificate");
  add_config(verify, false);
  verify->add_option("--depth", depth, "horizon D");
  verify->add_option("--replay", replay_path, "transcript file");
  verify->add_option("--certificate", cert_path, "certificate file to recheck");
  verify->add_option("--point", point, "certified point (default: midpoint of the final interval)");
  verify->add_option("--pad", pad, "window padding exponent");
  verify->add_option("--out", out_path, "certificate file");

  auto* oracle = app.add_subcommand("oracle", "brute-force oracles");
  oracle->require_subcommand(1);
  auto* subtrees = oracle->add_subcommand("subtrees", "every (m, h)-regular subtree of the N-ary tree");
  subtrees->set_help_flag("--help", "print this help message and exit");
  subtrees->add_option("--N", on)->required();
  subtrees->add_option("--m", om)->required();
  subtrees->add_option("--h", oh)->required();
  subtrees->add_flag("--count-only", quiet);

  auto* audit = app.add_subcommand("audit", "audit the structural lemmas and the growth recurrence");
  add_config(audit, true);
  audit->add_option("--depth", depth, "horizon D");
  audit->add_option("--anchor-height", anchor_height, "height of the anchor vertices");
  audit->add_option("--max-b", max_b, "largest B of the anchor lines");
  audit->add_option("--max-a", max_a, "largest |A| of the anchor lines");
  audit->add_option("--growth-depth", growth_depth, "depth of the growth audit (default min(D, 8))");
  audit->add_option("--out", out_path, "report file");

  std::vector<const char*> argv{"bpvlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, io.out, io.err);
    return code == 0 ? kOk : kConfigError;
  }

  CMode mode = CMode::kCertified;
  try {
    if (subtrees->parsed()) return cmd_oracle_subtrees(on, om, oh, quiet, io);
    if (verify->parsed()) return cmd_verify(config_path, depth, replay_path, cert_path, out_path, point, pad, io);
    Setup s = load(config_path, depth, io, !constants->parsed() && !line->parsed());
    mode = s.k.c_mode;
    const long mm = m > 0 ? m : s.cfg.m;
    if (constants->parsed()) return cmd_constants(s, io);
    if (enumerate->parsed()) return cmd_enumerate(s, region, out_path, budget, io);
    if (line->parsed()) return cmd_line(s, pp, pq, pr, io);
    if (extract->parsed()) return cmd_extract(s, mm, materialize, limit, out_path, io);
    if (playc->parsed()) return cmd_play(s, bob, seed, mm, timeout_s, out_path, io);
    if (audit->parsed()) return cmd_audit(s, anchor_height, max_b, max_a, growth_depth, out_path, io);
  } catch (const Error& e) {
    io.err << "bpvlab: " << e.what() << "\n";
    return exit_code(e, mode);
  }
  return kConfigError;
}

}  // namespace bpv::cli
