#include "bpv/game.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "bpv/digest.hpp"

namespace bpv {

namespace {

const Rational kHalf(Integer(1), Integer(2));

long substate_bound(long dangerous0, long j) { return dangerous0 >> j; }

IntervalQ centred_half(const IntervalQ& I) {
  Rational q = I.length() / Rational(4);
  return {I.left + q, I.right - q};
}

}  // namespace

GameConfig make_game_config(const GameConstants& k, long horizon, std::optional<long> rounds) {
  if (horizon < 0) throw Error(ErrorKind::kInvalidConfig, "depth must be non-negative");
  GameConfig g;
  g.beta = k.beta;
  g.horizon = horizon;
  g.rounds = rounds.value_or(4 * horizon);
  if (g.rounds < 0) throw Error(ErrorKind::kInvalidConfig, "rounds must be non-negative");
  g.b0 = {k.a0.left - k.l * kHalf, k.a0.right + k.l * kHalf};
  return g;
}

std::string config_text(const GameConstants& k, const GameConfig& g) {
  std::ostringstream out;
  out << "theta = " << k.theta.to_string() << "\n"
      << "s = " << k.s.to_string() << "\n"
      << "t = " << k.t.to_string() << "\n"
      << "beta = " << k.beta.to_string() << "\n"
      << "l = " << k.l.to_string() << "\n"
      << "a0 = " << k.a0.left.to_string() << " " << k.a0.right.to_string() << "\n"
      << "c_mode = " << (k.c_mode == CMode::kCertified ? "certified" : "override") << "\n"
      << "c = " << k.c.to_string() << "\n"
      << "alpha = " << g.alpha.to_string() << "\n"
      << "b0 = " << g.b0.left.to_string() << " " << g.b0.right.to_string() << "\n"
      << "depth = " << g.horizon << "\n"
      << "rounds = " << g.rounds << "\n";
  return out.str();
}

std::string config_digest(const GameConstants& k, const GameConfig& g) { return sha256_hex(config_text(k, g)); }

GameState::GameState(const GameConfig& cfg) : cfg_(cfg) { history_.push_back({Mover::kBob, cfg.b0}); }

long GameState::round() const { return static_cast<long>(history_.size()) / 2; }

bool GameState::finished() const {
  if (cfg_.rounds == 0) return true;
  return static_cast<long>(history_.size()) >= 2 * cfg_.rounds + 2;
}

Rational GameState::required_length() const {
  return current().length() * (to_move() == Mover::kAlice ? cfg_.alpha : cfg_.beta);
}

void GameState::apply(const IntervalQ& move) {
  const char* who = to_move() == Mover::kAlice ? "Alice" : "Bob";
  if (finished()) throw Error(ErrorKind::kIllegalMove, std::string(who) + " moved after the last round");
  if (!legal(move, *this)) {
    throw Error(ErrorKind::kIllegalMove, std::string(who) + " in round " + std::to_string(round()) + ": " +
                                             move.to_string() + " is not a sub-interval of " + current().to_string() +
                                             " of length " + required_length().to_string());
  }
  history_.push_back({to_move(), move});
}

bool legal(const IntervalQ& move, const GameState& st) {
  return move.left <= move.right && st.current().contains(move) && move.length() == st.required_length();
}

long count_contained(const std::vector<IntervalQ>& ds, const IntervalQ& I) {
  return static_cast<long>(std::count_if(ds.begin(), ds.end(), [&](const IntervalQ& d) { return I.contains(d); }));
}

IntervalQ offset_move(const GameState& st, const Rational& offset) {
  Rational left = st.current().left + offset;
  return {left, left + st.required_length()};
}

void AliceBpv::enter_block(GameState& st, const Vertex& tau) {
  st.tau = tau;
  st.dangerous.clear();
  if (tau.height() >= sel_.horizon()) return;
  const IntervalQ I = interval_of(tau, k_);
  for (Digit d : dangerous_digits(tau, sel_)) st.dangerous.push_back(child_interval(I, tau.height() + 1, d, k_));
  BlockRecord rec;
  rec.n = tau.height() + 1;
  rec.dangerous[0] = count_contained(st.dangerous, I);
  blocks_.push_back(rec);
}

IntervalQ AliceBpv::move(GameState& st) {
  const long i = st.round();
  const IntervalQ& cur = st.current();
  if (i == 0) {
    IntervalQ a0 = centred_half(cur);
    if (a0 != k_.a0) throw Error(ErrorKind::kStrategyAbort, "B_0 is not centred on the root interval");
    blocks_.clear();
    enter_block(st, Vertex{});
    return a0;
  }
  const long horizon = sel_.horizon();
  if (i > 4 * horizon) return centred_half(cur);
  auto [n, j] = GameState::block_of(i);
  BlockRecord& rec = blocks_.back();

  if (j != 0) {
    Rational mid = cur.midpoint();
    IntervalQ left{cur.left, mid}, right{mid, cur.right};
    long cl = count_contained(st.dangerous, left);
    long cr = count_contained(st.dangerous, right);
    IntervalQ pick = cr < cl ? right : left;
    long kept = std::min(cl, cr);
    rec.dangerous[static_cast<std::size_t>(j)] = kept;
    if (kept > substate_bound(rec.dangerous[0], j)) {
      throw Error(ErrorKind::kStrategyAbort, "block " + std::to_string(n) + ", j = " + std::to_string(j) + ": " +
                                                 std::to_string(kept) + " dangerous intervals remain in " +
                                                 pick.to_string());
    }
    return pick;
  }

  // Block end: the leftmost successor cell of tau_{n-1} inside B_{4n}.
  const Vertex tau = st.tau;
  const IntervalQ I = interval_of(tau, k_);
  const Rational w = k_.l * k_.R.pow(-n);
  Integer d = std::max(Integer(0), Integer(((cur.left - I.left) / w).ceil()));
  const Digit branching = static_cast<Digit>(k_.bracketR.get_ui());
  std::optional<Digit> found;
  for (; d < Integer(branching); ++d) {
    IntervalQ c = child_interval(I, n, static_cast<Digit>(d.get_ui()), k_);
    if (c.left > cur.right) break;
    if (cur.contains(c)) {
      found = static_cast<Digit>(d.get_ui());
      break;
    }
  }
  if (!found) {
    throw Error(ErrorKind::kStrategyAbort, "block " + std::to_string(n) + ": no successor cell of " +
                                               tau.to_string() + " lies in " + cur.to_string());
  }
  const auto& chosen = sel_.chosen(tau);
  if (!std::binary_search(chosen.begin(), chosen.end(), *found)) {
    throw Error(ErrorKind::kStrategyAbort, "block " + std::to_string(n) + ": the cell in " + cur.to_string() +
                                               " is the dangerous successor " + tau.child(*found).to_string());
  }
  Vertex next = tau.child(*found);
  rec.tau = next;
  enter_block(st, next);
  return child_interval(I, n, *found, k_);
}

IntervalQ BobRandom::move(GameState& st) {
  const Rational free = st.current().length() - st.required_length();
  const std::uint64_t k = rng_() % ((std::uint64_t{1} << 32) + 1);
  Rational frac(Integer(static_cast<unsigned long>(k)), Integer(1) << 32);
  return offset_move(st, free * frac);
}

IntervalQ BobAdversarial::move(GameState& st) {
  const IntervalQ& cur = st.current();
  const Rational len = st.required_length();
  const Rational free = cur.length() - len;
  const long n = GameState::block_of(st.round()).first;

  std::vector<Rational> centres;
  if (n >= 1 && (cat_.max_level() == 0 || n <= cat_.max_level())) {
    for (const auto& cp : cat_.meeting(cur, n, n)) centres.push_back(cp.point.y());
  }

  std::vector<Rational> cand{Rational(0), free};
  for (const auto& d : st.dangerous) {
    cand.push_back(d.right - len - cur.left);
    cand.push_back(d.left - cur.left);
  }
  for (const auto& y : centres) {
    cand.push_back(y - len - cur.left);
    cand.push_back(y - cur.left);
  }
  for (auto& o : cand) o = std::clamp(o, Rational(0), free);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::pair<long, long> best{-1, -1};
  std::vector<Rational> ties;
  for (const auto& o : cand) {
    IntervalQ I{cur.left + o, cur.left + o + len};
    long kept = count_contained(st.dangerous, I);
    long covered = static_cast<long>(std::count_if(centres.begin(), centres.end(), [&](const Rational& y) { return I.contains(y); }));
    std::pair<long, long> score{kept, covered};
    if (score > best) {
      best = score;
      ties.clear();
    }
    if (score == best) ties.push_back(o);
  }
  std::size_t pick = rng_ ? static_cast<std::size_t>((*rng_)() % ties.size()) : 0;
  return offset_move(st, ties[pick]);
}

IntervalQ BobScript::move(GameState& st) {
  if (next_ >= offsets_.size()) {
    throw Error(ErrorKind::kInvalidConfig, "script has no move for round " + std::to_string(st.round()));
  }
  return offset_move(st, offsets_[next_++]);
}

IntervalQ BobInteractive::move(GameState& st) {
  if (auto_) return auto_->move(st);
  const Rational free = st.current().length() - st.required_length();
  while (true) {
    out_ << "round " << st.round() << "  current " << st.current().to_string() << "\n"
         << "  your interval has length " << st.required_length().to_string() << "; offset in [0, "
         << free.to_string() << "]\n";
    for (const auto& d : st.dangerous) out_ << "  dangerous " << d.to_string() << "\n";
    out_ << "offset> " << std::flush;
    auto line = in_();
    if (!line) {
      quit_ = true;
      throw SessionQuit{};
    }
    std::string text = *line;
    text.erase(0, text.find_first_not_of(" \t"));
    text.erase(text.find_last_not_of(" \t\r") + 1);
    if (text == "quit") {
      quit_ = true;
      throw SessionQuit{};
    }
    if (text == "auto") {
      auto_ = std::make_unique<BobRandom>(seed_);
      return auto_->move(st);
    }
    try {
      Rational o = Rational::parse(text);
      if (o.sign() >= 0 && o <= free) return offset_move(st, o);
      out_ << "offset " << o.to_string() << " is outside [0, " << free.to_string() << "]\n";
    } catch (const Error&) {
      out_ << "expected a rational offset, 'auto' or 'quit'\n";
    }
  }
}

Transcript play(const GameConstants& k, const GameConfig& cfg, AliceBpv& alice, Player& bob) {
  Transcript t;
  t.config_digest = config_digest(k, cfg);
  GameState st(cfg);
  try {
    while (!st.finished()) {
      IntervalQ mv = st.to_move() == Mover::kAlice ? alice.move(st) : bob.move(st);
      st.apply(mv);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kStrategyAbort) throw;
    t.status = "abort";
    t.message = e.what();
  } catch (const SessionQuit&) {
    t.status = "incomplete";
    t.message = "Bob quit in round " + std::to_string(st.round());
  }
  t.moves = st.history();
  t.final_interval = st.current();
  t.blocks = alice.blocks();
  for (const auto& b : t.blocks) {
    if (b.tau.height() > t.tau_final.height()) t.tau_final = b.tau;
  }
  return t;
}

IntervalQ replay(const Transcript& t, const GameConfig& cfg) {
  if (t.moves.empty() || t.moves.front().interval != cfg.b0) {
    throw Error(ErrorKind::kIllegalMove, "transcript does not start from B_0 = " + cfg.b0.to_string());
  }
  GameState st(cfg);
  for (std::size_t i = 1; i < t.moves.size(); ++i) {
    if (t.moves[i].mover != st.to_move()) {
      throw Error(ErrorKind::kIllegalMove, "move " + std::to_string(i) + " is out of turn");
    }
    st.apply(t.moves[i].interval);
  }
  if (st.current() != t.final_interval) {
    throw Error(ErrorKind::kIllegalMove, "recorded final interval " + t.final_interval.to_string() +
                                             " differs from the replayed " + st.current().to_string());
  }
  return st.current();
}

namespace {

using ojson = nlohmann::ordered_json;

ojson interval_json(const IntervalQ& I) { return ojson{{"left", I.left.to_string()}, {"right", I.right.to_string()}}; }

IntervalQ interval_from(const ojson& j) {
  return {Rational::parse(j.at("left").get<std::string>()), Rational::parse(j.at("right").get<std::string>())};
}

}  // namespace

std::string to_json(const Transcript& t) {
  ojson j;
  j["config_digest"] = t.config_digest;
  j["status"] = t.status;
  j["message"] = t.message;
  ojson moves = ojson::array();
  for (const auto& m : t.moves) {
    moves.push_back(ojson{{"mover", m.mover == Mover::kAlice ? "alice" : "bob"},
                          {"left", m.interval.left.to_string()},
                          {"right", m.interval.right.to_string()}});
  }
  j["moves"] = moves;
  j["final"] = interval_json(t.final_interval);
  j["tau_final"] = t.tau_final.to_string();
  ojson blocks = ojson::array();
  for (const auto& b : t.blocks) {
    blocks.push_back(ojson{{"n", b.n}, {"tau", b.tau.to_string()}, {"dangerous", b.dangerous}});
  }
  j["blocks"] = blocks;
  return j.dump(1) + "\n";
}

Transcript transcript_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
    Transcript t;
    t.config_digest = j.at("config_digest").get<std::string>();
    t.status = j.at("status").get<std::string>();
    t.message = j.at("message").get<std::string>();
    for (const auto& m : j.at("moves")) {
      std::string who = m.at("mover").get<std::string>();
      if (who != "alice" && who != "bob") throw Error(ErrorKind::kParse, "unknown mover '" + who + "'");
      t.moves.push_back({who == "alice" ? Mover::kAlice : Mover::kBob, interval_from(m)});
    }
    t.final_interval = interval_from(j.at("final"));
    t.tau_final = Vertex::parse(j.at("tau_final").get<std::string>());
    for (const auto& b : j.at("blocks")) {
      BlockRecord r;
      r.n = b.at("n").get<long>();
      r.tau = Vertex::parse(b.at("tau").get<std::string>());
      r.dangerous = b.at("dangerous").get<std::array<long, 4>>();
      t.blocks.push_back(r);
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("transcript: ") + e.what());
  }
}

}  // namespace bpv
