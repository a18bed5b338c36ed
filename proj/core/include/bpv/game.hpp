#pragma once

// The (1/2, beta)-game on nested closed intervals, Alice's block strategy
// driven by a regular subtree of S, and a few Bobs.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bpv/interval.hpp"
#include "bpv/pointset.hpp"
#include "bpv/treeplan.hpp"

namespace bpv {

struct GameConfig {
  Rational alpha = Rational(Integer(1), Integer(2));
  Rational beta;
  IntervalQ b0;
  long horizon = 0;  // D
  long rounds = 0;   // 4 D unless extended
};

// B_0 is the root interval widened by l/2 on each side, so that the centred
// half of B_0 is the root interval itself.
GameConfig make_game_config(const GameConstants& k, long horizon, std::optional<long> rounds = std::nullopt);

// Canonical "key = value" text of everything a transcript depends on.
std::string config_text(const GameConstants& k, const GameConfig& g);
std::string config_digest(const GameConstants& k, const GameConfig& g);

enum class Mover { kAlice, kBob };

struct Move {
  Mover mover;
  IntervalQ interval;
  friend bool operator==(const Move&, const Move&) = default;
};

class GameState {
 public:
  explicit GameState(const GameConfig& cfg);

  const GameConfig& config() const { return cfg_; }
  const std::vector<Move>& history() const { return history_; }
  const IntervalQ& current() const { return history_.back().interval; }
  Mover to_move() const { return history_.back().mover == Mover::kBob ? Mover::kAlice : Mover::kBob; }
  // Round of the next move: B_i and A_i belong to round i.
  long round() const;
  bool finished() const;
  // The length the next move must have.
  Rational required_length() const;
  // Block position of round i: n = ceil(i / 4), j = i mod 4.
  static std::pair<long, long> block_of(long round) { return {(round + 3) / 4, round % 4}; }

  // Throws IllegalMove.
  void apply(const IntervalQ& move);

  // Strategy context, written by Alice and readable by an adversarial Bob.
  Vertex tau;                         // tau_{n-1}, the vertex of the current block
  std::vector<IntervalQ> dangerous;   // I(sigma) for the unchosen successors of tau

 private:
  GameConfig cfg_;
  std::vector<Move> history_;
};

// move lies in the current interval and has exactly the required length.
bool legal(const IntervalQ& move, const GameState& st);

// Dangerous intervals contained in I.
long count_contained(const std::vector<IntervalQ>& ds, const IntervalQ& I);

class Player {
 public:
  virtual ~Player() = default;
  virtual IntervalQ move(GameState& st) = 0;
};

struct BlockRecord {
  long n = 0;
  Vertex tau;  // tau_n, chosen at the end of the block
  // Dangerous intervals contained in A_{4(n-1)+j}, j = 0..3.
  std::array<long, 4> dangerous{};
  friend bool operator==(const BlockRecord&, const BlockRecord&) = default;
};

class AliceBpv : public Player {
 public:
  AliceBpv(SubtreeSelector& sel, const GameConstants& k) : sel_(sel), k_(k) {}
  IntervalQ move(GameState& st) override;
  const std::vector<BlockRecord>& blocks() const { return blocks_; }

 private:
  void enter_block(GameState& st, const Vertex& tau);

  SubtreeSelector& sel_;
  const GameConstants& k_;
  std::vector<BlockRecord> blocks_;
};

// Bob's offset is k/2^32 of the free range, k uniform in [0, 2^32].
class BobRandom : public Player {
 public:
  explicit BobRandom(std::uint64_t seed) : rng_(seed) {}
  IntervalQ move(GameState& st) override;

 private:
  std::mt19937_64 rng_;
};

// Maximises the dangerous intervals kept, then the level-n centres r/q
// covered (n the current block). Ties go left, or to a uniformly random
// candidate when seeded.
class BobAdversarial : public Player {
 public:
  explicit BobAdversarial(PointCatalog& cat, std::optional<std::uint64_t> seed = std::nullopt) : cat_(cat) {
    if (seed) rng_.emplace(*seed);
  }
  IntervalQ move(GameState& st) override;

 private:
  PointCatalog& cat_;
  std::optional<std::mt19937_64> rng_;
};

// Offsets (left endpoint minus current left endpoint) read from a list; the
// list must be long enough.
class BobScript : public Player {
 public:
  explicit BobScript(std::vector<Rational> offsets) : offsets_(std::move(offsets)) {}
  IntervalQ move(GameState& st) override;

 private:
  std::vector<Rational> offsets_;
  std::size_t next_ = 0;
};

// Thrown by an interactive Bob that stops playing.
struct SessionQuit {};

// Prompts for offsets. "auto" hands the rest of the game to BobRandom,
// "quit" ends the session; no input within the timeout counts as "quit".
class BobInteractive : public Player {
 public:
  using LineSource = std::function<std::optional<std::string>()>;
  BobInteractive(LineSource in, std::ostream& out, std::uint64_t seed) : in_(std::move(in)), out_(out), seed_(seed) {}
  IntervalQ move(GameState& st) override;
  bool quit() const { return quit_; }

 private:
  LineSource in_;
  std::ostream& out_;
  std::uint64_t seed_;
  std::unique_ptr<BobRandom> auto_;
  bool quit_ = false;
};

// The move of the required length whose left end lies `offset` past the
// current left end.
IntervalQ offset_move(const GameState& st, const Rational& offset);

struct Transcript {
  std::string config_digest;
  std::vector<Move> moves;
  IntervalQ final_interval;
  std::string status = "ok";  // ok, abort, incomplete
  std::string message;
  Vertex tau_final;
  std::vector<BlockRecord> blocks;
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Plays until the configured number of rounds. A StrategyAbort ends the game
// with status "abort" and the diagnostic; a quitting interactive Bob yields
// "incomplete".
Transcript play(const GameConstants& k, const GameConfig& cfg, AliceBpv& alice, Player& bob);

// Re-applies every move with the legality checks; returns the final interval.
IntervalQ replay(const Transcript& t, const GameConfig& cfg);

std::string to_json(const Transcript& t);
Transcript transcript_from_json(const std::string& text);

}  // namespace bpv
