#pragma once

// bpvlab command surface. Commands run in-process through run(), so the
// acceptance driver can check exit codes without spawning processes.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bpv/pointset.hpp"

namespace bpv::cli {

enum Exit { kOk = 0, kViolation = 1, kConfigError = 2, kPrecondition = 3 };

struct Config {
  FieldReal theta;
  Rational s, t, beta;
  Rational l = Rational(1);
  std::optional<IntervalQ> b0;
  CMode mode = CMode::kCertified;
  std::optional<Rational> c_override;
  std::optional<long> depth;  // empty: first level with points + 2
  std::uint64_t seed = 0;
  std::int64_t scan_bound = 100000;
  long m = 6;
};

// "key = value" lines; '#' starts a comment. Throws Error (Parse or
// InvalidConfig) on unknown keys, bad values or s + t != 1.
Config parse_config(const std::string& text);
// Constants with the root interval taken from b0 when given.
GameConstants build_constants(const Config& cfg);

// Reads one line from the interactive player, waiting at most timeout_ms;
// empty on timeout or end of input.
using LineReader = std::function<std::optional<std::string>(int timeout_ms)>;

struct Io {
  std::ostream& out;
  std::ostream& err;
  LineReader read_line;
};

int run(const std::vector<std::string>& args, Io io);

}  // namespace bpv::cli
