#include <poll.h>
#include <unistd.h>

#include <iostream>

#include "cli.hpp"

namespace {

// Line reader on fd 0 that honours a timeout; std::cin buffering would hide
// pending input from poll().
class StdinLines {
 public:
  std::optional<std::string> next(int timeout_ms) {
    for (;;) {
      const auto nl = buf_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        return line;
      }
      if (eof_) {
        if (buf_.empty()) return std::nullopt;
        std::string line;
        line.swap(buf_);
        return line;
      }
      pollfd p{0, POLLIN, 0};
      const int ready = poll(&p, 1, timeout_ms);
      if (ready <= 0) return std::nullopt;
      char chunk[4096];
      const ssize_t got = read(0, chunk, sizeof chunk);
      if (got <= 0) eof_ = true;
      else buf_.append(chunk, static_cast<std::size_t>(got));
    }
  }

 private:
  std::string buf_;
  bool eof_ = false;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  StdinLines in;
  return bpv::cli::run(args, {std::cout, std::cerr, [&in](int ms) { return in.next(ms); }});
}
