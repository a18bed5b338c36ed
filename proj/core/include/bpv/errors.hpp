#pragma once

#include <stdexcept>
#include <string>

namespace bpv {

enum class ErrorKind {
  kFieldMismatch,
  kParse,
  kHalfIntegerTie,
  kRationalInput,
  kDegenerateExponent,
  kInvalidBeta,
  kInvalidConfig,
  kNoLineFound,
  kLevelUnderflow,
  kInsufficientEnumeration,
  kWindowTooLarge,
  kExtractionFailed,
  kSizeLimit,
  kStrategyAbort,
  kIllegalMove,
  kCertificationFailed,
};

const char* to_string(ErrorKind kind);

// All library failures are reported as Error; `kind()` lets callers map them
// onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bpv
