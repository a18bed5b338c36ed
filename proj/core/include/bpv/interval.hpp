#pragma once

#include <string>

#include "bpv/exactnum.hpp"

namespace bpv {

// Closed interval [left, right] with rational endpoints.
struct IntervalQ {
  Rational left;
  Rational right;

  Rational length() const { return right - left; }
  Rational midpoint() const { return (left + right) / Rational(2); }
  bool contains(const Rational& y) const { return left <= y && y <= right; }
  bool contains(const IntervalQ& o) const { return left <= o.left && o.right <= right; }
  bool meets(const IntervalQ& o) const { return !(o.right < left || right < o.left); }
  std::string to_string() const { return "[" + left.to_string() + ", " + right.to_string() + "]"; }

  friend bool operator==(const IntervalQ&, const IntervalQ&) = default;
};

}  // namespace bpv
