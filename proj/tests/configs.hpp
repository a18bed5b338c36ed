#pragma once

#include "bpv/pointset.hpp"

namespace testcfg {

inline bpv::Rational q(long n, long d = 1) { return bpv::Rational(bpv::Integer(n), bpv::Integer(d)); }

// sqrt 2, s = t = 1/2, beta = 1/2, unit root interval, c = 1/1024.
inline bpv::GameConstants g1() {
  return bpv::make_constants(q(1, 2), q(1, 2), q(1, 2), bpv::FieldReal::parse("(0+1*sqrt(2))/1"), q(1),
                             bpv::CMode::kOverride, q(1, 1024));
}

// Same exponents with a long root interval so that c = 1/10 is admissible.
inline bpv::GameConstants dense() {
  return bpv::make_constants(q(1, 2), q(1, 2), q(1, 2), bpv::FieldReal::parse("(0+1*sqrt(2))/1"), q(512),
                             bpv::CMode::kOverride, q(1, 10));
}

// Golden ratio, s = 1/4, t = 3/4, beta = 9/10, certified c, root [0, 1].
inline bpv::GameConstants g2() {
  return bpv::make_constants(q(1, 4), q(3, 4), q(9, 10), bpv::FieldReal::parse("(1+1*sqrt(5))/2"), q(1),
                             bpv::CMode::kCertified);
}

}  // namespace testcfg
