#pragma once

// Continued-fraction analysis of a quadratic irrational theta: periodic
// expansion, a certified floor for inf q*||q theta||, and enumeration of the q
// in a window with ||q theta|| below eps / q^s.

#include <cstdint>
#include <vector>

#include "bpv/exactnum.hpp"

namespace bpv {

struct Convergent {
  Integer p;
  Integer q;
};

struct CFExpansion {
  FieldReal theta;
  // a_0 (any integer) first, then the non-repeating positive terms.
  std::vector<Integer> preperiod;
  std::vector<Integer> period;
  // Convergents p_k/q_k for k >= 0 until q_k exceeds 10^20.
  std::vector<Convergent> convergents;

  // Partial quotient a_k.
  const Integer& term(std::size_t k) const;
  // Convergents with q_k <= q_max, plus the first one beyond it.
  std::vector<Convergent> convergents_until(const Integer& q_max) const;
};

// Lagrange's surd algorithm; the period is detected by repetition of the
// (P, Q) state from a_1 onward.
CFExpansion cf_expand(const FieldReal& theta);

struct BadnessBound {
  FieldReal theta;
  Integer max_partial_quotient;
  // 1/(M+2) <= inf_q q*||q theta|| <= inf_q q^(1/s)*||q theta|| for s in (0,1].
  Rational certified_floor;
};

BadnessBound badness_floor(const CFExpansion& cf);

struct BadnessScan {
  Integer q_star;
  FieldReal value;  // q* * ||q* theta||, exact
  Rational lower;
  Rational upper;
};

// Exhaustive min over 1 <= q <= q_max of q*||q theta||, exact argmin (smallest
// q on ties) and a rational enclosure of width 10^-15.
BadnessScan brute_force_badness(const FieldReal& theta, std::uint64_t q_max);

// |x| < eps * q^(-s) for x in the field, eps > 0, s >= 0 rational; decided by
// raising to the denominator of s.
bool below_power_threshold(const FieldReal& x, const Rational& eps, const Rational& s,
                           const Integer& q);

struct SmallPart {
  Integer q;
  Integer p;  // nearest integer to q*theta
  friend bool operator==(const SmallPart&, const SmallPart&) = default;
};

// All q in [q_min, q_max] with |q theta - p| < eps / q^s_exp, sorted by q.
// Walks Ostrowski digits over the convergent denominators from the lowest
// index up, cutting a branch when the reachable values of q*theta stay at
// least the threshold (taken at the branch's smallest q) away from Z.
std::vector<SmallPart> small_fractional_parts(const FieldReal& theta, const Rational& eps,
                                              const Rational& s_exp, const Integer& q_min,
                                              const Integer& q_max);

}  // namespace bpv
