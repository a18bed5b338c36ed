#pragma once

// Game constants, the dangerous rational points with their neighbourhoods,
// the line attached to each point, and level/class assignment.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpv/diophantine.hpp"
#include "bpv/exactnum.hpp"
#include "bpv/interval.hpp"

namespace bpv {

enum class CMode { kCertified, kOverride };

struct GameConstants {
  FieldReal theta;
  Rational s, t;
  // s = u/v, t = w/v.
  unsigned long u = 0, v = 1, w = 0;
  Rational beta;
  Rational l;
  IntervalQ a0;  // the root interval, of length l
  Rational R;
  Integer bracketR;
  Rational c;
  Rational lambda;
  Rational mu;
  CMode c_mode = CMode::kCertified;

  // Branches of the minimum defining c, kept for the certificate.
  Rational floor_branch;    // 1/(M+2)
  Rational packing_branch;  // l / (4R)
  unsigned long dyadic_exponent = 0;  // c = 2^-k in certified mode

  // H_n = 4 c R^n / l.
  Rational H(long n) const;
  // The n with H_n <= x < H_{n+1}, or 0 when x < H_1.
  long level_of(const Rational& x) const;

  // H_1, H_2, ... precomputed by make_constants.
  std::vector<Rational> h_ladder;
};

// a0_left places the root interval at [a0_left, a0_left + l].
GameConstants make_constants(const Rational& s, const Rational& t, const Rational& beta,
                             const FieldReal& theta, const Rational& l, CMode c_mode,
                             const std::optional<Rational>& c_override = std::nullopt,
                             const Rational& a0_left = Rational(0));

// c <= (1/8) R^(-2-3/t^2), decided exactly.
bool satisfies_third_branch(const Rational& c, const Rational& R, const Rational& t);

struct RatPoint {
  Integer p;
  Integer q;
  Integer r;

  Rational x() const { return Rational(p, q); }
  Rational y() const { return Rational(r, q); }
  std::string to_string() const;
  friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

struct Line {
  Integer A;
  Integer B;
  Integer C;
  friend bool operator==(const Line&, const Line&) = default;
};

struct ClassifiedPoint {
  RatPoint point;
  Line line;
  long level = 0;
  long class_k = 0;
  friend bool operator==(const ClassifiedPoint&, const ClassifiedPoint&) = default;
};

// |theta - p/q| < c / q^(1+s).
bool in_C(const RatPoint& P, const GameConstants& k);

// Line invariants for P: gcd 1, passes through P, |A| <= q^s, 0 < B <= q^t.
bool line_valid(const RatPoint& P, const Line& L, const GameConstants& k);

// Smallest admissible B, then smallest |A|, then A >= 0. The smallest B is a
// multiple g = gcd(p, q) whose cofactor is a best approximation denominator of
// the lattice slope, so the convergents of that slope are searched first.
Line find_line(const RatPoint& P, const GameConstants& k);
// The same choice by scanning every B <= q^t; q must be small.
std::optional<Line> find_line_exhaustive(const RatPoint& P, const GameConstants& k);

ClassifiedPoint classify(const RatPoint& P, const Line& L, const GameConstants& k);
// Lower class threshold T_j = H_{n+1}^(t/(1+t)) R^(-lambda-(j-1) mu), as power terms.
std::vector<PowerTerm> class_threshold(const GameConstants& k, long n, long j);
// q^(1+t) >= H_n.
bool height_bound_holds(const ClassifiedPoint& cp, const GameConstants& k);

// Delta(P) = { y : |y - r/q| < c / q^(1+t) }, open.
bool delta_contains(const RatPoint& P, const Rational& y, const GameConstants& k);
bool delta_meets(const RatPoint& P, const IntervalQ& I, const GameConstants& k);
// Delta(P) is contained in the closed interval I.
bool delta_inside(const RatPoint& P, const IntervalQ& I, const GameConstants& k);

// Denominators q < H_{n_max+1} with |q theta - p| < c/q^s, and the candidate
// numerator range for r given a region.
std::pair<Integer, Integer> r_range(const Integer& q, const IntervalQ& region, const GameConstants& k);

// r_range for many q against one region, in integer arithmetic.
class NumeratorWindow {
 public:
  NumeratorWindow(const IntervalQ& region, const GameConstants& k);
  std::pair<Integer, Integer> operator()(const Integer& q) const;

 private:
  Integer lo_a_, lo_b_, lo_d_;  // ceil((q lo_a - lo_b) / lo_d)
  Integer hi_a_, hi_b_, hi_d_;  // floor((q hi_a + hi_b) / hi_d)
};

// Per-denominator data that does not depend on the region.
struct DenInfo {
  long min_level = 0;  // level of q * 1
  long top_level = 0;  // largest n with q^(1+t) >= H_n
  Integer g;           // gcd(p, q)
  Integer a;           // floor(q^s)
  Integer bt;          // floor(q^t)
  // ceil(H_n / q) for n = min_level .. top_level + 1.
  std::vector<Integer> band;
  const Integer& band_start(long n) const { return band[static_cast<std::size_t>(n - min_level)]; }
};

// Smallest x in [0, x_max] with (a x + b) mod m in [lo, hi], if any. Needs
// 0 <= a, b < m, 0 <= lo <= hi < m and m < 2^63.
std::optional<std::int64_t> first_residue_hit(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t lo,
                                              std::int64_t hi, std::int64_t x_max);

// How a catalog query finds the numerators r for one denominator: scan the
// whole range, or, for each admissible B, solve A = (B/g) r p'^-1 mod q/g
// with |A| <= q^s by first_residue_hit. Auto picks the cheaper per q.
enum class ScanMode { kAuto, kNumerators, kLines };

// Every point of level <= n_max whose neighbourhood meets region. Throws
// WindowTooLarge when the work exceeds the budget (numerators scanned or
// residue solves).
std::vector<ClassifiedPoint> enumerate_window(const GameConstants& k, long n_max,
                                              const IntervalQ& region,
                                              std::uint64_t r_budget = 20000000);

// Lazy view of the dangerous points. Denominators are computed once up to the
// requested level; classified points are memoised by (q, r). Not thread-safe.
class PointCatalog {
 public:
  // max_level caps the levels this catalog may be asked about; 0 = no cap.
  explicit PointCatalog(const GameConstants& k, long max_level = 0);

  const GameConstants& constants() const { return k_; }
  long max_level() const { return max_level_; }

  // Denominators whose points can reach level <= n (q < H_{n+1}).
  const std::vector<SmallPart>& denominators(long n);
  // The level of q*1, a lower bound for every point with this denominator.
  long min_level(const Integer& q) const;
  // Parallel to denominators(n), for the same n.
  const std::vector<DenInfo>& den_info(long n);

  const ClassifiedPoint& point(const SmallPart& sp, const Integer& r);

  // Points with level in [n_lo, n_hi] whose neighbourhood meets region.
  std::vector<ClassifiedPoint> meeting(const IntervalQ& region, long n_lo, long n_hi,
                                       std::uint64_t r_budget = 20000000, ScanMode mode = ScanMode::kAuto);

  // Smallest level that has any point, with a witness point.
  std::pair<long, ClassifiedPoint> first_level();

  std::size_t cached_points() const { return cache_.size(); }

 private:
  void require_level(long n) const;

  const GameConstants& k_;
  long max_level_;
  long covered_level_ = 0;
  std::vector<SmallPart> dens_;
  std::vector<DenInfo> infos_;
  std::map<std::pair<Integer, Integer>, ClassifiedPoint> cache_;
};

// "p q r A B C n k" records.
std::string to_record(const ClassifiedPoint& cp);
ClassifiedPoint from_record(const std::string& line);
void write_records(std::ostream& out, const std::vector<ClassifiedPoint>& pts);
std::vector<ClassifiedPoint> read_records(std::istream& in);

}  // namespace bpv
