#pragma once

// Avoidance certificates for played games, and audits of the structural
// lemmas on enumerated points.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpv/game.hpp"
#include "bpv/pointset.hpp"
#include "bpv/treeplan.hpp"

namespace bpv {

// Both terms of max(q^s |q theta - p|, q^t |q y - r|) >= c in cleared form.
bool first_term_clear(const RatPoint& P, const GameConstants& k);
bool second_term_clear(const RatPoint& P, const Rational& y, const GameConstants& k);
inline bool midpoint_clear(const RatPoint& P, const Rational& y, const GameConstants& k) {
  return first_term_clear(P, k) || second_term_clear(P, y, k);
}

struct PointVerdict {
  ClassifiedPoint point;
  bool avoids = false;    // Delta(P) misses the final interval
  bool y_clear = false;   // the badness inequality holds at y for P
  friend bool operator==(const PointVerdict&, const PointVerdict&) = default;
};

struct SmallQScan {
  std::int64_t bound = 0;
  bool ok = true;
  std::int64_t second_term_checks = 0;  // q whose first term fell below c
  std::optional<RatPoint> witness;
  friend bool operator==(const SmallQScan&, const SmallQScan&) = default;
};

// For every q <= bound: max(q^s ||q theta||, q^t ||q y||) >= c.
SmallQScan small_q_scan(const GameConstants& k, const Rational& y, std::int64_t bound);

struct CertifyOptions {
  std::int64_t small_q_bound = 100000;
  std::optional<Rational> point;  // defaults to the midpoint of the final interval
  // The window is the final interval widened by |final| R^pad on each side,
  // cut to the root interval. Negative: pad = max(1, D - 5).
  long pad = -1;
  std::uint64_t budget = 20000000;
};

struct Certificate {
  // Constants snapshot.
  FieldReal theta;
  Rational s, t, beta, l, a0_left, c;
  CMode mode = CMode::kCertified;
  long horizon = 0;
  long rounds = 0;

  std::string config_digest;
  std::string transcript_digest;
  std::string points_digest;
  IntervalQ final_interval;
  // Points of level <= horizon whose neighbourhood meets this window are
  // enumerated; it contains the final interval.
  IntervalQ window;
  Rational y;
  std::vector<PointVerdict> verdicts;
  SmallQScan small_q;

  bool valid() const;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Enumerates the points near the final interval and checks them. Throws
// CertificationFailed naming the first offending point, or when the
// transcript is unfinished, does not replay, or belongs to another config.
Certificate certify(const Transcript& t, const GameConstants& k, const GameConfig& cfg, PointCatalog& cat,
                    const CertifyOptions& opt = {});

std::string to_json(const Certificate& c);
Certificate certificate_from_json(const std::string& text);

// Rebuilds the constants from the snapshot and re-derives every verdict, the
// enumeration and the small-q scan. Returns a list of problems, empty when the
// certificate holds. With a transcript, also checks its digest and replay.
std::vector<std::string> recheck(const Certificate& c, const Transcript* t = nullptr);

std::string points_digest(const std::vector<ClassifiedPoint>& pts);

// Lemma audits below anchor vertices: every tau at height >= height(anchor)
// inside I(anchor) and every level n <= D is covered.
struct Lemma42Violation {
  long n = 0;
  long k = 0;
  Vertex tau;
  ClassifiedPoint first;
  ClassifiedPoint second;
};

struct Lemma42Report {
  long horizon = 0;
  std::vector<Vertex> anchors;
  std::int64_t points = 0;
  std::int64_t groups = 0;       // (n, k, tau) with at least one point
  std::int64_t outside_s = 0;    // (P, tau) pairs dropped because tau is not in S
  std::int64_t multi_groups = 0; // ... with at least two points
  std::vector<Lemma42Violation> violations;
  bool ok() const { return violations.empty(); }
};

struct Lemma43Entry {
  long n = 0;
  long k = 0;
  Vertex tau;  // height n - k
  std::vector<Vertex> cells;
};

struct Lemma43Report {
  long horizon = 0;
  std::vector<Vertex> anchors;
  std::int64_t points = 0;
  std::int64_t triples = 0;
  std::int64_t outside_s = 0;
  long max_count = 0;
  std::vector<Lemma43Entry> violations;  // more than two cells
  bool ok() const { return violations.empty(); }
};

Lemma42Report audit_lemma42(GeometricTree& tree, long horizon, const std::vector<Vertex>& anchors);
Lemma43Report audit_lemma43(GeometricTree& tree, long horizon, const std::vector<Vertex>& anchors);

struct GrowthReport {
  GrowthAudit audit;
  bool asserted = false;  // certified mode
  bool ok() const { return audit.ok(); }
};

GrowthReport audit_growth(GeometricTree& tree, long depth, long m = 6, const Vertex& anchor = {});

// Height-h vertices around -(A theta + C) / B for the lines with small |A| and
// B whose centre lies in the root interval; points of high level cluster there.
std::vector<Vertex> cluster_anchors(const GameConstants& k, long height, long max_b, long max_a);

std::string to_json(const Lemma42Report& r);
std::string to_json(const Lemma43Report& r);
std::string to_json(const GrowthReport& r);

}  // namespace bpv
