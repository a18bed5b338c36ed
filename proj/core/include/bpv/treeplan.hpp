#pragma once

// The [R]-ary tree of intervals, the surviving subtree S, the finite-horizon
// hit predicate and extraction of a regular subtree of S.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bpv/interval.hpp"
#include "bpv/pointset.hpp"

namespace bpv {

using Digit = std::uint32_t;

struct Vertex {
  std::vector<Digit> path;

  long height() const { return static_cast<long>(path.size()); }
  Vertex parent() const;
  Vertex child(Digit d) const;
  bool is_prefix_of(const Vertex& o) const;
  // "[]" or "[3,0,12]".
  std::string to_string() const;
  static Vertex parse(const std::string& text);

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Left-packed positional map: child j of a height-(n-1) interval starting at
// a is [a + j l R^-n, a + (j+1) l R^-n].
IntervalQ interval_of(const Vertex& v, const GameConstants& k);
IntervalQ child_interval(const IntervalQ& parent, long child_height, Digit d, const GameConstants& k);
// The height-h vertex whose interval contains y, preferring the left cell on
// a shared endpoint; empty if y falls outside the packed children somewhere.
std::optional<Vertex> vertex_at(const Rational& y, long h, const GameConstants& k);

class TreeModel {
 public:
  virtual ~TreeModel() = default;
  virtual Digit branching() const = 0;
  // v and all its ancestors survive.
  virtual bool in_S(const Vertex& v) = 0;
  // Sufficient test: if true, hit(v, k, m) holds whenever in_S(v) does.
  virtual bool certainly_hits(const Vertex&, long /*k*/, long /*m*/) { return false; }
  // Every descendant of v down to k levels below survives whenever v does.
  virtual bool clean_below(const Vertex&, long /*k*/) { return false; }
  // A superset of the children c of v for which hit(c, k - 1, .) may fail;
  // every other child is hit whenever v survives. Empty optional when the
  // model cannot tell cheaply.
  virtual std::optional<std::vector<Digit>> dirty_children(const Vertex&, long /*k*/) { return std::nullopt; }
};

// Explicit toy tree: in_S(v) iff every nonempty prefix of v is in `allowed`.
class MaskTree : public TreeModel {
 public:
  MaskTree(Digit n, std::set<Vertex> allowed) : n_(n), allowed_(std::move(allowed)) {}
  Digit branching() const override { return n_; }
  bool in_S(const Vertex& v) override;

 private:
  Digit n_;
  std::set<Vertex> allowed_;
};

// The tree of the game, with exclusions from the dangerous points.
class GeometricTree : public TreeModel {
 public:
  // Levels above catalog.max_level() are refused with InsufficientEnumeration.
  explicit GeometricTree(PointCatalog& catalog);

  Digit branching() const override { return n_; }
  bool in_S(const Vertex& v) override;
  bool certainly_hits(const Vertex& v, long k, long m) override;
  bool clean_below(const Vertex& v, long k) override;
  // Children whose interval meets Delta(P) for some P of level in (h, h+k].
  std::optional<std::vector<Digit>> dirty_children(const Vertex& v, long k) override;

  const IntervalQ& interval(const Vertex& v);
  PointCatalog& catalog() { return cat_; }
  const GameConstants& constants() const { return cat_.constants(); }

  // The points of level height(v) whose neighbourhood meets I(v).
  std::vector<ClassifiedPoint> excluding_points(const Vertex& v);

  // Upper bound on sum over points P with level in (h, h+k] and Delta(P)
  // meeting I(v) of 2 m^(h - level(P)), h = height(v). Stops early once the
  // running sum reaches `stop_at`.
  long double blocking_mass(const Vertex& v, long k, long m, long double stop_at);

 private:
  struct Info {
    IntervalQ interval;
    int in_s = -1;
  };
  Info& info(const Vertex& v);

  PointCatalog& cat_;
  Digit n_;
  std::map<Vertex, Info> info_;
};

// Memoised hit(v, k, m): in_S(v), and for k >= 1 at least N - m + 1
// successors with hit(., k-1, m).
class HitPlanner {
 public:
  explicit HitPlanner(TreeModel& model) : model_(model) {}

  bool hit(const Vertex& v, long k, long m);
  TreeModel& model() { return model_; }

  struct Stats {
    std::uint64_t evaluations = 0;
    std::uint64_t pruned = 0;
    std::uint64_t dirty_scans = 0;
  };
  const Stats& stats() const { return stats_; }

 private:
  TreeModel& model_;
  std::map<std::tuple<Vertex, long, long>, bool> memo_;
  Stats stats_;
};

// A (N-m+1, D)-regular subtree of S, materialised on demand: each selected
// vertex keeps its leftmost N-m+1 successors whose hit holds for the rest of
// the horizon.
class SubtreeSelector {
 public:
  SubtreeSelector(HitPlanner& planner, long horizon, long m);

  long horizon() const { return horizon_; }
  long m() const { return m_; }
  Digit keep() const { return keep_; }

  // v must be selected with height < horizon.
  const std::vector<Digit>& chosen(const Vertex& v);
  bool selected(const Vertex& v);
  // Every choice made so far.
  const std::map<Vertex, std::vector<Digit>>& choices() const { return choices_; }
  // Forces every choice down to the horizon; SizeLimit beyond max_vertices.
  const std::map<Vertex, std::vector<Digit>>& materialize(std::size_t max_vertices = 1000000);

 private:
  HitPlanner& planner_;
  long horizon_;
  long m_;
  Digit keep_;
  std::map<Vertex, std::vector<Digit>> choices_;
};

// Throws ExtractionFailed when hit(root, D, m) fails.
SubtreeSelector extract_selector(HitPlanner& planner, long horizon, long m);

// The m - 1 successors of v that the selector leaves out.
std::vector<Digit> dangerous_digits(const Vertex& v, SubtreeSelector& sel);

struct GrowthAudit {
  Vertex anchor;
  long depth = 0;
  long m = 6;
  std::vector<Integer> a;             // a_0 .. a_depth
  std::vector<long> weak_growth;      // n with a_n <= 2 a_{n-1}
  std::vector<long> recurrence_gaps;  // n with a_n < m a_{n-1} - sum_k 2 a_{n-k}
  bool ok() const { return weak_growth.empty() && recurrence_gaps.empty(); }
};

// Adversarial m-regular selection below `anchor`: each vertex keeps its
// non-surviving successors first, then the leftmost survivors; a_i counts
// surviving selected vertices i levels below the anchor.
GrowthAudit growth_audit(TreeModel& model, long depth, long m = 6, const Vertex& anchor = {});

using RegularSubtree = std::map<Vertex, std::vector<Digit>>;
// Every (m, h)-regular subtree of the N-ary tree; SizeLimit above `limit`.
std::vector<RegularSubtree> oracle_enumerate_regular_subtrees(Digit n, Digit m, long h,
                                                              std::size_t limit = 2000000);
Integer count_regular_subtrees(Digit n, Digit m, long h);
// The depth-h vertices of a regular subtree.
std::vector<Vertex> subtree_leaves(const RegularSubtree& t, long h);

}  // namespace bpv
