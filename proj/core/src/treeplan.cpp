#include "bpv/treeplan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace bpv {

Vertex Vertex::parent() const {
  Vertex p = *this;
  if (!p.path.empty()) p.path.pop_back();
  return p;
}

Vertex Vertex::child(Digit d) const {
  Vertex c = *this;
  c.path.push_back(d);
  return c;
}

bool Vertex::is_prefix_of(const Vertex& o) const {
  return path.size() <= o.path.size() && std::equal(path.begin(), path.end(), o.path.begin());
}

std::string Vertex::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(path[i]);
  }
  return s + "]";
}

Vertex Vertex::parse(const std::string& text) {
  std::string t;
  for (char ch : text) {
    if (ch != ' ') t += ch;
  }
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw Error(ErrorKind::kParse, "bad vertex '" + text + "'");
  }
  Vertex v;
  std::string body = t.substr(1, t.size() - 2);
  if (body.empty()) return v;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorKind::kParse, "bad vertex '" + text + "'");
    }
    v.path.push_back(static_cast<Digit>(std::stoul(item)));
  }
  return v;
}

IntervalQ child_interval(const IntervalQ& parent, long child_height, Digit d, const GameConstants& k) {
  Rational w = k.l * k.R.pow(-child_height);
  Rational left = parent.left + Rational(static_cast<long>(d)) * w;
  return {left, left + w};
}

IntervalQ interval_of(const Vertex& v, const GameConstants& k) {
  IntervalQ I = k.a0;
  for (std::size_t i = 0; i < v.path.size(); ++i) {
    I = child_interval(I, static_cast<long>(i + 1), v.path[i], k);
  }
  return I;
}

std::optional<Vertex> vertex_at(const Rational& y, long h, const GameConstants& k) {
  if (!k.a0.contains(y)) return std::nullopt;
  Vertex v;
  Rational left = k.a0.left;
  for (long i = 1; i <= h; ++i) {
    Rational w = k.l * k.R.pow(-i);
    Integer d = ((y - left) / w).floor();
    // On a shared endpoint prefer the left cell.
    if (sgn(d) > 0 && left + Rational(d) * w == y) d -= 1;
    if (d >= k.bracketR) return std::nullopt;
    v.path.push_back(static_cast<Digit>(d.get_ui()));
    left += Rational(d) * w;
  }
  return v;
}

bool MaskTree::in_S(const Vertex& v) {
  Vertex p;
  for (Digit d : v.path) {
    p.path.push_back(d);
    if (!allowed_.count(p)) return false;
  }
  return true;
}

GeometricTree::GeometricTree(PointCatalog& catalog)
    : cat_(catalog), n_(static_cast<Digit>(catalog.constants().bracketR.get_ui())) {}

GeometricTree::Info& GeometricTree::info(const Vertex& v) {
  auto it = info_.find(v);
  if (it != info_.end()) return it->second;
  Info in;
  if (v.path.empty()) {
    in.interval = constants().a0;
  } else {
    in.interval = child_interval(info(v.parent()).interval, v.height(), v.path.back(), constants());
  }
  return info_.emplace(v, std::move(in)).first->second;
}

const IntervalQ& GeometricTree::interval(const Vertex& v) { return info(v).interval; }

std::vector<ClassifiedPoint> GeometricTree::excluding_points(const Vertex& v) {
  if (v.path.empty()) return {};
  return cat_.meeting(interval(v), v.height(), v.height());
}

bool GeometricTree::in_S(const Vertex& v) {
  Info& in = info(v);
  if (in.in_s >= 0) return in.in_s == 1;
  bool ok = true;
  if (!v.path.empty()) {
    ok = in_S(v.parent()) && excluding_points(v).empty();
  }
  // info_ may have grown; look the entry up again.
  info_[v].in_s = ok ? 1 : 0;
  return ok;
}

long double GeometricTree::blocking_mass(const Vertex& v, long k, long m, long double stop_at) {
  const GameConstants& K = constants();
  const long h = v.height();
  const long top = h + k;
  const IntervalQ I = interval(v);
  const auto& dens = cat_.denominators(top);
  const Integer qcap = K.H(top + 1).ceil();
  const long double len = static_cast<long double>(I.length().mpq().get_d());
  const long double cdbl = static_cast<long double>(K.c.mpq().get_d());
  const long double lm = std::log(static_cast<long double>(m));
  auto weight = [&](long level) { return 2.0L * std::exp(static_cast<long double>(h - level) * lm); };

  // Cheap per-q bounds first; denominators with few numerators are then
  // classified exactly, largest bound first, only while the sum is still
  // at or above stop_at.
  struct Refinable {
    const SmallPart* sp;
    Integer rlo, rhi;
    long double cheap;
  };
  std::vector<Refinable> refine;
  long double total = 0;
  const auto& infos = cat_.den_info(top);
  const NumeratorWindow window(I, K);
  for (std::size_t i = 0; i < dens.size(); ++i) {
    const SmallPart& sp = dens[i];
    const DenInfo& in = infos[i];
    if (sp.q >= qcap) break;
    const Integer& q = sp.q;
    // Levels n with q^(1+t) >= H_n only.
    const long nmax = std::min(top, in.top_level);
    const long lo_level = std::max(in.min_level, h + 1);
    if (nmax < lo_level) continue;

    auto [rlo, rhi] = window(q);
    if (rhi < rlo) continue;
    Integer cnt = rhi - rlo + 1;
    long double by_r = static_cast<long double>(cnt.get_d()) * weight(lo_level);
    // Every such point lies on a line By = Ax + C with |A| <= q^s and B in
    // the band of its level; for fixed (A, B) the admissible C number at
    // most B*len' + 1, len' the inflated region length.
    const long double two_a1 = 2.0L * static_cast<long double>(in.a.get_d()) + 1.0L;
    long double lenp = len + 2.0L * cdbl / static_cast<long double>(q.get_d());
    long double by_line = 0;
    for (long n = lo_level; n <= nmax && by_line < by_r; ++n) {
      Integer b1 = std::max(Integer(1), in.band_start(n));
      Integer b2 = std::min(in.bt, Integer(in.band_start(n + 1) - 1));
      if (b2 < b1) continue;
      long double n_b = static_cast<long double>(Integer(b2 - b1 + 1).get_d());
      long double sum_b = static_cast<long double>(Integer(b1 + b2).get_d()) * n_b / 2.0L;
      by_line += two_a1 * (lenp * sum_b + n_b) * weight(n);
    }
    long double cheap = std::min(by_r, by_line);
    total += cheap;
    if (cnt <= 32 && cheap > 0) refine.push_back({&sp, rlo, rhi, cheap});
  }
  if (total < stop_at) return total;

  std::sort(refine.begin(), refine.end(), [](const Refinable& x, const Refinable& y) { return x.cheap > y.cheap; });
  for (const Refinable& rf : refine) {
    const SmallPart& sp = *rf.sp;
    Integer g = gcd(sp.p, sp.q);
    long double exact = 0;
    for (Integer r = rf.rlo; r <= rf.rhi; ++r) {
      if (g != 1 && gcd(g, r) != 1) continue;
      RatPoint P{sp.p, sp.q, r};
      if (!delta_meets(P, I, K)) continue;
      const ClassifiedPoint& cp = cat_.point(sp, r);
      if (cp.level > h && cp.level <= top) exact += weight(cp.level);
    }
    total += std::min(exact, rf.cheap) - rf.cheap;
    if (total < stop_at) break;
  }
  return total;
}

bool GeometricTree::certainly_hits(const Vertex& v, long k, long m) {
  // The floating sum is compared against 1/2 rather than 1, far more slack
  // than its rounding error.
  return blocking_mass(v, k, m, 0.5L) < 0.5L;
}

bool GeometricTree::clean_below(const Vertex& v, long k) {
  try {
    return cat_.meeting(interval(v), v.height() + 1, v.height() + k, 200000).empty();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kWindowTooLarge) return false;
    throw;
  }
}

std::optional<std::vector<Digit>> GeometricTree::dirty_children(const Vertex& v, long k) {
  const GameConstants& K = constants();
  const IntervalQ I = interval(v);
  std::vector<ClassifiedPoint> pts;
  try {
    pts = cat_.meeting(I, v.height() + 1, v.height() + k, 2000000);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kWindowTooLarge) return std::nullopt;
    throw;
  }
  const Rational cell = K.l / K.R.pow(v.height() + 1);
  std::set<Digit> dirty;
  for (const auto& cp : pts) {
    const RatPoint& P = cp.point;
    // Level > height(v) keeps the radius below a quarter of a child cell.
    Integer d0 = ((P.y() - I.left) / cell).floor();
    Integer d_lo = d0 - 1, d_hi = d0 + 1;
    d_lo = std::max(d_lo, Integer(0));
    d_hi = std::min(d_hi, Integer(n_ - 1));
    for (Integer d = d_lo; d <= d_hi; ++d) {
      Digit dd = static_cast<Digit>(d.get_ui());
      if (delta_meets(P, child_interval(I, v.height() + 1, dd, K), K)) dirty.insert(dd);
    }
  }
  return std::vector<Digit>(dirty.begin(), dirty.end());
}

bool HitPlanner::hit(const Vertex& v, long k, long m) {
  if (!model_.in_S(v)) return false;
  if (k == 0) return true;
  auto key = std::make_tuple(v, k, m);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  ++stats_.evaluations;
  bool result;
  if (model_.certainly_hits(v, k, m)) {
    ++stats_.pruned;
    result = true;
  } else {
    const Digit n = model_.branching();
    const long need = static_cast<long>(n) - m + 1;
    long good = 0, bad = 0;
    result = false;
    std::vector<Digit> order;
    if (auto dirty = model_.dirty_children(v, k)) {
      ++stats_.dirty_scans;
      good = static_cast<long>(n) - static_cast<long>(dirty->size());
      order = std::move(*dirty);
      if (good >= need) result = true;
    } else {
      for (Digit d = 0; d < n; ++d) order.push_back(d);
    }
    for (Digit d : result ? std::vector<Digit>{} : order) {
      if (hit(v.child(d), k - 1, m)) {
        if (++good >= need) {
          result = true;
          break;
        }
      } else if (++bad > static_cast<long>(n) - need) {
        break;
      }
    }
  }
  memo_.emplace(std::move(key), result);
  return result;
}

SubtreeSelector::SubtreeSelector(HitPlanner& planner, long horizon, long m)
    : planner_(planner), horizon_(horizon), m_(m) {
  Digit n = planner.model().branching();
  if (m < 1 || m > static_cast<long>(n)) throw std::invalid_argument("m must lie in [1, N]");
  keep_ = n - static_cast<Digit>(m) + 1;
}

const std::vector<Digit>& SubtreeSelector::chosen(const Vertex& v) {
  auto it = choices_.find(v);
  if (it != choices_.end()) return it->second;
  if (v.height() >= horizon_) throw std::logic_error("vertex " + v.to_string() + " is at the horizon");
  const long rest = horizon_ - v.height() - 1;
  std::vector<Digit> out;
  const Digit n = planner_.model().branching();
  for (Digit d = 0; d < n && out.size() < keep_; ++d) {
    if (planner_.hit(v.child(d), rest, m_)) out.push_back(d);
  }
  if (out.size() < keep_) {
    throw Error(ErrorKind::kExtractionFailed, "vertex " + v.to_string() + " has " + std::to_string(out.size()) +
                                                  " successors with hit for " + std::to_string(rest) +
                                                  " more levels; " + std::to_string(keep_) + " needed");
  }
  return choices_.emplace(v, std::move(out)).first->second;
}

bool SubtreeSelector::selected(const Vertex& v) {
  if (v.height() > horizon_) return false;
  Vertex p;
  for (Digit d : v.path) {
    const auto& c = chosen(p);
    if (!std::binary_search(c.begin(), c.end(), d)) return false;
    p.path.push_back(d);
  }
  return true;
}

const std::map<Vertex, std::vector<Digit>>& SubtreeSelector::materialize(std::size_t max_vertices) {
  std::vector<Vertex> stack{Vertex{}};
  std::size_t seen = 0;
  while (!stack.empty()) {
    Vertex v = std::move(stack.back());
    stack.pop_back();
    if (++seen > max_vertices) {
      throw Error(ErrorKind::kSizeLimit, "selector has more than " + std::to_string(max_vertices) + " vertices");
    }
    if (v.height() >= horizon_) continue;
    for (Digit d : chosen(v)) stack.push_back(v.child(d));
  }
  return choices_;
}

SubtreeSelector extract_selector(HitPlanner& planner, long horizon, long m) {
  if (!planner.hit(Vertex{}, horizon, m)) {
    throw Error(ErrorKind::kExtractionFailed,
                "root fails hit for horizon " + std::to_string(horizon) + " and m = " + std::to_string(m));
  }
  return SubtreeSelector(planner, horizon, m);
}

std::vector<Digit> dangerous_digits(const Vertex& v, SubtreeSelector& sel) {
  const auto& c = sel.chosen(v);
  std::vector<Digit> out;
  const Digit n = sel.keep() + static_cast<Digit>(sel.m()) - 1;
  for (Digit d = 0; d < n; ++d) {
    if (!std::binary_search(c.begin(), c.end(), d)) out.push_back(d);
  }
  return out;
}

GrowthAudit growth_audit(TreeModel& model, long depth, long m, const Vertex& anchor) {
  GrowthAudit au;
  au.anchor = anchor;
  au.depth = depth;
  au.m = m;
  au.a.assign(static_cast<std::size_t>(depth + 1), Integer(0));
  const Digit n = model.branching();
  const Digit take = std::min<Digit>(n, static_cast<Digit>(m));

  std::function<void(const Vertex&, long)> walk = [&](const Vertex& w, long i) {
    if (i == depth) return;
    if (model.clean_below(w, depth - i)) {
      Integer p = 1;
      for (long j = i + 1; j <= depth; ++j) {
        p *= take;
        au.a[static_cast<std::size_t>(j)] += p;
      }
      return;
    }
    std::vector<Digit> out, in;
    for (Digit d = 0; d < n; ++d) (model.in_S(w.child(d)) ? in : out).push_back(d);
    std::vector<Digit> pick;
    for (Digit d : out) {
      if (pick.size() < take) pick.push_back(d);
    }
    for (Digit d : in) {
      if (pick.size() < take) pick.push_back(d);
    }
    for (Digit d : pick) {
      if (std::find(in.begin(), in.end(), d) == in.end()) continue;
      au.a[static_cast<std::size_t>(i + 1)] += 1;
      walk(w.child(d), i + 1);
    }
  };
  if (model.in_S(anchor)) {
    au.a[0] = 1;
    walk(anchor, 0);
  }
  for (long k = 1; k <= depth; ++k) {
    const auto K = static_cast<std::size_t>(k);
    if (au.a[K] <= 2 * au.a[K - 1]) au.weak_growth.push_back(k);
    Integer rhs = Integer(m) * au.a[K - 1];
    for (long j = 1; j <= k; ++j) rhs -= 2 * au.a[static_cast<std::size_t>(k - j)];
    if (au.a[K] < rhs) au.recurrence_gaps.push_back(k);
  }
  return au;
}

Integer count_regular_subtrees(Digit n, Digit m, long h) {
  Integer choose;
  mpz_bin_uiui(choose.get_mpz_t(), n, m);
  Integer vertices = 0, layer = 1;
  for (long i = 0; i < h; ++i) {
    vertices += layer;
    layer *= m;
  }
  return ipow(choose, vertices.get_ui());
}

std::vector<RegularSubtree> oracle_enumerate_regular_subtrees(Digit n, Digit m, long h, std::size_t limit) {
  if (m < 1 || m > n) throw std::invalid_argument("need 1 <= m <= N");
  Integer total = count_regular_subtrees(n, m, h);
  if (total > Integer(static_cast<unsigned long>(limit))) {
    throw Error(ErrorKind::kSizeLimit, total.get_str() + " regular subtrees exceed the limit " + std::to_string(limit));
  }
  // All m-subsets of {0..n-1}, ascending.
  std::vector<std::vector<Digit>> subsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<Digit>(__builtin_popcount(mask)) != m) continue;
    std::vector<Digit> s;
    for (Digit d = 0; d < n; ++d) {
      if (mask & (1u << d)) s.push_back(d);
    }
    subsets.push_back(std::move(s));
  }
  std::vector<RegularSubtree> out;
  std::vector<Vertex> queue{Vertex{}};
  RegularSubtree cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == queue.size()) {
      out.push_back(cur);
      return;
    }
    const Vertex v = queue[i];
    if (v.height() == h) {
      rec(i + 1);
      return;
    }
    for (const auto& s : subsets) {
      cur[v] = s;
      for (Digit d : s) queue.push_back(v.child(d));
      rec(i + 1);
      queue.resize(queue.size() - s.size());
    }
    cur.erase(v);
  };
  rec(0);
  return out;
}

std::vector<Vertex> subtree_leaves(const RegularSubtree& t, long h) {
  std::vector<Vertex> frontier{Vertex{}};
  for (long i = 0; i < h; ++i) {
    std::vector<Vertex> next;
    for (const auto& v : frontier) {
      for (Digit d : t.at(v)) next.push_back(v.child(d));
    }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace bpv
