#include "bpv/pointset.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace bpv {

namespace {

constexpr long kLadderSize = 96;

Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
  Integer g = gcd(a, b);
  return gcd(g, c);
}

// x^v compared against y, for the integer-exponent clearing used below.
Rational rpow(const Rational& x, unsigned long e) { return x.pow(static_cast<long>(e)); }

}  // namespace

Rational GameConstants::H(long n) const {
  if (n >= 1 && n <= static_cast<long>(h_ladder.size())) return h_ladder[static_cast<std::size_t>(n - 1)];
  return Rational(4) * c * R.pow(n) / l;
}

long GameConstants::level_of(const Rational& x) const {
  if (x < H(1)) return 0;
  long n = 1;
  while (H(n + 1) <= x) ++n;
  return n;
}

bool satisfies_third_branch(const Rational& c, const Rational& R, const Rational& t) {
  PowerTerm lhs[] = {{c, Rational(1)}};
  PowerTerm rhs[] = {{Rational(Integer(1), Integer(8)), Rational(1)},
                     {R, -(Rational(2) + Rational(3) / (t * t))}};
  return power_product_cmp(lhs, rhs) <= 0;
}

GameConstants make_constants(const Rational& s, const Rational& t, const Rational& beta,
                             const FieldReal& theta, const Rational& l, CMode c_mode,
                             const std::optional<Rational>& c_override, const Rational& a0_left) {
  if (s.is_zero() || t.is_zero()) {
    throw Error(ErrorKind::kDegenerateExponent,
                "s or t is zero; Bad(0,1) = R x Bad, so use the classical one-dimensional game");
  }
  if (s.sign() < 0 || t.sign() < 0 || s + t != Rational(1)) {
    throw Error(ErrorKind::kInvalidConfig, "need s, t > 0 with s + t = 1");
  }
  if (beta.sign() <= 0 || beta >= Rational(1)) {
    throw Error(ErrorKind::kInvalidBeta, "beta = " + beta.to_string() + " is not in (0,1)");
  }
  if (l.sign() <= 0) throw Error(ErrorKind::kInvalidConfig, "l must be positive");

  GameConstants k;
  k.theta = theta;
  k.s = s;
  k.t = t;
  k.v = s.den().get_ui();
  k.u = s.num().get_ui();
  k.w = (t * Rational(Integer(k.v))).num().get_ui();
  k.beta = beta;
  k.l = l;
  k.a0 = {a0_left, a0_left + l};
  k.R = Rational(16) * beta.pow(-4);
  k.bracketR = k.R.floor();
  k.lambda = Rational(3) / (t * t);
  k.mu = Rational(1) / (t * (Rational(1) + t));
  k.c_mode = c_mode;
  k.floor_branch = badness_floor(cf_expand(theta)).certified_floor;
  k.packing_branch = l / (Rational(4) * k.R);

  if (c_mode == CMode::kCertified) {
    Rational c(1);
    unsigned long e = 0;
    while (!(c <= k.floor_branch && c <= k.packing_branch && satisfies_third_branch(c, k.R, t))) {
      c /= Rational(2);
      ++e;
    }
    k.c = c;
    k.dyadic_exponent = e;
  } else {
    if (!c_override) throw Error(ErrorKind::kInvalidConfig, "override mode needs a value for c");
    if (c_override->sign() <= 0) throw Error(ErrorKind::kInvalidConfig, "c must be positive");
    k.c = min(*c_override, k.packing_branch);
  }

  Rational h = Rational(4) * k.c * k.R / l;
  for (long n = 1; n <= kLadderSize; ++n) {
    k.h_ladder.push_back(h);
    h *= k.R;
  }
  return k;
}

std::string RatPoint::to_string() const {
  return "(" + p.get_str() + "/" + q.get_str() + ", " + r.get_str() + "/" + q.get_str() + ")";
}

bool in_C(const RatPoint& P, const GameConstants& k) {
  FieldReal e = k.theta * FieldReal(Rational(P.q)) - FieldReal(Rational(P.p));
  return below_power_threshold(e, k.c, k.s, P.q);
}

bool line_valid(const RatPoint& P, const Line& L, const GameConstants& k) {
  if (sgn(L.B) <= 0) return false;
  if (gcd3(L.A, L.B, L.C) != 1) return false;
  if (L.A * P.p - L.B * P.r + L.C * P.q != 0) return false;
  Integer absA = abs(L.A);
  if (ipow(absA, k.v) > ipow(P.q, k.u)) return false;
  if (ipow(L.B, k.v) > ipow(P.q, k.w)) return false;
  return true;
}

namespace {

// Signed residue of x modulo m nearest to zero; +m/2 on a tie.
Integer nearest_residue(const Integer& x, const Integer& m) {
  Integer a = x % m;
  if (sgn(a) < 0) a += m;
  if (2 * a > m) a -= m;
  return a;
}

Line complete_line(const RatPoint& P, const Integer& A, const Integer& B) {
  Integer num = B * P.r - A * P.p;
  Line L{A, B, num / P.q};
  return L;
}

}  // namespace

Line find_line(const RatPoint& P, const GameConstants& k) {
  const Integer& q = P.q;
  Integer g = gcd(P.p, q);
  Integer qp = q / g;
  Integer pp = P.p / g;
  Integer h = 0;
  if (qp > 1) {
    Integer inv;
    Integer pm = pp % qp;
    if (sgn(pm) < 0) pm += qp;
    mpz_invert(inv.get_mpz_t(), pm.get_mpz_t(), qp.get_mpz_t());
    h = (P.r * inv) % qp;
    if (sgn(h) < 0) h += qp;
  }
  Integer qu = ipow(q, k.u);
  Integer qw = ipow(q, k.w);

  // Convergent denominators of h/qp, in increasing order.
  std::vector<Integer> cand;
  {
    Integer a = h, b = qp;
    Integer d2 = 1, d1 = 0;  // q_{-2} = 1, q_{-1} = 0
    cand.push_back(1);
    while (sgn(b) != 0) {
      Integer t = floor_div(a, b);
      Integer d = t * d1 + d2;
      d2 = d1;
      d1 = d;
      if (sgn(d) > 0 && d > cand.back()) cand.push_back(d);
      Integer rem = a - t * b;
      a = b;
      b = rem;
    }
  }
  for (const Integer& y : cand) {
    Integer A = qp > 1 ? nearest_residue(y * h, qp) : Integer(0);
    if (ipow(abs(A), k.v) > qu) continue;
    Integer B = y * g;
    if (ipow(B, k.v) > qw) break;
    return complete_line(P, A, B);
  }
  if (q <= 10000) {
    if (auto L = find_line_exhaustive(P, k)) return *L;
  }
  throw Error(ErrorKind::kNoLineFound,
              "no line for P = " + P.to_string() + "; lattice basis (" + qp.get_str() + ", 0), (" +
                  h.get_str() + ", " + g.get_str() + ")");
}

std::optional<Line> find_line_exhaustive(const RatPoint& P, const GameConstants& k) {
  Integer qu = ipow(P.q, k.u);
  Integer qw = ipow(P.q, k.w);
  Integer amax = 0;
  while (ipow(amax + 1, k.v) <= qu) ++amax;
  for (Integer B = 1; ipow(B, k.v) <= qw; ++B) {
    for (Integer a = 0; a <= amax; ++a) {
      for (int sign : {1, -1}) {
        if (sign < 0 && a == 0) continue;
        Integer A = sign * a;
        if ((A * P.p - B * P.r) % P.q == 0) return complete_line(P, A, B);
      }
    }
  }
  return std::nullopt;
}

std::vector<PowerTerm> class_threshold(const GameConstants& k, long n, long j) {
  Rational expo = Rational(0);
  if (j >= 1) expo = -(k.lambda + Rational(j - 1) * k.mu);
  return {{k.H(n + 1), k.t / (Rational(1) + k.t)}, {k.R, expo}};
}

ClassifiedPoint classify(const RatPoint& P, const Line& L, const GameConstants& k) {
  Rational qB(Integer(P.q * L.B));
  long n = k.level_of(qB);
  if (n == 0) {
    throw Error(ErrorKind::kLevelUnderflow, "q*B = " + qB.to_string() + " is below H_1 for P = " + P.to_string());
  }
  PowerTerm b[] = {{Rational(L.B), Rational(1)}};
  auto top = class_threshold(k, n, 0);
  if (power_product_cmp(b, top) >= 0) {
    throw std::logic_error("B exceeds the class-1 ceiling for P = " + P.to_string());
  }
  long cls = 0;
  for (long j = 1; j <= n + 1; ++j) {
    if (power_product_cmp(b, class_threshold(k, n, j)) >= 0) {
      cls = j;
      break;
    }
  }
  if (cls == 0 || cls > n) throw std::logic_error("no class for P = " + P.to_string());
  return {P, L, n, cls};
}

bool height_bound_holds(const ClassifiedPoint& cp, const GameConstants& k) {
  Rational lhs(ipow(cp.point.q, k.v + k.w));
  return lhs >= rpow(k.H(cp.level), k.v);
}

namespace {

// dist^v * q^(v+w) < c^v.
bool within_radius(const Rational& dist, const Integer& q, const GameConstants& k) {
  if (dist.is_zero()) return true;
  return rpow(dist, k.v) * Rational(ipow(q, k.v + k.w)) < rpow(k.c, k.v);
}

}  // namespace

bool delta_contains(const RatPoint& P, const Rational& y, const GameConstants& k) {
  return within_radius((y - P.y()).abs(), P.q, k);
}

bool delta_meets(const RatPoint& P, const IntervalQ& I, const GameConstants& k) {
  Rational x = P.y();
  if (I.contains(x)) return true;
  Rational d = x < I.left ? I.left - x : x - I.right;
  return within_radius(d, P.q, k);
}

bool delta_inside(const RatPoint& P, const IntervalQ& I, const GameConstants& k) {
  Rational x = P.y();
  if (!I.contains(x)) return false;
  // Radius r0 = c q^-(1+t); need r0 <= x - left and r0 <= right - x.
  auto fits = [&](const Rational& gap) {
    return rpow(k.c, k.v) <= rpow(gap, k.v) * Rational(ipow(P.q, k.v + k.w));
  };
  return fits(x - I.left) && fits(I.right - x);
}

std::pair<Integer, Integer> r_range(const Integer& q, const IntervalQ& region, const GameConstants& k) {
  // c / q^(1+t) <= c / q, so the inflated window is a superset.
  Rational lo = Rational(q) * region.left - k.c;
  Rational hi = Rational(q) * region.right + k.c;
  return {lo.ceil(), hi.floor()};
}

std::vector<ClassifiedPoint> enumerate_window(const GameConstants& k, long n_max,
                                              const IntervalQ& region, std::uint64_t r_budget) {
  PointCatalog cat(k);
  return cat.meeting(region, 1, n_max, r_budget);
}

NumeratorWindow::NumeratorWindow(const IntervalQ& region, const GameConstants& k) {
  // q left - c = (q ln cd - cn ld) / (ld cd), and likewise on the right.
  const Integer& cn = k.c.num();
  const Integer& cd = k.c.den();
  lo_a_ = region.left.num() * cd;
  lo_b_ = cn * region.left.den();
  lo_d_ = region.left.den() * cd;
  hi_a_ = region.right.num() * cd;
  hi_b_ = cn * region.right.den();
  hi_d_ = region.right.den() * cd;
}

std::pair<Integer, Integer> NumeratorWindow::operator()(const Integer& q) const {
  Integer lo = q * lo_a_ - lo_b_;
  Integer hi = q * hi_a_ + hi_b_;
  mpz_cdiv_q(lo.get_mpz_t(), lo.get_mpz_t(), lo_d_.get_mpz_t());
  mpz_fdiv_q(hi.get_mpz_t(), hi.get_mpz_t(), hi_d_.get_mpz_t());
  return {lo, hi};
}

PointCatalog::PointCatalog(const GameConstants& k, long max_level) : k_(k), max_level_(max_level) {}

void PointCatalog::require_level(long n) const {
  if (max_level_ > 0 && n > max_level_) {
    throw Error(ErrorKind::kInsufficientEnumeration,
                "level " + std::to_string(n) + " is beyond the enumerated horizon " + std::to_string(max_level_));
  }
}

const std::vector<SmallPart>& PointCatalog::denominators(long n) {
  require_level(n);
  if (n > covered_level_) {
    Integer lo = 1;
    if (covered_level_ > 0) lo = k_.H(covered_level_ + 1).ceil();
    Integer hi = k_.H(n + 1).ceil() - 1;
    if (hi >= lo) {
      auto more = small_fractional_parts(k_.theta, k_.c, k_.s, lo, hi);
      for (auto& sp : more) {
        if (dens_.empty() || sp.q > dens_.back().q) dens_.push_back(std::move(sp));
      }
    }
    covered_level_ = n;
    for (std::size_t i = infos_.size(); i < dens_.size(); ++i) {
      const SmallPart& sp = dens_[i];
      DenInfo in;
      in.min_level = min_level(sp.q);
      in.g = gcd(sp.p, sp.q);
      mpz_root(in.a.get_mpz_t(), Integer(ipow(sp.q, k_.u)).get_mpz_t(), k_.v);
      mpz_root(in.bt.get_mpz_t(), Integer(ipow(sp.q, k_.w)).get_mpz_t(), k_.v);
      const Rational qvw(ipow(sp.q, k_.v + k_.w));
      in.top_level = in.min_level;
      while (rpow(k_.H(in.top_level + 1), k_.v) <= qvw) ++in.top_level;
      const Rational qr(sp.q);
      for (long m = std::max(in.min_level, 1L); m <= in.top_level + 1; ++m) {
        in.band.push_back((k_.H(m) / qr).ceil());
      }
      if (in.min_level == 0) in.band.insert(in.band.begin(), Integer(1));
      infos_.push_back(std::move(in));
    }
  }
  return dens_;
}

const std::vector<DenInfo>& PointCatalog::den_info(long n) {
  denominators(n);
  return infos_;
}

long PointCatalog::min_level(const Integer& q) const { return k_.level_of(Rational(q)); }

const ClassifiedPoint& PointCatalog::point(const SmallPart& sp, const Integer& r) {
  auto key = std::make_pair(sp.q, r);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  RatPoint P{sp.p, sp.q, r};
  ClassifiedPoint cp = classify(P, find_line(P, k_), k_);
  return cache_.emplace(std::move(key), std::move(cp)).first->second;
}

namespace {

using i128 = __int128;

// Smallest x >= 0 with (a x) mod m in [lo, hi], where 1 <= lo <= hi < m and
// 0 <= a < m; -1 if there is none. Euclid-style: when no multiple of a lands
// in [lo, hi] directly, the number of wraps y solves a smaller instance
// modulo a.
i128 first_hit0(i128 a, i128 m, i128 lo, i128 hi);

i128 first_hit(i128 a, i128 b, i128 m, i128 lo, i128 hi) {
  if (lo <= b && b <= hi) return 0;
  if (a == 0) return -1;
  i128 l2 = ((lo - b) % m + m) % m;
  i128 h2 = ((hi - b) % m + m) % m;
  return first_hit0(a, m, l2, h2);
}

i128 first_hit0(i128 a, i128 m, i128 lo, i128 hi) {
  if (a == 0) return -1;
  if (2 * a > m) {
    // Negate: (a x) mod m in [lo, hi] iff ((m - a) x) mod m in [m - hi, m - lo],
    // as 0 lies outside both windows. Keeps a <= m/2 so the moduli halve.
    i128 l2 = m - hi;
    hi = m - lo;
    lo = l2;
    a = m - a;
  }
  i128 x0 = (lo + a - 1) / a;
  if (a * x0 <= hi) return x0;
  // Need y >= 1 wraps with a multiple of a in [lo + m y, hi + m y], i.e.
  // (-(lo + m y)) mod a <= hi - lo.
  i128 ap = ((-m) % a + a) % a;
  i128 bp = ((-lo) % a + a) % a;
  i128 y = first_hit(ap, bp, a, 0, hi - lo);
  if (y < 0) return -1;
  return (lo + m * y + a - 1) / a;
}

}  // namespace

std::optional<std::int64_t> first_residue_hit(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t lo,
                                              std::int64_t hi, std::int64_t x_max) {
  if (m <= 0 || a < 0 || a >= m || b < 0 || b >= m || lo < 0 || hi < lo || hi >= m) {
    throw std::invalid_argument("first_residue_hit: arguments out of range");
  }
  i128 x = first_hit(a, b, m, lo, hi);
  if (x < 0 || x > x_max) return std::nullopt;
  return static_cast<std::int64_t>(x);
}

namespace {

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("value does not fit 64 bits");
  return z.get_si();
}

}  // namespace

std::vector<ClassifiedPoint> PointCatalog::meeting(const IntervalQ& region, long n_lo, long n_hi,
                                                   std::uint64_t r_budget, ScanMode mode) {
  std::vector<ClassifiedPoint> out;
  if (n_hi < n_lo || n_hi < 1) return out;
  const auto& dens = denominators(n_hi);
  const auto& infos = den_info(n_hi);
  const Integer bound = k_.H(n_hi + 1).ceil();
  const Integer line_cap = Integer(1) << 62;
  const NumeratorWindow window(region, k_);
  const long n_first = std::max(n_lo, 1L);

  struct Plan {
    const SmallPart* sp;
    Integer rlo, rhi;
    bool lines;
    Integer blo, bhi, g, a;
  };
  std::vector<Plan> plans;
  Integer work = 0;
  for (std::size_t i = 0; i < dens.size(); ++i) {
    const SmallPart& sp = dens[i];
    const DenInfo& in = infos[i];
    if (sp.q >= bound) break;
    if (in.min_level > n_hi || in.top_level < n_first) continue;
    auto [lo, hi] = window(sp.q);
    if (hi < lo) continue;
    Plan pl{&sp, lo, hi, false, 0, 0, in.g, in.a};
    Integer cnt = hi - lo + 1;
    Integer qp = sp.q / pl.g;
    pl.blo = std::max(Integer(1), in.band_start(std::max(n_first, in.min_level)));
    pl.bhi = std::min(in.bt, Integer(in.band_start(std::min(n_hi, in.top_level) + 1) - 1));
    Integer n_b = 0;
    if (pl.bhi >= pl.blo) n_b = floor_div(pl.bhi, pl.g) - ceil_div(pl.blo, pl.g) + 1;
    if (sgn(n_b) <= 0) continue;  // no admissible B: no point of these levels
    bool can_lines = mode != ScanMode::kNumerators && qp < line_cap && 2 * pl.a + 1 < qp && cnt < line_cap;
    // Costs are counted in candidate classifications; a residue solve is
    // about a sixteenth of one. Expected hits per B are cnt (2a+1) / qp.
    Integer line_cost = n_b / 16 + 1 + (n_b * cnt * (2 * pl.a + 1)) / qp;
    if (can_lines && (mode == ScanMode::kLines || line_cost < cnt)) {
      pl.lines = true;
      work += line_cost;
    } else {
      if (mode == ScanMode::kLines && !can_lines && cnt > 64) {
        throw Error(ErrorKind::kWindowTooLarge, "line scan not applicable for q = " + sp.q.get_str());
      }
      work += cnt;
    }
    plans.push_back(std::move(pl));
  }
  if (work > Integer(static_cast<unsigned long>(r_budget))) {
    throw Error(ErrorKind::kWindowTooLarge, "region " + region.to_string() + " needs about " + work.get_str() +
                                                " steps up to level " + std::to_string(n_hi));
  }

  auto consider = [&](const Plan& pl, const Integer& r) {
    if (pl.g != 1 && gcd(pl.g, r) != 1) return;
    RatPoint P{pl.sp->p, pl.sp->q, r};
    if (!delta_meets(P, region, k_)) return;
    const ClassifiedPoint& cp = point(*pl.sp, r);
    if (cp.level >= n_lo && cp.level <= n_hi) out.push_back(cp);
  };

  for (const Plan& pl : plans) {
    if (!pl.lines) {
      for (Integer r = pl.rlo; r <= pl.rhi; ++r) consider(pl, r);
      continue;
    }
    // A p' = y r (mod q'), y = B/g, so A = y u r with u = p'^-1 mod q'.
    const Integer qpz = pl.sp->q / pl.g;
    Integer pp = pl.sp->p / pl.g;
    pp %= qpz;
    if (sgn(pp) < 0) pp += qpz;
    Integer u;
    mpz_invert(u.get_mpz_t(), pp.get_mpz_t(), qpz.get_mpz_t());
    const std::int64_t m = to_i64(qpz);
    const std::int64_t a = to_i64(pl.a);
    const std::int64_t x_max = to_i64(Integer(pl.rhi - pl.rlo));
    Integer rlo_mod = pl.rlo % qpz;
    if (sgn(rlo_mod) < 0) rlo_mod += qpz;
    // alpha = y u and b = alpha rlo + a (mod m) both advance by a fixed step with y.
    const std::int64_t y0 = to_i64(ceil_div(pl.blo, pl.g));
    const std::int64_t y1 = to_i64(floor_div(pl.bhi, pl.g));
    const std::int64_t u64 = to_i64(u);
    const std::int64_t b_step = to_i64(Integer(u * rlo_mod % qpz));
    std::int64_t alpha = static_cast<std::int64_t>(static_cast<i128>(y0 % m) * u64 % m);
    std::int64_t b = to_i64(Integer((Integer(alpha) * rlo_mod + pl.a) % qpz));
    std::vector<std::int64_t> xs;
    for (std::int64_t y = y0; y <= y1; ++y) {
      // Signed residue of alpha r in [-a, a]  <=>  (alpha x + b) mod m in [0, 2a].
      std::int64_t start = 0;
      while (start <= x_max) {
        std::int64_t bs = static_cast<std::int64_t>((static_cast<i128>(b) + static_cast<i128>(alpha) * start) % m);
        auto x = first_residue_hit(alpha, bs, m, 0, 2 * a, x_max - start);
        if (!x) break;
        xs.push_back(start + *x);
        start += *x + 1;
      }
      alpha = static_cast<std::int64_t>((static_cast<i128>(alpha) + u64) % m);
      b = static_cast<std::int64_t>((static_cast<i128>(b) + b_step) % m);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::int64_t x : xs) consider(pl, pl.rlo + Integer(static_cast<long>(x)));
  }
  return out;
}

std::pair<long, ClassifiedPoint> PointCatalog::first_level() {
  long cap = max_level_ > 0 ? max_level_ : 200;
  for (long n = 1; n <= cap; ++n) {
    const auto& dens = denominators(n);
    for (const auto& sp : dens) {
      if (min_level(sp.q) > n) break;
      // The line depends on r only modulo q, so one residue class per q.
      Integer base = sp.q * k_.a0.left.floor();
      for (Integer j = 0; j < sp.q; ++j) {
        Integer r = base + j;
        if (gcd3(sp.p, sp.q, r) != 1) continue;
        const ClassifiedPoint& cp = point(sp, r);
        if (cp.level == n) return {n, cp};
        if (j > 64) break;
      }
    }
  }
  throw Error(ErrorKind::kInsufficientEnumeration, "no point found up to level " + std::to_string(cap));
}

std::string to_record(const ClassifiedPoint& cp) {
  std::ostringstream os;
  os << cp.point.p.get_str() << ' ' << cp.point.q.get_str() << ' ' << cp.point.r.get_str() << ' '
     << cp.line.A.get_str() << ' ' << cp.line.B.get_str() << ' ' << cp.line.C.get_str() << ' ' << cp.level << ' '
     << cp.class_k;
  return os.str();
}

ClassifiedPoint from_record(const std::string& line) {
  std::istringstream is(line);
  std::string f[8];
  for (auto& s : f) {
    if (!(is >> s)) throw Error(ErrorKind::kParse, "short point record: '" + line + "'");
  }
  std::string extra;
  if (is >> extra) throw Error(ErrorKind::kParse, "trailing data in point record: '" + line + "'");
  ClassifiedPoint cp;
  cp.point = {parse_integer(f[0]), parse_integer(f[1]), parse_integer(f[2])};
  cp.line = {parse_integer(f[3]), parse_integer(f[4]), parse_integer(f[5])};
  cp.level = parse_integer(f[6]).get_si();
  cp.class_k = parse_integer(f[7]).get_si();
  if (sgn(cp.point.q) <= 0) throw Error(ErrorKind::kParse, "q must be positive: '" + line + "'");
  return cp;
}

void write_records(std::ostream& out, const std::vector<ClassifiedPoint>& pts) {
  for (const auto& cp : pts) out << to_record(cp) << '\n';
}

std::vector<ClassifiedPoint> read_records(std::istream& in) {
  std::vector<ClassifiedPoint> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(from_record(line));
  }
  return out;
}

}  // namespace bpv
