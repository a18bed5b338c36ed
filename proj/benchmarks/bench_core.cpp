#include <benchmark/benchmark.h>

#include <random>

#include "bpv/verify.hpp"

using namespace bpv;

namespace {

Rational rat(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

GameConstants golden() {
  return make_constants(rat(1, 4), rat(3, 4), rat(9, 10), FieldReal::parse("(1+1*sqrt(5))/2"), rat(1),
                        CMode::kCertified);
}

GameConstants dense() {
  return make_constants(rat(1, 2), rat(1, 2), rat(1, 2), FieldReal::parse("(0+1*sqrt(2))/1"), rat(512),
                        CMode::kOverride, rat(1, 10));
}

// sqrt 2 with a tiny c: no points through level 3, so games run on the bare tree.
GameConstants sparse() {
  return make_constants(rat(1, 2), rat(1, 2), rat(1, 2), FieldReal::parse("(0+1*sqrt(2))/1"), rat(1),
                        CMode::kOverride, Rational(Integer(1), Integer(1) << 40));
}

}  // namespace

static void BM_FieldCompare(benchmark::State& state) {
  FieldReal phi = FieldReal::parse("(1+1*sqrt(5))/2");
  FieldReal x = phi * FieldReal(rat(832040)) - FieldReal(rat(1346269));
  FieldReal y = FieldReal(rat(1, 1000000));
  for (auto _ : state) benchmark::DoNotOptimize(field_cmp(field_abs(x), y));
}
BENCHMARK(BM_FieldCompare);

static void BM_BruteForceBadness(benchmark::State& state) {
  FieldReal phi = FieldReal::parse("(1+1*sqrt(5))/2");
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_badness(phi, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_BruteForceBadness)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_SmallFractionalParts(benchmark::State& state) {
  GameConstants k = golden();
  Integer top(Integer(1) << state.range(0));
  for (auto _ : state) {
    auto v = small_fractional_parts(k.theta, k.c, k.s, Integer(1), top);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_SmallFractionalParts)->Arg(40)->Arg(60)->Unit(benchmark::kMicrosecond);

static void BM_FindLine(benchmark::State& state) {
  GameConstants k = dense();
  std::mt19937_64 rng(3);
  std::vector<RatPoint> pts;
  for (int i = 0; i < 256; ++i) {
    Integer q(static_cast<long>(rng() % 1000000 + 2));
    Integer p = nearest_integer(k.theta * FieldReal(Rational(q)));
    Integer r(static_cast<long>(rng() % q.get_ui()));
    if (gcd(gcd(p, q), r) == 1) pts.push_back({p, q, r});
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_line(pts[i++ % pts.size()], k));
}
BENCHMARK(BM_FindLine);

static void BM_EnumerateDense(benchmark::State& state) {
  GameConstants k = dense();
  for (auto _ : state) {
    auto v = enumerate_window(k, 2, {rat(0), rat(state.range(0))});
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_EnumerateDense)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_GoldenFirstLevel(benchmark::State& state) {
  GameConstants k = golden();
  for (auto _ : state) {
    PointCatalog cat(k);
    benchmark::DoNotOptimize(cat.first_level().first);
  }
}
BENCHMARK(BM_GoldenFirstLevel)->Unit(benchmark::kMillisecond);

static void BM_HitPlanner(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution keep(0.8);
  std::set<Vertex> allowed;
  std::vector<Vertex> layer{Vertex{}};
  for (int h = 0; h < 4; ++h) {
    std::vector<Vertex> next;
    for (const auto& v : layer) {
      for (Digit d = 0; d < 6; ++d) {
        if (keep(rng)) allowed.insert(v.child(d));
        next.push_back(v.child(d));
      }
    }
    layer = std::move(next);
  }
  for (auto _ : state) {
    MaskTree tree(6, allowed);
    HitPlanner hp(tree);
    benchmark::DoNotOptimize(hp.hit(Vertex{}, 4, 3));
  }
}
BENCHMARK(BM_HitPlanner)->Unit(benchmark::kMicrosecond);

static void BM_SparseGame(benchmark::State& state) {
  GameConstants k = sparse();
  PointCatalog cat(k, 3);
  GeometricTree tree(cat);
  HitPlanner hp(tree);
  SubtreeSelector sel = extract_selector(hp, 3, 6);
  GameConfig cfg = make_game_config(k, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    AliceBpv alice(sel, k);
    BobRandom bob(seed++);
    benchmark::DoNotOptimize(play(k, cfg, alice, bob).final_interval);
  }
}
BENCHMARK(BM_SparseGame)->Unit(benchmark::kMillisecond);

static void BM_SmallQScan(benchmark::State& state) {
  GameConstants k = golden();
  for (auto _ : state) benchmark::DoNotOptimize(small_q_scan(k, rat(1, 3), state.range(0)).ok);
}
BENCHMARK(BM_SmallQScan)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
