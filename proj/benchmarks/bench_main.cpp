#include <benchmark/benchmark.h>

#include "hyperlat/ballenum.hpp"
#include "hyperlat/paircorr.hpp"
#include "hyperlat/volumes.hpp"

using namespace hyperlat;

static void BM_BallCount(benchmark::State& state) {
  BasePoint i = BasePoint::parse("i");
  auto q = state.range(0);
  for (auto _ : state) {
    BallStats st = count_ball(BallSpec::make(i, q), 1);
    benchmark::DoNotOptimize(st.b_total);
  }
  state.SetItemsProcessed(state.iterations() *
                          count_ball(BallSpec::make(i, q), 1).b_total);
}
BENCHMARK(BM_BallCount)->Arg(100)->Arg(300)->Arg(1000);

static void BM_BallEnumerate(benchmark::State& state) {
  BasePoint i = BasePoint::parse("i");
  auto q = state.range(0);
  for (auto _ : state) {
    auto v = enumerate_ball(BallSpec::make(i, q), 1);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_BallEnumerate)->Arg(100)->Arg(300);

static void BM_AngleList(benchmark::State& state) {
  BasePoint i = BasePoint::parse("i");
  for (auto _ : state) {
    auto v = angle_list(BallSpec::make(i, state.range(0)), 1);
    benchmark::DoNotOptimize(v.size());
  }
}
BENCHMARK(BM_AngleList)->Arg(300)->Arg(1000);

static void BM_PairCount(benchmark::State& state) {
  BasePoint i = BasePoint::parse("i");
  auto samples = angle_list(BallSpec::make(i, state.range(0)), 1);
  std::vector<double> t;
  t.reserve(samples.size());
  for (const auto& s : samples) t.push_back(s.theta_norm);
  std::vector<double> windows;
  for (int j = 1; j <= 30; ++j) windows.push_back(j * 1e-6);
  for (auto _ : state) {
    auto c = count_pairs_closed(t, windows);
    benchmark::DoNotOptimize(c.back());
  }
  state.SetItemsProcessed(state.iterations() * t.size());
}
BENCHMARK(BM_PairCount)->Arg(300)->Arg(1000);

static void BM_VolClosed(benchmark::State& state) {
  BasePoint i = BasePoint::parse("i");
  RegionSpec spec = RegionSpec::make(i, normalize(2, 1, 1, 1), 0.8);
  for (auto _ : state) {
    VolumeEstimate v = vol_closed(spec);
    benchmark::DoNotOptimize(v.value);
  }
}
BENCHMARK(BM_VolClosed);

BENCHMARK_MAIN();
