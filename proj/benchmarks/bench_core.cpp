#include <benchmark/benchmark.h>

#include "ratchet/fokker_planck.hpp"
#include "ratchet/normal.hpp"
#include "ratchet/rng.hpp"
#include "ratchet/sde_sim.hpp"
#include "ratchet/stats.hpp"
#include "ratchet/wrapped.hpp"

using namespace ratchet;

namespace {

const FlashingSchedule kSched = FlashingSchedule::make(Rational(12, 5), Rational(12, 5));

ScaledWalkParams table_walk(int n) {
  return {RatchetParams::from_lambda(1, 4, 5.0, 0.2748), n, WalkVariant::kImproved};
}

LatticeDistribution spread_distribution(int n, int sites) {
  auto d = LatticeDistribution::point_mass(n, 0);
  auto s = walk_probs(table_walk(n));
  for (int k = 0; k < sites; ++k) d = step_free(d, s.p);
  return d;
}

void BM_NormalInvCdf(benchmark::State& state) {
  double p = 0.0001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(normal_inv_cdf(p));
    p += 0.0001;
    if (p >= 1.0) p = 0.0001;
  }
}
BENCHMARK(BM_NormalInvCdf);

void BM_PhiloxNormalPair(benchmark::State& state) {
  CounterStream s{42, 1, 0};
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.uniform_pair(i++));
  }
}
BENCHMARK(BM_PhiloxNormalPair);

void BM_RatchetStep(benchmark::State& state) {
  const int n = 100;
  auto d = spread_distribution(n, static_cast<int>(state.range(0)));
  auto s = walk_probs(table_walk(n));
  for (auto _ : state) {
    auto next = step_ratchet(d, s.p0, s.p1, n, 1, 4);
    benchmark::DoNotOptimize(next.probs.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.probs.size()));
}
BENCHMARK(BM_RatchetStep)->Arg(1000)->Arg(4000);

void BM_FlashingPeriod(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto d = propagate_flashing(LatticeDistribution::point_mass(n, 0), table_walk(n),
                                kSched, kSched.steps_per_period(n));
    benchmark::DoNotOptimize(d.probs.data());
  }
}
BENCHMARK(BM_FlashingPeriod)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_FpPeriod(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto params = RatchetParams::from_lambda(1, 4, 5.0, 0.2748);
  for (auto _ : state) {
    auto g = fp_propagate(FpGrid::point_start(n, 0), params, kSched, n,
                          kSched.steps_per_period(n));
    benchmark::DoNotOptimize(g.dist.probs.data());
  }
}
BENCHMARK(BM_FpPeriod)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_PeriodMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto w = table_walk(n);
  for (auto _ : state) {
    auto P = build_period_matrix(w, kSched);
    benchmark::DoNotOptimize(P.entries.data());
  }
}
BENCHMARK(BM_PeriodMatrix)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_EmPaths(benchmark::State& state) {
  EmConfig cfg;
  cfg.base = RatchetParams::from_lambda(1, 4, 5.0, 0.2748);
  cfg.sched = kSched;
  cfg.n = 100;
  cfg.total_steps = kSched.steps_per_period(100);
  cfg.paths = state.range(0);
  cfg.seed = 42;
  cfg.threads = 1;
  for (auto _ : state) {
    auto s = em_ensemble(0.0, cfg);
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetItemsProcessed(state.iterations() * cfg.paths * cfg.total_steps);
}
BENCHMARK(BM_EmPaths)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_AnalyticStationary(benchmark::State& state) {
  auto params = RatchetParams::from_gamma(1, 4, 1.875, 0.2748);
  for (auto _ : state) {
    auto st = analytic_stationary(params);
    benchmark::DoNotOptimize(st.skewness());
  }
}
BENCHMARK(BM_AnalyticStationary);

}  // namespace

BENCHMARK_MAIN();
