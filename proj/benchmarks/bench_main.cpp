#include <benchmark/benchmark.h>

#include <vector>

#include "sbpp/detection.hpp"
#include "sbpp/harness.hpp"
#include "sbpp/random.hpp"

namespace {

static void BM_Pearson(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  sbpp::RandomStream rng(7);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = rng.uniform01();
    y[i] = rng.uniform01();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbpp::pearson(x, y));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Pearson)->Arg(29)->Arg(346)->Arg(4096);

static void BM_UsageDraw(benchmark::State& state) {
  sbpp::RandomStream rng(11);
  const sbpp::ConsumerProfile profile;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbpp::draw_usage(profile, rng));
  }
}
BENCHMARK(BM_UsageDraw);

// One Monte-Carlo trial of the standard 100-consumer region.
static void BM_TrialMonths(benchmark::State& state) {
  sbpp::ScenarioConfig base;
  const auto cfg = sbpp::standard_case(base, sbpp::AttackCase::kCaseIII, 25,
                                       static_cast<double>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbpp::run_trial(cfg, ++seed));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(cfg.total_periods()));
}
BENCHMARK(BM_TrialMonths)->Arg(1)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  sbpp::ScenarioConfig cfg;
  cfg.attackers = {{25, sbpp::Multiplicative{0.1}}};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sbpp::simulate(cfg, ++seed));
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
