// Serial against OpenMP timings of the two parallel kernels.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "eepc/channel.hpp"
#include "eepc/experiments.hpp"
#include "eepc/game.hpp"
#include "eepc/parallel.hpp"
#include "eepc/rng.hpp"
#include "eepc/social.hpp"

namespace {

using namespace eepc;

GameConfig instance(std::size_t n) {
  LinkModel link;
  link.protocol = CarProtocol{0.6, 1.0};
  return GameConfig(ChannelMatrix::symmetric(n, 2.5, 0.5, 1.0), link, default_solver(1000.0));
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_SocialGrid(benchmark::State& state) {
  const GameConfig cfg = instance(static_cast<std::size_t>(state.range(1)));
  const std::size_t grid = state.range(1) == 2 ? 200 : 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(social_optimum(cfg, grid, 1, nullptr, mode(state)).sum_payoff);
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}
BENCHMARK(BM_SocialGrid)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

void BM_FadingTrials(benchmark::State& state) {
  const GameConfig mean = instance(3);
  const std::size_t trials = 64;
  for (auto _ : state) {
    const auto ne = map_indexed<double>(
        trials,
        [&](std::size_t k) {
          GameConfig cfg = mean;
          cfg.channel = sample_rayleigh_channel(mean.channel, derive_seed(1, k));
          return sum_payoff(run_dynamics(cfg).final_profile, cfg);
        },
        mode(state));
    benchmark::DoNotOptimize(ne.data());
  }
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
}
BENCHMARK(BM_FadingTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
