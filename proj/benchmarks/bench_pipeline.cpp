#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sgc/covering.hpp"
#include "sgc/hodge.hpp"

namespace {

struct BenchGame {
  sgc::Game game;
  std::vector<std::vector<sgc::MixedStrategy>> mixed;
};

// 2-player 3x3 game with m random mixed strategies per player.
BenchGame make_game(int m) {
  std::mt19937 rng(static_cast<unsigned>(1000 + m));
  std::uniform_real_distribution<double> pay(-10.0, 10.0);
  std::vector<double> payoffs(9 * 2);
  for (double& v : payoffs) v = pay(rng);
  sgc::Game game({{"a", "b", "c"}, {"a", "b", "c"}}, std::move(payoffs));

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<sgc::MixedStrategy>> mixed(2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < m; ++k) {
      std::vector<double> w(3);
      double sum = 0.0;
      for (double& x : w) {
        x = u(rng) + 1e-3;
        sum += x;
      }
      for (double& x : w) x /= sum;
      mixed[static_cast<std::size_t>(i)].emplace_back(i, std::move(w));
    }
  return BenchGame{std::move(game), std::move(mixed)};
}

void BM_BuildComplex(benchmark::State& state) {
  const BenchGame bg = make_game(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto k = sgc::SituationComplex::build(bg.game, bg.mixed);
    benchmark::DoNotOptimize(k.facet_count());
  }
}
BENCHMARK(BM_BuildComplex)->Arg(4)->Arg(8)->Arg(12);

void BM_GlobalNerve(benchmark::State& state) {
  const BenchGame bg = make_game(static_cast<int>(state.range(0)));
  const auto k = sgc::SituationComplex::build(bg.game, bg.mixed);
  for (auto _ : state) {
    auto global = sgc::global_nerve(k, sgc::all_local_nerves(k));
    benchmark::DoNotOptimize(global.edges.size());
  }
}
BENCHMARK(BM_GlobalNerve)->Arg(4)->Arg(8)->Arg(12);

void BM_NashSimplices(benchmark::State& state) {
  const BenchGame bg = make_game(static_cast<int>(state.range(0)));
  const auto k = sgc::SituationComplex::build(bg.game, bg.mixed);
  for (auto _ : state) {
    auto nash = sgc::nash_simplices(k);
    benchmark::DoNotOptimize(nash.size());
  }
}
BENCHMARK(BM_NashSimplices)->Arg(4)->Arg(8)->Arg(12);

void BM_BuildCovering(benchmark::State& state) {
  const BenchGame bg = make_game(static_cast<int>(state.range(0)));
  const auto k = sgc::SituationComplex::build(bg.game, bg.mixed);
  for (auto _ : state) {
    auto covering = sgc::build_covering(k);
    benchmark::DoNotOptimize(covering.simplices.size());
  }
}
BENCHMARK(BM_BuildCovering)->Arg(4)->Arg(8);

void BM_Decompose(benchmark::State& state) {
  const BenchGame bg = make_game(static_cast<int>(state.range(0)));
  const auto k = sgc::SituationComplex::build(bg.game, bg.mixed);
  const auto global = sgc::global_nerve(k, sgc::all_local_nerves(k));
  const auto fc = sgc::FlowComplex::build(k, global);
  const auto w = sgc::game_flow(k, fc);
  for (auto _ : state) {
    auto d = sgc::decompose(fc, w);
    benchmark::DoNotOptimize(d.gradient_norm);
  }
}
BENCHMARK(BM_Decompose)->Arg(4)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
