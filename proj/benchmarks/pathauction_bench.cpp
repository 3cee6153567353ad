#include <benchmark/benchmark.h>

#include "pathauction/analysis.hpp"
#include "pathauction/fixtures.hpp"
#include "pathauction/generator.hpp"
#include "pathauction/mechanisms.hpp"
#include "pathauction/paths.hpp"

using namespace pathauction;

namespace {

// Edge budget comes from the benchmark argument; nodes scale with it.
// The path count is reported since it drives the cost more than size does.
Network sized(benchmark::State& state) {
  const auto edges = static_cast<int>(state.range(0));
  Network net = randomNetwork(7, edges / 3 + 3, edges);
  state.counters["paths"] = static_cast<double>(enumeratePaths(net).size());
  return net;
}

void BM_RankPaths(benchmark::State& state) {
  Network net = sized(state);
  for (auto _ : state) benchmark::DoNotOptimize(rankPaths(net, CostFunction::bids(), 8));
}
BENCHMARK(BM_RankPaths)->Arg(8)->Arg(14)->Arg(24);

void BM_EnumeratePaths(benchmark::State& state) {
  Network net = sized(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumeratePaths(net));
}
BENCHMARK(BM_EnumeratePaths)->Arg(8)->Arg(14)->Arg(24);

void BM_Vcg(benchmark::State& state) {
  Network net = sized(state);
  for (auto _ : state) benchmark::DoNotOptimize(vcgPath(net, net.bid()));
}
BENCHMARK(BM_Vcg)->Arg(8)->Arg(14)->Arg(24);

void BM_XMechanism(benchmark::State& state) {
  Network net = sized(state);
  for (auto _ : state) benchmark::DoNotOptimize(xMechanism(net, net.bid(), DistributionRule::reverseRank()));
}
BENCHMARK(BM_XMechanism)->Arg(8)->Arg(14)->Arg(24);

void BM_Example1X(benchmark::State& state) {
  Network net = fixtures::example1();
  for (auto _ : state) benchmark::DoNotOptimize(xMechanism(net, net.bid(), DistributionRule::equalSplit()));
}
BENCHMARK(BM_Example1X);

void BM_ProfileTable(benchmark::State& state) {
  MechanismConfig config;
  config.kind = MechanismKind::vcg;
  Game game = Game::path(fixtures::fig2(), config);
  BidGrid grid = BidGrid::standard(game, state.range(0));
  for (auto _ : state) {
    ProfileTable table(game, grid);
    benchmark::DoNotOptimize(table.ioa(StrategyMode::undominatedBestResponse));
  }
  state.counters["profiles"] = static_cast<double>(grid.profileCount());
}
BENCHMARK(BM_ProfileTable)->Arg(1)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
