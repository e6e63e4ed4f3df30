#include <benchmark/benchmark.h>

#include "bbfill/harness.hpp"
#include "bbfill/subfill.hpp"

namespace {

void BM_FillRandomLoop(benchmark::State& state) {
  const bbfill::BlockedProduct X("[F2],[F2],[F2]");
  const bbfill::Loop loop = bbfill::gen_random(X, static_cast<std::size_t>(state.range(0)), 7);
  const bbfill::FillOptions options{.verify = false};
  std::size_t area = 0;
  for (auto _ : state) {
    bbfill::LoopFill fill = bbfill::fill_loop(loop, options);
    area = fill.report.area;
    benchmark::DoNotOptimize(fill.trace.moves.data());
  }
  state.counters["n"] = static_cast<double>(loop.length());
  state.counters["area"] = static_cast<double>(area);
}
BENCHMARK(BM_FillRandomLoop)->RangeMultiplier(2)->Range(12, 384)->Unit(benchmark::kMillisecond);

void BM_FillHexagon(benchmark::State& state) {
  const bbfill::BlockedProduct X("[F2],[F2],[F2]");
  const bbfill::Loop loop = bbfill::gen_hexagon(X, static_cast<int>(state.range(0)));
  const bbfill::FillOptions options{.verify = false};
  for (auto _ : state) {
    bbfill::LoopFill fill = bbfill::fill_loop(loop, options);
    benchmark::DoNotOptimize(fill.trace.moves.data());
  }
  state.counters["n"] = static_cast<double>(loop.length());
}
BENCHMARK(BM_FillHexagon)->RangeMultiplier(2)->Range(1, 64)->Unit(benchmark::kMillisecond);

void BM_TwoBlockHexagon(benchmark::State& state) {
  const bbfill::BlockedProduct X("[F2],[F2],[F2]");
  const bbfill::Loop loop = bbfill::gen_hexagon(X, static_cast<int>(state.range(0)));
  const bbfill::ConfinedLoop confined{loop, X.canonical_line(X.identity(), 2)};
  for (auto _ : state) {
    bbfill::Trace trace = bbfill::fill_two_block(confined);
    benchmark::DoNotOptimize(trace.moves.data());
  }
  state.counters["n"] = static_cast<double>(loop.length());
}
BENCHMARK(BM_TwoBlockHexagon)->RangeMultiplier(2)->Range(1, 64)->Unit(benchmark::kMillisecond);

void BM_VerifyTrace(benchmark::State& state) {
  const bbfill::BlockedProduct X("[F2],[F2],[F2]");
  const bbfill::Loop loop = bbfill::gen_random(X, static_cast<std::size_t>(state.range(0)), 11);
  const bbfill::LoopFill fill = bbfill::fill_loop(loop, {.verify = false});
  for (auto _ : state) benchmark::DoNotOptimize(bbfill::verify(loop, fill.trace).verified);
  state.counters["moves"] = static_cast<double>(fill.trace.size());
}
BENCHMARK(BM_VerifyTrace)->RangeMultiplier(4)->Range(24, 384)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
