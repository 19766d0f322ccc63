#include <benchmark/benchmark.h>

#include "horseshoe/dsl.hpp"
#include "horseshoe/gallery.hpp"
#include "horseshoe/holder.hpp"
#include "horseshoe/mdim.hpp"
#include "horseshoe/separation.hpp"

using namespace horseshoe;

namespace {

const char* kPhiA =
    "family phi_a mode rational\n"
    "segments k = 1..inf : length (2/3)/3^(k-1)\n"
    "horseshoe where all : legs 3^k\n"
    "default : identity\n";

void BM_EvalExact(benchmark::State& state) {
  const IntervalMap map = phi_a(Real(1));
  const Real x = Real::ratio(880, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(map(x));
}
BENCHMARK(BM_EvalExact);

void BM_EvalFloat(benchmark::State& state) {
  const IntervalMap map = phi_beta(Real(2));
  const Real x = Real::ratio(700, 1000);
  for (auto _ : state) benchmark::DoNotOptimize(map(x));
}
BENCHMARK(BM_EvalFloat);

void BM_GreedySeparated(benchmark::State& state) {
  const IntervalMap map = phi_a(Real(1));
  const auto n = static_cast<std::size_t>(state.range(0));
  CountOptions options;
  options.workers = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sep_count_greedy({map, n}, Real::ratio(1, 16), Real::ratio(1, 128), options));
  }
}
BENCHMARK(BM_GreedySeparated)->Args({2, 1})->Args({4, 1})->Args({4, 4})->Unit(benchmark::kMillisecond);

void BM_Exhaustive(benchmark::State& state) {
  const IntervalMap map = IntervalMap::from_blocks("block3", {uniform_block(Interval(Real(0), Real(1)), LegCount(3))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sep_count_exhaustive({map, 3}, Real::ratio(1, 27), Real::ratio(1, 135)));
  }
}
BENCHMARK(BM_Exhaustive)->Unit(benchmark::kMillisecond);

void BM_MdimCurve(benchmark::State& state) {
  const IntervalMap map = phi_a(Real(1));
  CurveOptions options;
  options.K = 10;
  options.n_max = 8;
  options.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mdim_curve(map, options));
}
BENCHMARK(BM_MdimCurve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Predictor(benchmark::State& state) {
  const IntervalMap map = hazard_map();
  for (auto _ : state) benchmark::DoNotOptimize(predictor_misiu(map, 30));
}
BENCHMARK(BM_Predictor)->Unit(benchmark::kMicrosecond);

void BM_HolderVerdict(benchmark::State& state) {
  const IntervalMap map = phi_a(Real(1));
  for (auto _ : state) benchmark::DoNotOptimize(holder_verdict(map, Real::parse("0.55"), 12));
}
BENCHMARK(BM_HolderVerdict)->Unit(benchmark::kMillisecond);

void BM_ParseCompile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dsl::compile_text(kPhiA));
}
BENCHMARK(BM_ParseCompile)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
