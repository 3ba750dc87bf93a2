#include <benchmark/benchmark.h>

#include <random>

#include "infbern/bernoulli.hpp"
#include "infbern/isoperimetry.hpp"
#include "infbern/papprox.hpp"
#include "infbern/profile.hpp"
#include "infbern/solutions.hpp"

namespace {

using namespace infbern;

ConvexDomain unit_square() { return ConvexDomain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

void BM_BuildProfile(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto d = random_convex_polygon(rng, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_profile(d, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_BuildProfile)->Arg(256)->Arg(1024)->Arg(4096);

void BM_AnalyzeSquare(benchmark::State& state) {
  const auto prof = std::make_shared<const ParallelSetProfile>(build_profile(unit_square()));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(prof));
}
BENCHMARK(BM_AnalyzeSquare);

void BM_MLambda(benchmark::State& state) {
  const auto prof = build_profile(unit_square());
  for (auto _ : state) benchmark::DoNotOptimize(m_lambda(prof, 20.0));
}
BENCHMARK(BM_MLambda);

void BM_CeIdentity(benchmark::State& state) {
  const auto prof = build_profile(ConvexDomain::ball(2, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(ce_identity_check(prof, 3.0));
}
BENCHMARK(BM_CeIdentity);

void BM_DoubleInfimum(benchmark::State& state) {
  const auto ball = ConvexDomain::ball(2, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(double_infimum(ball, static_cast<double>(state.range(0)), 3.0));
  }
}
BENCHMARK(BM_DoubleInfimum)->Arg(10)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_InfinityPotential(benchmark::State& state) {
  const auto sq = unit_square();
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(infinity_potential(sq, 1.0 / 6.0, h));
}
BENCHMARK(BM_InfinityPotential)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_IsoperimetricBatch(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(batch_isoperimetric(1, 10));
}
BENCHMARK(BM_IsoperimetricBatch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
