#include <benchmark/benchmark.h>

#include "clawdeg/clawdeg.hpp"

using namespace clawdeg;

static void BM_FeasibilityFreq(benchmark::State& state) {
  const auto f = static_cast<std::uint32_t>(state.range(0));
  const PropertySpec spec = claw_spec(f, f, 2 * f);
  for (auto _ : state) {
    DegreeQuery q;
    q.spec = spec;
    q.epsilon = make_rational(1, 10);
    benchmark::DoNotOptimize(min_approx_degree(q));
  }
}
BENCHMARK(BM_FeasibilityFreq)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FeasibilityRaw(benchmark::State& state) {
  const auto g = static_cast<std::uint32_t>(state.range(0));
  const PropertySpec spec = claw_spec(1, g, g + 1);
  for (auto _ : state) {
    DegreeQuery q;
    q.spec = spec;
    q.epsilon = make_rational(1, 10);
    q.space = Space::RawXY;
    benchmark::DoNotOptimize(min_approx_degree(q));
  }
}
BENCHMARK(BM_FeasibilityRaw)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_DecomposeMon(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<ExponentRow> rows(n, ExponentRow{1, 1});
  const ExponentMatrix omega(rows);
  const VectorLayout layout = VectorLayout::raw_rows(1);
  for (auto _ : state) {
    // The decomposition itself is cached; re-expansion is the measured work.
    benchmark::DoNotOptimize(expand(decompose_mon(omega), layout));
  }
}
BENCHMARK(BM_DecomposeMon)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Symmetrize(benchmark::State& state) {
  const auto f = static_cast<std::uint32_t>(state.range(0));
  Poly p(1);
  for (std::uint32_t i = 1; i <= 3 && i <= f; ++i) {
    p *= Poly(VarId::raw(1, i, i)) + Poly(VarId::raw(1, i, 1));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetrize_poly(p, {f}));
  }
}
BENCHMARK(BM_Symmetrize)->Arg(3)->Arg(6)->Arg(12);

static void BM_LpSolve(benchmark::State& state) {
  const FeasibilitySystem sys =
      build_feasibility_lp(claw_spec(2, 2, 4), make_rational(1, 10), static_cast<unsigned>(state.range(0)),
                           Space::FreqZW);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_feasibility(sys.lp));
  }
}
BENCHMARK(BM_LpSolve)->DenseRange(2, 4);
BENCHMARK_MAIN();
