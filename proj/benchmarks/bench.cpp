#include <benchmark/benchmark.h>

#include "kmw/dl.hpp"
#include "kmw/symmetrizer.hpp"
#include "kmw/toruscover.hpp"
#include "kmw/weyl.hpp"
#include "kmw/whittaker.hpp"

using namespace kmw;

static void BM_EnumerateAffine(benchmark::State& state) {
  WeylGroup w(cartan_from_label("A2(1)"));
  for (auto _ : state) benchmark::DoNotOptimize(w.enumerate(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateAffine)->Arg(6)->Arg(9);

static void BM_DLBraidG2(benchmark::State& state) {
  StarContext ctx(MetaplecticDatum::plain(finite_cartan("G2"), static_cast<int>(state.range(0))));
  DLOperator op(ctx, Flavor::Whittaker, true);
  Localized f(ctx.monomial(Coweight::of({1, 1})));
  for (auto _ : state) benchmark::DoNotOptimize(op.apply_word({0, 1, 0, 1, 0, 1}, f));
}
BENCHMARK(BM_DLBraidG2)->Arg(1)->Arg(3);

static void BM_CorrectionFactor(benchmark::State& state) {
  StarContext ctx(MetaplecticDatum::plain(cartan_from_label("A2(1)"), 1));
  auto method = static_cast<CorrectionMethod>(state.range(0));
  for (auto _ : state) {
    Symmetrizer s(ctx, false);
    benchmark::DoNotOptimize(s.correction_factor(method, -4 * s.depth_unit(), 24));
  }
}
BENCHMARK(BM_CorrectionFactor)
    ->Arg(static_cast<int>(CorrectionMethod::MacdonaldCt))
    ->Arg(static_cast<int>(CorrectionMethod::ExponentProduct))
    ->Arg(static_cast<int>(CorrectionMethod::ViswanathDivision));

static void BM_AffineWhittaker(benchmark::State& state) {
  WhittakerEvaluator ev(MetaplecticDatum::plain(cartan_from_label("A1(1)"), 2));
  WhittakerOptions opt;
  opt.depth = 3;
  opt.cap = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ev.hecke_route(Coweight::of({0, 0, 1}), opt));
}
BENCHMARK(BM_AffineWhittaker)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_TorusCover(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_torus_cover(finite_cartan("B2"), 13, 2, 1, 10));
}
BENCHMARK(BM_TorusCover)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
