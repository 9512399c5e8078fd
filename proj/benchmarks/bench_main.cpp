#include <benchmark/benchmark.h>

#include <random>

#include "tracebound/fractal.hpp"
#include "tracebound/measure.hpp"
#include "tracebound/operators.hpp"
#include "tracebound/trace_monoid.hpp"

namespace tb = tracebound;

namespace {

tb::Presentation c4() {
  return tb::Presentation({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
}

tb::IfsAction sierpinski() {
  return tb::parse_ifs(
      "generators: g0 g1 g2\ndim: 2\n"
      "map g0: 0.5 0 0 0.5 0 0\n"
      "map g1: 0.5 0 0 0.5 0.5 0\n"
      "map g2: 0.5 0 0 0.5 0.25 0.5\n");
}

void BM_NormalForm(benchmark::State& state) {
  const tb::Presentation p = c4();
  std::mt19937 rng(1);
  std::vector<tb::FreeWord> words(256);
  for (auto& w : words) {
    w.resize(static_cast<std::size_t>(state.range(0)));
    for (auto& a : w) {
      a = static_cast<tb::Letter>(rng() % 4);
    }
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.normal_form(words[i++ % words.size()]));
  }
}
BENCHMARK(BM_NormalForm)->Arg(8)->Arg(32)->Arg(128);

void BM_Sphere(benchmark::State& state) {
  const tb::Presentation p = c4();
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.sphere(static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Sphere)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

void BM_FiberTable(benchmark::State& state) {
  const tb::Presentation p = c4();
  for (auto _ : state) {
    tb::FiberTable table(p, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(table.counts(table.depth()).size());
  }
}
BENCHMARK(BM_FiberTable)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_RelationDefects(benchmark::State& state) {
  const tb::Presentation p = c4();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tb::relation_defects(p, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_RelationDefects)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_ContactMeasure(benchmark::State& state) {
  const tb::IfsAction a = sierpinski();
  const tb::GridSpec spec{tb::invariant_box(a), 128};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tb::contact_measure(a, a.center(), static_cast<std::size_t>(state.range(0)), spec));
  }
}
BENCHMARK(BM_ContactMeasure)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
