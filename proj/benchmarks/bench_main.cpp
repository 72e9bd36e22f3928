#include <benchmark/benchmark.h>

#include <random>

#include "cubicshape/asymptotics.hpp"
#include "cubicshape/counting.hpp"

using namespace cubicshape;

namespace {

const QuadForm kShapes[] = {make_quad(1, 1, 1), make_quad(2, 1, 3), make_quad(1, 3, 1), make_quad(0, 1, 0)};

void count_shape(benchmark::State& state, Engine engine, CountFilter filter) {
  const QuadForm q = kShapes[state.range(0)];
  CountOptions o;
  o.engine = engine;
  o.filter = filter;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(count_orbits(q, state.range(1), o));
  state.SetLabel(to_string(q));
}

void BM_CountFast(benchmark::State& state) { count_shape(state, Engine::fast, CountFilter::irreducible); }
void BM_CountNaive(benchmark::State& state) { count_shape(state, Engine::naive, CountFilter::irreducible); }
void BM_CountMaximal(benchmark::State& state) { count_shape(state, Engine::fast, CountFilter::maximal); }

BENCHMARK(BM_CountFast)->ArgsProduct({{0, 1, 2, 3}, {100000, 10000000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountNaive)->ArgsProduct({{0, 1, 2, 3}, {100000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountMaximal)->ArgsProduct({{0, 2}, {10000000}})->Unit(benchmark::kMillisecond);

void BM_HessianCovariance(benchmark::State& state) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> coef(-1000, 1000);
  const Mat2 g{2, 1, 1, 1};
  for (auto _ : state) {
    const CubicForm f{coef(rng), coef(rng), coef(rng), coef(rng)};
    benchmark::DoNotOptimize(hessian(act(g, f)) == act(g, hessian(f)));
  }
}
BENCHMARK(BM_HessianCovariance);

void BM_IsMaximal(benchmark::State& state) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<i64> coef(-10000, 10000);
  for (auto _ : state) {
    const CubicForm f{coef(rng), coef(rng), coef(rng), coef(rng)};
    if (disc(f) != 0) benchmark::DoNotOptimize(is_maximal(f));
  }
}
BENCHMARK(BM_IsMaximal);

void BM_PureFieldCounts(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pure_field_counts(state.range(0)));
}
BENCHMARK(BM_PureFieldCounts)->Arg(100000000)->Arg(10000000000LL)->Unit(benchmark::kMillisecond);

void BM_FieldCoefficient(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(field_coeff(-23, state.range(0)));
}
BENCHMARK(BM_FieldCoefficient)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
