#include <benchmark/benchmark.h>

#include "lamq/eval.hpp"
#include "lamq/observe.hpp"
#include "lamq/prelude.hpp"
#include "lamq/rewrite.hpp"
#include "lamq/syntax.hpp"

using namespace lamq;

namespace {

Term resolved(const std::string& src) {
  static Env env = default_env(Level::Q);
  return env.resolve(parse(src, Level::Q));
}

void BM_Parse(benchmark::State& state) {
  const std::string src =
      "\\f. \\x. f (f ((a, b, c) (\\y. y x, ~\\z. z z)))";
  for (auto _ : state) benchmark::DoNotOptimize(parse(src, Level::Q));
}
BENCHMARK(BM_Parse);

void BM_Print(benchmark::State& state) {
  const Term t = resolved("W 2");
  for (auto _ : state) benchmark::DoNotOptimize(print(t));
}
BENCHMARK(BM_Print);

void BM_AlphaCanonical(benchmark::State& state) {
  const Term t = resolved("REMOVE-F (F, T, F)");
  for (auto _ : state) benchmark::DoNotOptimize(alpha_canonical(t));
}
BENCHMARK(BM_AlphaCanonical);

void BM_Substitute(benchmark::State& state) {
  const Term body = parse("\\y. x (y x) (x, ~x)", Level::Q);
  const Term repl = parse("\\w. w w", Level::Q);
  for (auto _ : state) benchmark::DoNotOptimize(substitute(body, repl, "x"));
}
BENCHMARK(BM_Substitute);

void BM_GammaNormalize(benchmark::State& state) {
  const Term t = parse("((a, b, c) (d, e, f)) ((g, h) (i, j))", Level::P);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_normalize(t));
}
BENCHMARK(BM_GammaNormalize);

void BM_EvaluateWalk(benchmark::State& state) {
  const Term t = resolved("W " + std::to_string(state.range(0)));
  const EvalConfig cfg{50'000'000, Level::Q};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(t, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateWalk)->DenseRange(2, 8, 2);

void BM_ExactDistributionWalk(benchmark::State& state) {
  const EvalConfig cfg{50'000'000, Level::Q};
  const Term v = evaluate(resolved("W " + std::to_string(state.range(0))), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(exact_distribution(v));
}
BENCHMARK(BM_ExactDistributionWalk)->DenseRange(2, 6, 2);

void BM_XiSample(benchmark::State& state) {
  const EvalConfig cfg{50'000'000, Level::Q};
  const Term v = evaluate(resolved("W 6"), cfg);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(xi_sample(v, rng));
}
BENCHMARK(BM_XiSample);

void BM_SatPipeline(benchmark::State& state) {
  const auto f = BoolFormula::conjunction(
      BoolFormula::disjunction(BoolFormula::var(1), BoolFormula::var(2)),
      BoolFormula::negation(BoolFormula::var(3)));
  const EvalConfig cfg{50'000'000, Level::Q};
  for (auto _ : state)
    benchmark::DoNotOptimize(sat_pipeline_value(f, 3, cfg));
}
BENCHMARK(BM_SatPipeline);

}  // namespace

BENCHMARK_MAIN();
