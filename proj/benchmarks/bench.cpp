#include <benchmark/benchmark.h>

#include "varwave/fdsolve.hpp"
#include "varwave/solutions.hpp"
#include "varwave/verify.hpp"

using namespace varwave;

static void BM_EvalJet2(benchmark::State& state) {
  Expression e = parse("x^2/(t^2+1)+sin(x*t)", {"x", "t"});
  for (auto _ : state) {
    Jet2 j = eval_jet2(e, Jet2::var_x(1.3), Jet2::var_t(0.7));
    benchmark::DoNotOptimize(j);
  }
}
BENCHMARK(BM_EvalJet2);

static void BM_ResidualQuad17(benchmark::State& state) {
  AnalyticSolution u = general_solution_quadratic(SolutionPair::from_text("sin(s)", "cos(s)"));
  for (auto _ : state) {
    double r = residual(u.field, u.equation, 1.5, 0.8);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ResidualQuad17);

static void BM_PushForwardN1(benchmark::State& state) {
  AnalyticSolution u = general_solution_quadratic(SolutionPair::from_text("sin(s)", "cos(s)"));
  JetField B = push_forward_nonlocal(make_n1(), u.field);
  for (auto _ : state) {
    Jet2 j = B.at(1.3, 8.0);
    benchmark::DoNotOptimize(j);
  }
}
BENCHMARK(BM_PushForwardN1);

static void BM_LeapfrogQuad17(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnalyticSolution u = general_solution_quadratic(SolutionPair::from_text("sin(s)", "cos(s)"));
  auto phi = [&](double x) { return u.field.value(x, 0.0); };
  auto psi = [&](double x) { return u.field.at(x, 0.0).ft; };
  auto trace = [&](double x, double t) { return u.field.value(x, t); };
  for (auto _ : state) {
    Field2D f = leapfrog_solve(*u.equation.speed, phi, psi, trace, Grid1D::make(1, 2, n), 0.0,
                               0.3, 0.9);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_LeapfrogQuad17)->Arg(64)->Arg(256);

static void BM_ClassifyDelta(benchmark::State& state) {
  Expression c = parse("(x^2-2.5)/(t^2-2.5)", {"x", "t"});
  for (auto _ : state) {
    auto d = classify_delta(c);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_ClassifyDelta);

BENCHMARK_MAIN();
