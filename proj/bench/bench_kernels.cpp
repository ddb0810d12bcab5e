#include "msym/bounds.hpp"
#include "msym/multisym.hpp"
#include "msym/objective.hpp"
#include "msym/reduce.hpp"

#include <benchmark/benchmark.h>

using namespace msym;

namespace {

Polynomial quartic(std::size_t n) {
  Shape s{n, 1};
  auto p = [&](std::uint32_t a) { return power_sum({a}, s); };
  return Rational(-1, 2) * p(4) + p(2) * p(2) + Rational(1, 2) * pow(p(1), 4) + p(2);
}

ExponentProfile wide_profile() {
  // k = 3 profile with mixed degrees; enough weight vectors to matter
  ExponentProfile e;
  e.k = 3;
  e.points = {{4, 0, 0}, {0, 5, 0}, {0, 0, 3}, {2, 1, 1}, {1, 2, 0}, {0, 1, 2}};
  return e;
}

struct MultistartCase {
  Reducer red{quartic(40)};
  Partition lam{std::vector<std::size_t>{20, 12, 5, 3}};
  std::vector<double> omega;
  WeightedPowerSumObjective obj;

  MultistartCase() : obj(*red.power_sum_form(), weights()) {
    for (auto p : lam.parts()) omega.push_back(static_cast<double>(p));
  }
  std::vector<double> weights() const {
    std::vector<double> w;
    for (auto p : lam.parts()) w.push_back(static_cast<double>(p));
    return w;
  }
};

void BM_multistart_serial(benchmark::State& state) {
  MultistartCase c;
  for (auto _ : state) {
    auto r = run_multistart_serial(c.obj, c.omega, 4.0, static_cast<std::size_t>(state.range(0)), 1, 0, {});
    benchmark::DoNotOptimize(r.best.value);
  }
}

void BM_multistart_omp(benchmark::State& state) {
  MultistartCase c;
  for (auto _ : state) {
    auto r = run_multistart_omp(c.obj, c.omega, 4.0, static_cast<std::size_t>(state.range(0)), 1, 0, {});
    benchmark::DoNotOptimize(r.best.value);
  }
}

void BM_fit_simplex_serial(benchmark::State& state) {
  ExponentProfile e = wide_profile();
  for (auto _ : state) {
    auto fit = fit_simplex_serial(e, static_cast<std::uint32_t>(state.range(0)));
    benchmark::DoNotOptimize(fit.degree);
  }
}

void BM_fit_simplex_omp(benchmark::State& state) {
  ExponentProfile e = wide_profile();
  for (auto _ : state) {
    auto fit = fit_simplex(e, static_cast<std::uint32_t>(state.range(0)));
    benchmark::DoNotOptimize(fit.degree);
  }
}

}  // namespace

BENCHMARK(BM_multistart_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multistart_omp)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_fit_simplex_serial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fit_simplex_omp)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
