#include <benchmark/benchmark.h>

#include <random>

#include "credeq/concave.hpp"
#include "credeq/linear.hpp"
#include "credeq/ramsey.hpp"
#include "credeq/sensitivity.hpp"

using namespace credeq;

namespace {

StaticEconomy linear_six() {
  StaticEconomy e;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> gap(0.05, 1.0), gd(0.05, 0.9),
      sd(0.1, 3.0);
  double A = gap(gen);
  for (int i = 0; i < 6; ++i) {
    A += gap(gen);
    e.agents.push_back({i + 1, Technology::linear(A), gd(gen), sd(gen)});
  }
  return e;
}

StaticEconomy cd_four() {
  StaticEconomy e;
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> ad(0.5, 3.0), alphad(0.2, 0.8),
      gd(0.05, 0.9), sd(0.2, 3.0);
  for (int i = 0; i < 4; ++i)
    e.agents.push_back(
        {i + 1, Technology::cobb_douglas(ad(gen), alphad(gen)), gd(gen), sd(gen)});
  return e;
}

DynamicEconomy three_agent_dyn() {
  DynamicEconomy e;
  e.agents = {{1, 0.20, 0.2, 4.0 / 0.20, {1.0}},
              {2, 0.20, 0.3, 4.0 / 0.20, {1.2}},
              {3, 0.95, 0.3, 3.0 / 0.95, {1.5}}};
  return e;
}

void BM_linear_solve(benchmark::State& state) {
  const auto e = linear_six();
  for (auto _ : state) benchmark::DoNotOptimize(solve_equilibrium_linear(e));
}
BENCHMARK(BM_linear_solve);

void BM_concave_solve(benchmark::State& state) {
  const auto e = cd_four();
  for (auto _ : state) benchmark::DoNotOptimize(solve_equilibrium_concave(e));
}
BENCHMARK(BM_concave_solve);

void BM_gamma_sweep_61(benchmark::State& state) {
  StaticEconomy e;
  e.agents = {{1, Technology::linear(1.0), 0.2, 4.0},
              {2, Technology::linear(1.2), 0.3, 4.0},
              {3, Technology::linear(1.5), 0.3, 3.0}};
  for (auto _ : state)
    benchmark::DoNotOptimize(sweep(e, 1, Param::Gamma, 0.15, 0.45, 61));
}
BENCHMARK(BM_gamma_sweep_61);

void BM_ramsey_construct_T200(benchmark::State& state) {
  const auto e = three_agent_dyn();
  for (auto _ : state) benchmark::DoNotOptimize(auto_construct(e, 200));
}
BENCHMARK(BM_ramsey_construct_T200);

void BM_ramsey_verify_T200(benchmark::State& state) {
  const auto e = three_agent_dyn();
  const auto p = auto_construct(e, 200).path;
  for (auto _ : state) benchmark::DoNotOptimize(verify_path(e, p));
}
BENCHMARK(BM_ramsey_verify_T200);

}  // namespace

BENCHMARK_MAIN();
