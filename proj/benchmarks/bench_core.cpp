/*
 * SPDX-License-Identifier: Apache-2.0
 */
#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "seqcflp/approx.hpp"
#include "seqcflp/bnc.hpp"
#include "seqcflp/generator.hpp"
#include "seqcflp/lp.hpp"
#include "seqcflp/model.hpp"
#include "seqcflp/oracle.hpp"
#include "seqcflp/separation.hpp"

namespace {

using namespace seqcflp;

Instance square(int n, std::uint64_t seed = 7) {
  GeneratorSpec spec;
  spec.num_customers = n;
  spec.num_sites = n;
  spec.p = 2;
  spec.r = 2;
  spec.seed = seed;
  return generate_instance(spec).instance;
}

std::vector<int> first_sites(int k) {
  std::vector<int> s(k);
  std::iota(s.begin(), s.end(), 0);
  return s;
}

void BM_LeaderShareMax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = square(n);
  const auto x = LeaderSolution::from_sites(n, first_sites(2));
  const std::vector<int> ys{n - 2, n - 1};
  const auto y = FollowerSolution::from_sites(n, ys);
  for (auto _ : state) benchmark::DoNotOptimize(leader_share_max(inst, x, y));
}
BENCHMARK(BM_LeaderShareMax)->Arg(20)->Arg(100);

void BM_BulgeGradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = square(n);
  const std::vector<double> x(n, 2.0 / n);
  const std::vector<int> ys{0, 1};
  const auto y = FollowerSolution::from_sites(n, ys);
  for (auto _ : state) benchmark::DoNotOptimize(bulge_gradient(inst, x, y));
}
BENCHMARK(BM_BulgeGradient)->Arg(20)->Arg(100);

void BM_ExactBestResponse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = square(n);
  const auto x = LeaderSolution::from_sites(n, first_sites(2));
  for (auto _ : state) benchmark::DoNotOptimize(exact_best_response(inst, x));
}
BENCHMARK(BM_ExactBestResponse)->Arg(20)->Arg(50);

void BM_ApproxSeparation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = square(n);
  const std::vector<double> x(n, 2.0 / n);
  for (auto _ : state) benchmark::DoNotOptimize(approx_separation(inst, x));
}
BENCHMARK(BM_ApproxSeparation)->Arg(20)->Arg(100);

void BM_MasterLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = square(n);
  std::vector<CutRow> cuts;
  for (int j = 0; j + 1 < n; ++j) {
    const std::vector<int> anchor{j, j + 1};
    const std::vector<int> ys{(j + 2) % n, (j + 3) % n};
    cuts.push_back(submodular_cut(inst, anchor, ys));
  }
  const std::vector<double> lo(n, 0.0), hi(n, 1.0);
  const auto lp = make_master_lp(n, 2, cuts, lo, hi);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_MasterLp)->Arg(20)->Arg(60);

void BM_SolveExact(benchmark::State& state) {
  const auto inst = square(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst));
}
BENCHMARK(BM_SolveExact)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SolveApprox(benchmark::State& state) {
  const auto inst = square(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_approx(inst));
}
BENCHMARK(BM_SolveApprox)->Arg(15)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Enumeration(benchmark::State& state) {
  const auto inst = square(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_enumeration(inst));
}
BENCHMARK(BM_Enumeration)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
