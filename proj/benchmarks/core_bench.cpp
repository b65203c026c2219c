#include <benchmark/benchmark.h>

#include <random>

#include "lielab/adjoint.hpp"
#include "lielab/character.hpp"
#include "lielab/convex_orbit.hpp"
#include "lielab/random.hpp"

using namespace lielab;

namespace {

// Freudenthal multiplicities for (k, k) in A2 and (k, 0) in G2.
void BM_Freudenthal_A2(benchmark::State& state) {
  const RootSystem rs = RootSystem::build("A2");
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weight_multiplicities(rs, Weight{k, k}));
}
BENCHMARK(BM_Freudenthal_A2)->Arg(2)->Arg(5)->Arg(10);

void BM_Freudenthal_G2(benchmark::State& state) {
  const RootSystem rs = RootSystem::build("G2");
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weight_multiplicities(rs, Weight{k, 0}));
}
BENCHMARK(BM_Freudenthal_G2)->Arg(2)->Arg(5)->Arg(8);

void BM_CharacterGrid_A2(benchmark::State& state) {
  const RootSystem rs = RootSystem::build("A2");
  const IrrepTable table = weight_multiplicities(rs, Weight{3, 3});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(character_on_grid(rs, table, n));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_CharacterGrid_A2)->Arg(30)->Arg(120);

void BM_ExpLog(benchmark::State& state) {
  const CompactAlgebra alg = CompactAlgebra::build(RootSystem::build(state.range(0) == 0 ? "A2" : "G2"));
  Rng rng = make_rng(1);
  const AlgebraVector x = 1.5 * alg.random_unit(rng);
  for (auto _ : state) benchmark::DoNotOptimize(alg.group_log(alg.group_exp(x)));
}
BENCHMARK(BM_ExpLog)->Arg(0)->Arg(1);

// Hull-interior test on random point clouds; dominated by the simplex solver.
void BM_HullInterior(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<Eigen::VectorXd> vs;
  for (int i = 0; i < 4 * d; ++i) {
    Eigen::VectorXd v(d);
    for (int j = 0; j < d; ++j) v(j) = g(rng);
    vs.push_back(v);
  }
  for (auto _ : state) benchmark::DoNotOptimize(zero_in_hull_interior(vs));
}
BENCHMARK(BM_HullInterior)->Arg(3)->Arg(8)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
