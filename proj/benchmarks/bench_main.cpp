#include <benchmark/benchmark.h>

#include "ncg/clifford.hpp"
#include "ncg/commutative.hpp"
#include "ncg/labelcover.hpp"
#include "ncg/numerics.hpp"
#include "ncg/random.hpp"
#include "ncg/reduction.hpp"
#include "ncg/solvers.hpp"

namespace {

using namespace ncg;

void BM_TraceNormFormula(benchmark::State& state) {
  Rng rng = make_rng(1);
  const ComplexVector a = random_gaussian_vector(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(clifford::trace_norm_formula(a));
}
BENCHMARK(BM_TraceNormFormula)->Arg(8)->Arg(64)->Arg(1024);

void BM_TraceNormSvd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(2);
  const auto gens = clifford::make_generators(n);
  const ComplexMatrix c = clifford::clifford_map(random_gaussian_vector(n, rng), gens);
  for (auto _ : state) benchmark::DoNotOptimize(schatten1_norm(c));
}
BENCHMARK(BM_TraceNormSvd)->Arg(4)->Arg(8)->Arg(12);

void BM_PhaseFamilyNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng = make_rng(3);
  const ComplexVector a = random_gaussian_vector(n, rng);
  const auto family = state.range(1) == 0 ? clifford::PhaseFamily::exhaustive(n)
                                          : clifford::PhaseFamily::pairwise_independent(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(clifford::dictator_embedding_norm(a, family));
  state.counters["members"] = static_cast<double>(family.size());
}
BENCHMARK(BM_PhaseFamilyNorm)->Args({6, 0})->Args({8, 0})->Args({8, 1})->Args({32, 1});

void BM_SignMonteCarlo(benchmark::State& state) {
  commutative::SignEnsemble ens;
  ens.field = commutative::Field::complex;
  ens.n = 1000;
  ens.mode = commutative::EnsembleMode::monte_carlo;
  ens.sample_count = static_cast<std::uint64_t>(state.range(0));
  ens.seed = 4;
  const ComplexVector a = ComplexVector::Constant(1000, 1.0 / std::sqrt(1000.0));
  for (auto _ : state) benchmark::DoNotOptimize(commutative::embedding_l1_norm(a, ens));
}
BENCHMARK(BM_SignMonteCarlo)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SubspaceBasis(benchmark::State& state) {
  const auto v = static_cast<std::size_t>(state.range(0));
  const auto p = labelcover::generate_planted(v, 4, 6, 3, 2, 5);
  const auto cs = reduction::build_constraints(p.instance);
  for (auto _ : state) benchmark::DoNotOptimize(reduction::subspace_basis(cs));
}
BENCHMARK(BM_SubspaceBasis)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Lift(benchmark::State& state) {
  const auto op = solvers::random_operator(3, static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(solvers::lift_little_to_big(op));
}
BENCHMARK(BM_Lift)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_NcgSolver(benchmark::State& state) {
  const auto t = solvers::lift_little_to_big(
      solvers::random_operator(3, static_cast<std::size_t>(state.range(0)), 7));
  solvers::SolverOptions opt;
  opt.restarts = 4;
  opt.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(solvers::ncg_opt_lower_bound(t, opt));
}
BENCHMARK(BM_NcgSolver)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
