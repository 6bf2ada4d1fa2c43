#include <benchmark/benchmark.h>

#include <random>

#include "dsw/invariants.hpp"
#include "dsw/synthetic.hpp"
#include "dsw/universal_fit.hpp"

using namespace dsw;

namespace {

ManifoldData k3() {
  ManifoldData m;
  m.name = "K3";
  m.euler_chi = 24;
  m.signature_sigma = -16;
  m.b_plus = 3;
  m.form = k3_form();
  m.w2 = Mod2Class::zero(22);
  m.sw_simple_type = true;
  m.spinc_entries.push_back({LatticeVector::zero(22), 1});
  return m;
}

void BM_ExpQuadraticK3(benchmark::State& state) {
  const auto form = k3_form();
  const auto cap = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(exp_quadratic(form, cap));
}
BENCHMARK(BM_ExpQuadraticK3)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SeriesMultiply(benchmark::State& state) {
  const auto form = direct_sum({hyperbolic_plane(), diagonal_form({1, -1})});
  const auto cap = static_cast<std::uint32_t>(state.range(0));
  const auto a = exp_quadratic(form, cap);
  const auto b = exp_linear(form, {1, 1, 1, 1}, cap);
  for (auto _ : state)
    benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_SeriesMultiply)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SearchSquareK3(benchmark::State& state) {
  const auto sub = Sublattice::whole(k3_form());
  for (auto _ : state)
    benchmark::DoNotOptimize(find_vector_with_square(sub, state.range(0), {.bound = 20}));
}
BENCHMARK(BM_SearchSquareK3)->Arg(-6)->Arg(-4)->Arg(-40);

void BM_HyperbolicPairDefinite(benchmark::State& state) {
  // No isotropic vectors: the whole box is walked.
  const auto sub = Sublattice::whole(e8_form());
  const Int bound = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(find_hyperbolic_pair(sub, {.bound = bound}));
}
BENCHMARK(BM_HyperbolicPairDefinite)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_WittenK3(benchmark::State& state) {
  const auto m = k3();
  const auto w = LatticeVector::zero(22);
  for (auto _ : state)
    benchmark::DoNotOptimize(witten_rhs(m, w, 8));
}
BENCHMARK(BM_WittenK3)->Unit(benchmark::kMillisecond);

void BM_FitKM(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto m = random_synthetic_manifold(rng);
  const auto w = m.w2.lift();
  const auto target = witten_rhs(m, w, 10);
  std::vector<LatticeVector> candidates;
  for (const auto& e : m.spinc_entries)
    candidates.push_back(e.c1);
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_km_coefficients(target, candidates, w, m.form, 10));
}
BENCHMARK(BM_FitKM)->Unit(benchmark::kMillisecond);

void BM_SolveCoefficients(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto inst = make_fit_instance(rng, state.range(0), 0, 4);
  const FitProblem problem{inst.delta, 0,
                           {witten_observation("b", inst.manifold, inst.w, inst.lambda, inst.delta, 0)}};
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_coefficients(problem));
}
BENCHMARK(BM_SolveCoefficients)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
