#include <benchmark/benchmark.h>

#include <random>

#include "hier/brackets.hpp"
#include "hier/lax.hpp"
#include "hier/presets.hpp"
#include "../tests/support.hpp"

using namespace hier;

namespace {

std::pair<DiffPoly, DiffPoly> operands(int terms) {
  auto r = kdv_ring(Mode::Quantum);
  std::mt19937 rng(7);
  hier::testing::RandomPolyOptions o;
  o.terms = terms;
  return {hier::testing::random_poly(r, rng, o), hier::testing::random_poly(r, rng, o)};
}

void BM_mul_serial(benchmark::State& st) {
  auto [a, b] = operands(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mul_serial(a, b));
}

void BM_mul_parallel(benchmark::State& st) {
  auto [a, b] = operands(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mul_parallel(a, b));
}

DiffPoly kdv_density(int d) {
  PresetOptions o;
  o.mode = Mode::Quantum;
  o.max_order = 6;
  o.d_max = d;
  return generate(preset("kdv", o)).density(0, d);
}

void BM_star_commutator_serial(benchmark::State& st) {
  DiffPoly f = kdv_density(2), g = kdv_density(3);
  for (auto _ : st) benchmark::DoNotOptimize(star_commutator_local_serial(f, integrate(g)));
}

void BM_star_commutator_parallel(benchmark::State& st) {
  DiffPoly f = kdv_density(2), g = kdv_density(3);
  for (auto _ : st) benchmark::DoNotOptimize(star_commutator_local(f, integrate(g)));
}

void BM_gd_root(benchmark::State& st) {
  auto r = gd_ring(3);
  PseudoDiffOp L = gd_lax_operator(r, 3);
  for (auto _ : st) benchmark::DoNotOptimize(rth_root(L, 3, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_mul_serial)->Arg(40)->Arg(160);
BENCHMARK(BM_mul_parallel)->Arg(40)->Arg(160);
BENCHMARK(BM_star_commutator_serial);
BENCHMARK(BM_star_commutator_parallel);
BENCHMARK(BM_gd_root)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
