#include <doctest.h>

#include "hier/brackets.hpp"
#include "hier/oracle.hpp"
#include "hier/presets.hpp"
#include "hier/recursion.hpp"
#include "support.hpp"

using namespace hier;

// Each OpenMP kernel against its serial reference.

TEST_CASE("polynomial product") {
  exec::set_threads(4);
  auto r = kdv_ring(Mode::Quantum);
  std::mt19937 rng(1);
  hier::testing::RandomPolyOptions o;
  o.terms = 80;
  for (int n = 0; n < 5; ++n) {
    DiffPoly a = hier::testing::random_poly(r, rng, o), b = hier::testing::random_poly(r, rng, o);
    DiffPoly s = mul_serial(a, b), p = mul_parallel(a, b);
    CHECK(s == p);
    CHECK(s.exact_u_degree() == p.exact_u_degree());
  }
}

TEST_CASE("star commutator") {
  exec::set_threads(4);
  auto r = kdv_ring(Mode::Quantum, {8, kUnbounded});
  std::mt19937 rng(2);
  for (int n = 0; n < 10; ++n) {
    DiffPoly f = hier::testing::random_poly(r, rng), g = hier::testing::random_poly(r, rng);
    CHECK(star_commutator_local(f, integrate(g)) == star_commutator_local_serial(f, integrate(g)));
  }
}

TEST_CASE("oracle batches") {
  exec::set_threads(4);
  auto r = kdv_ring(Mode::Quantum, {4, kUnbounded});
  std::mt19937 rng(3);
  hier::testing::RandomPolyOptions o;
  o.terms = 2;
  o.max_order = 2;
  std::vector<std::pair<DiffPoly, DiffPoly>> pairs;
  for (int n = 0; n < 16; ++n) pairs.emplace_back(hier::testing::random_poly(r, rng, o), hier::testing::random_poly(r, rng, o));
  CHECK(oracle::agree_batch(pairs, 2, true) == oracle::agree_batch_serial(pairs, 2, true));
}

TEST_CASE("whole hierarchies are thread-count independent") {
  PresetOptions o;
  o.mode = Mode::Quantum;
  o.max_order = 6;
  o.d_max = 3;
  exec::set_threads(1);
  Hierarchy a = generate(preset("kdv", o));
  exec::set_threads(4);
  Hierarchy b = generate(preset("kdv", o));
  CHECK(a.densities() == b.densities());
}
