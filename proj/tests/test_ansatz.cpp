#include <doctest.h>

#include "hier/ansatz.hpp"
#include "hier/presets.hpp"
#include "hier/recursion.hpp"
#include "support.hpp"

using namespace hier;
using hier::testing::P;

namespace {

bool contains(const std::vector<DiffPoly>& basis, const DiffPoly& m) {
  for (const auto& b : basis)
    if (integrate(b) == integrate(m)) return true;
  return false;
}

}  // namespace

TEST_CASE("candidate monomials") {
  auto c = kdv_ring(Mode::Classical);
  auto b1 = monomial_basis(c, 1, 2);
  REQUIRE(b1.size() == 1);
  CHECK(monomial_basis(c, 1, 4).size() == 3);
  CHECK(integrate(b1[0]) == integrate(P(c, "eps^2 u_1^2")));
  auto q = kdv_ring(Mode::Quantum);
  auto bq = monomial_basis(q, 1, 2);
  CHECK(bq.size() == 4);
  CHECK(contains(bq, P(q, "hbar u^2")));
  CHECK(contains(bq, P(q, "eps^2 u_1^2")));
  CHECK(contains(bq, P(q, "hbar u")));
  CHECK(contains(bq, P(q, "hbar u_1^2")));
  auto b0 = monomial_basis(c, 0, 3);
  REQUIRE(b0.size() == 3);
  CHECK(contains(b0, P(c, "u^3")));
  CHECK(monomial_basis(c, 1, 1).empty());
}

TEST_CASE("linear solver") {
  auto r = kdv_ring(Mode::Classical);
  DiffPoly zero(r);
  auto k = [&](long n) { return DiffPoly::constant(r, Complex(n)); };
  LinearSystem s;
  s.n_unknowns = 3;
  s.add_row({k(1), k(1), k(0)}, k(2));
  s.add_row({k(0), k(1), k(1)}, k(3));
  LinearSolution sol = solve_linear(s, zero);
  CHECK(sol.rank == 2);
  REQUIRE(sol.kernel.size() == 1);
  for (const auto& row : s.rows) {
    DiffPoly acc = zero;
    for (int j = 0; j < 3; ++j) acc = acc + row[j] * sol.kernel[0][j];
    CHECK(acc.is_zero());
  }
  LinearSystem bad;
  bad.n_unknowns = 1;
  bad.add_row({k(1)}, k(1));
  bad.add_row({k(2)}, k(3));
  CHECK_THROWS_AS(solve_linear(bad, zero), Inconsistent);
}

TEST_CASE("genus 0 and classical KdV") {
  auto c = kdv_ring(Mode::Classical, {4, kUnbounded});
  AnsatzOptions o;
  o.d_check = 2;
  std::map<int, DiffPoly> anchors{{1, P(c, "(-1/24) eps^2 u_1^2")}};
  AnsatzRun run = solve_dr_type_through(c, 1, o, anchors);
  REQUIRE(run.genera.size() == 2);
  CHECK(run.genera[0].particular == P(c, "u^3/6"));
  CHECK(run.genera[0].kernel.empty());
  CHECK(run.genera[1].kernel.empty());
  CHECK(integrate(run.generator) == integrate(kdv_generator(c)));
}

TEST_CASE("rank 1 genus 1 quantum") {
  auto q = rank1_ring(Mode::Quantum, {2, kUnbounded});
  AnsatzOptions o;
  o.genus = 1;
  o.d_check = 2;
  o.anchor = P(q, "(-1/24) eps^2 u_1^2");
  DiffPoly known = rank1_generator(q, 0);
  AnsatzSolution s = solve_dr_type(known, o);
  REQUIRE(s.kernel.size() == 1);
  auto t = family_coordinates(s, rank1_generator(q, 1) - known);
  REQUIRE(t.has_value());
  DiffPoly member = s.particular + (*t)[0] * s.kernel[0];
  CHECK(integrate(member) == integrate(lift(rank1_generator(q, 1) - known, member.ring())));
}

TEST_CASE("soundness: a family member generates a commuting hierarchy") {
  auto q = kdv_ring(Mode::Quantum, {2, kUnbounded});
  AnsatzOptions o;
  o.d_check = 2;
  o.u_degree_bound = 3;
  std::map<int, DiffPoly> anchors{{1, P(q, "(-1/24) eps^2 u_1^2")}};
  AnsatzRun run = solve_dr_type_through(q, 1, o, anchors);
  REQUIRE(run.free_params.size() == 1);
  DiffPoly g = substitute_params(run.generator, {{run.free_params[0], DiffPoly::constant(run.generator.ring(), Complex(3))}});
  RingPtr r = kdv_ring(Mode::Quantum, {2, kUnbounded});
  HierarchySpec s;
  s.name = "member";
  s.ring = r;
  s.generator = integrate(lift(g, r));
  s.d_max = 2;
  Hierarchy h = generate(s);
  CHECK(verify_commutativity(h, all_pairs(h, 2)).ok());
}

TEST_CASE("completeness: the KdV generator lies in the genus 2 family") {
  auto c = kdv_ring(Mode::Classical, {6, kUnbounded});
  AnsatzOptions o;
  o.genus = 2;
  o.d_check = 2;
  DiffPoly known = set_eps_zero(kdv_generator(c)) + P(c, "(-1/24) eps^2 u_1^2");
  AnsatzSolution s = solve_dr_type(known, o);
  CHECK(family_coordinates(s, DiffPoly(c)).has_value());
}
