#include <doctest.h>

#include "hier/brackets.hpp"
#include "hier/presets.hpp"
#include "hier/recursion.hpp"
#include "support.hpp"

using namespace hier;
using hier::testing::P;

namespace {

bool same_degree(const DiffPoly& f, int d) {
  for (const auto& t : f.terms())
    if (t.mono.degree() != d) return false;
  return true;
}

}  // namespace

TEST_CASE("classical bracket examples") {
  auto ring = kdv_ring(Mode::Classical);
  LocalFunctional h = integrate(kdv_generator(ring));
  CHECK(poisson_local(P(ring, "u"), integrate(P(ring, "u^2/2"))) == P(ring, "u_1"));
  CHECK(poisson_local(P(ring, "u"), h) == dx(P(ring, "u^2/2 + (1/12) eps^2 u_2")));
  CHECK(poisson_local(P(ring, "u^2/2 + (1/24) eps^2 u_2"), h) ==
        P(ring, "u^2 u_1 + (1/8) eps^2 u u_3 + (1/8) eps^2 u_1 u_2 + (1/288) eps^4 u_5"));
  LocalFunctional g0 = integrate(P(ring, "u^2/2"));
  LocalFunctional g1 = integrate(P(ring, "u^3/6 + (1/24) eps^2 u u_2"));
  CHECK(poisson(g0, g1).is_zero());
  CHECK(poisson(h, h).is_zero());
  CHECK(poisson(integrate(P(ring, "u")), h).is_zero());
}

TEST_CASE("polylog coefficient rows") {
  auto id = polylog_product_coeffs({3});
  REQUIRE(id.size() == 4);
  CHECK(id[3] == 1);
  CHECK(id[0] == 0);
  auto ct = polylog_product_coeffs({1, 1});
  REQUIRE(ct.size() == 4);
  CHECK(ct[0] == 0);
  CHECK(ct[1] == make_rational(-1, 6));
  CHECK(ct[2] == 0);
  CHECK(ct[3] == make_rational(1, 6));
  auto c = commutator_coeffs({1, 1});
  CHECK(c[1] == make_rational(1, 6));
  CHECK(c[2] == 0);
  CHECK(c[3] == make_rational(1, 6));
  for (int a = 1; a < 5; ++a) {
    auto row = commutator_coeffs({a});
    for (int j = 0; j < static_cast<int>(row.size()); ++j) CHECK(row[j] == (j == a ? 1 : 0));
  }
}

TEST_CASE("commutator rows satisfy the parity pattern") {
  std::vector<std::vector<int>> args = {{1, 2}, {2, 2}, {1, 3}, {1, 1, 2}, {1, 1, 1}, {2, 1, 1, 3}};
  for (const auto& a : args) {
    int n = static_cast<int>(a.size()), sum = 0;
    for (int x : a) sum += x;
    auto row = commutator_coeffs(a);
    for (int j = 0; j < static_cast<int>(row.size()); ++j)
      if ((j - (n - 1 + sum)) % 2 != 0) CHECK(row[j] == 0);
  }
}

TEST_CASE("quantum commutator examples") {
  auto ring = kdv_ring(Mode::Quantum);
  LocalFunctional h = integrate(kdv_generator(ring));
  CHECK(quantum_bracket_local(P(ring, "u"), integrate(P(ring, "u^2/2"))) == P(ring, "u_1"));
  CHECK(quantum_bracket_local(P(ring, "u"), h) == dx(P(ring, "u^2/2 + (1/12) eps^2 u_2")));
  DiffPoly g0 = P(ring, "u^2/2 + (1/24) eps^2 u_2 + (-1/24) i hbar");
  DiffPoly g1 = recursion_step(g0, h);
  DiffPoly ih = scale(Complex(Rational(0), make_rational(-1, 24)), DiffPoly::hbar(ring));
  DiffPoly expect = ih * P(ring, "u + u_2");
  for (const auto& m : expect.terms()) CHECK(g1.coeff_of(m.mono) == m.coeff);
  LocalFunctional a = integrate(P(ring, "u^3/6 + (1/24) eps^2 u u_2"));
  CHECK(star_commutator(h, h).is_zero());
  CHECK(star_commutator(integrate(P(ring, "u")), h).is_zero());
  CHECK(star_commutator(integrate(P(ring, "u^2/2")), h).is_zero());
  CHECK(!star_commutator(a, integrate(P(ring, "u^4"))).is_zero());
}

TEST_CASE("antisymmetry, Jacobi and degrees on random functionals") {
  auto ring = kdv_ring(Mode::Classical);
  std::mt19937 rng(3);
  hier::testing::RandomPolyOptions o;
  o.terms = 2;
  o.max_order = 2;
  for (int n = 0; n < 15; ++n) {
    LocalFunctional a = integrate(hier::testing::random_poly(ring, rng, o));
    LocalFunctional b = integrate(hier::testing::random_poly(ring, rng, o));
    LocalFunctional c = integrate(hier::testing::random_poly(ring, rng, o));
    LocalFunctional ab = poisson(a, b), ba = poisson(b, a);
    CHECK(integrate(ab.repr() + ba.repr()).is_zero());
    DiffPoly jac = poisson(ab, c).repr() + poisson(poisson(b, c), a).repr() + poisson(poisson(c, a), b).repr();
    CHECK(integrate(jac).is_zero());
  }
  DiffPoly f = P(ring, "u^2 u_1 + eps u_2 u");
  DiffPoly g = P(ring, "u^3 + eps^2 u u_2");
  REQUIRE(same_degree(f, 1));
  REQUIRE(same_degree(g, 0));
  CHECK(same_degree(poisson_local(f, integrate(g)), 2));
}

TEST_CASE("classical limit of the quantum commutator") {
  auto q = kdv_ring(Mode::Quantum);
  auto c = kdv_ring(Mode::Classical);
  std::mt19937 rng(5);
  for (int n = 0; n < 15; ++n) {
    DiffPoly f = hier::testing::random_poly(q, rng), g = hier::testing::random_poly(q, rng);
    DiffPoly lhs = set_hbar_zero(quantum_bracket_local(f, integrate(g)));
    DiffPoly rhs = poisson_local(lift(set_hbar_zero(f), c), integrate(lift(set_hbar_zero(g), c)));
    CHECK(lift(lhs, c) == rhs);
  }
}

TEST_CASE("serial and parallel commutator agree") {
  auto q = kdv_ring(Mode::Quantum, {6, kUnbounded});
  std::mt19937 rng(9);
  for (int n = 0; n < 10; ++n) {
    DiffPoly f = hier::testing::random_poly(q, rng), g = hier::testing::random_poly(q, rng);
    CHECK(star_commutator_local(f, integrate(g)) == star_commutator_local_serial(f, integrate(g)));
  }
}
