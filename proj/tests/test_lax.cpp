#include <doctest.h>

#include <random>

#include "hier/lax.hpp"
#include "hier/presets.hpp"
#include "hier/recursion.hpp"
#include "support.hpp"

using namespace hier;
using hier::testing::P;

namespace {

PseudoDiffOp D(const RingPtr& r, int j) { return PseudoDiffOp::term(DiffPoly::constant(r, Complex(1)), j); }

}  // namespace

TEST_CASE("composition") {
  auto r = gd_ring(2);
  DiffPoly f0 = DiffPoly::variable(r, 0);
  PseudoDiffOp c = compose(D(r, 1), PseudoDiffOp::term(f0, 0)) - compose(PseudoDiffOp::term(f0, 0), D(r, 1));
  CHECK(agree(c, PseudoDiffOp::term(DiffPoly::eps(r) * dx(f0), 0)));
  PseudoDiffOp L = gd_lax_operator(r, 2);
  CHECK(agree(compose(L, PseudoDiffOp::identity(r)), L));
  PseudoDiffOp inv = compose(D(r, -1), D(r, 1), -4);
  CHECK(agree(inv, PseudoDiffOp::identity(r)));
  PseudoDiffOp g = compose(D(r, -1), PseudoDiffOp::term(f0, 0), -3);
  CHECK(g.low() == -3);
  CHECK(g.coeff(-2) == scale(Complex(-1), DiffPoly::eps(r) * dx(f0)));
  CHECK_THROWS(compose(D(r, -1), PseudoDiffOp::term(f0, 0)));
}

TEST_CASE("positive part and residue") {
  auto r = gd_ring(2);
  DiffPoly f0 = DiffPoly::variable(r, 0);
  CHECK(res(D(r, 2)).is_zero());
  CHECK(res(PseudoDiffOp::term(f0, -1)) == f0);
  for (int n : {2, 3, 4}) {
    auto rn = gd_ring(n);
    PseudoDiffOp q = rth_root(gd_lax_operator(rn, n), n, 4);
    CHECK(agree(positive_part(q), D(rn, 1)));
  }
}

TEST_CASE("roots") {
  auto r = gd_ring(2);
  PseudoDiffOp L = gd_lax_operator(r, 2);
  PseudoDiffOp q = rth_root(L, 2, 8);
  CHECK(q.depth == 8);
  CHECK(q.coeff(0).is_zero());
  CHECK(q.coeff(-1) == P(r, "f0/2"));
  CHECK(q.coeff(-2) == P(r, "(-1/4) eps f0_1"));
  CHECK(agree(compose(q, q), L));
  CHECK(agree(rth_root(D(r, 2), 2, 5), D(r, 1)));

  std::mt19937 rng(17);
  for (int n : {2, 3}) {
    auto rn = gd_ring(n);
    for (int trial = 0; trial < 3; ++trial) {
      PseudoDiffOp M = D(rn, n);
      hier::testing::RandomPolyOptions o;
      o.terms = 2;
      o.max_u_degree = 2;
      o.max_order = 1;
      o.max_eps = 1;
      for (int i = 0; i + 2 <= n; ++i) M.set(i, hier::testing::random_poly(rn, rng, o));
      PseudoDiffOp root = rth_root(M, n, 8);
      CHECK(agree(power(root, n), M));
      PseudoDiffOp a = power(root, 2), b = power(root, 3);
      CHECK(is_total_derivative(res(commutator(compose(M, root), a))));
      CHECK(is_total_derivative(res(commutator(a, b))));
    }
  }
  auto r1 = gd_ring(2);
  PseudoDiffOp L1 = D(r1, 1);
  L1.finite = true;
  CHECK(agree(rth_root(L1, 1, 3), L1));
}

TEST_CASE("flows") {
  for (int n : {2, 3, 4}) {
    auto r = gd_ring(n);
    PseudoDiffOp L = gd_lax_operator(r, n);
    auto f1 = gd_flow(L, 1);
    for (int i = 0; i + 2 <= n; ++i) CHECK(f1.at(i) == DiffPoly::eps(r) * DiffPoly::variable(r, i, 1));
    for (const auto& [i, x] : gd_flow(L, n)) CHECK(x.is_zero());
  }
  auto r = gd_ring(2);
  auto f3 = gd_flow(gd_lax_operator(r, 2), 3);
  CHECK(f3.at(0) == P(r, "(3/2) eps f0 f0_1 + (1/4) eps^3 f0_3"));
}

TEST_CASE("Hamiltonians, operator and involution") {
  auto r = gd_ring(2);
  PseudoDiffOp L = gd_lax_operator(r, 2);
  HamiltonianOperator K = gd_operator(L);
  CHECK(K.entry(0, 0).coeffs.size() == 1);
  CHECK(K.entry(0, 0).coeffs.at(1) == P(r, "(-2) eps"));
  CHECK(gd_hamiltonian(L, 1) == integrate(P(r, "(-1/4) f0^2")));
  CHECK(poisson(gd_hamiltonian(L, 1), gd_hamiltonian(L, 3), K).is_zero());
  CHECK(gd_hamiltonian(D(r, 2), 3).is_zero());

  std::vector<DiffPoly> zero(1, DiffPoly(r));
  CHECK(gd_operator_bracket(L, zero)[0].is_zero());
  DiffPoly x = P(r, "f0^2"), y = P(r, "eps f0_1");
  auto bx = gd_operator_bracket(L, {x}), by = gd_operator_bracket(L, {y}), bxy = gd_operator_bracket(L, {x + y});
  CHECK(bxy[0] == bx[0] + by[0]);

  for (int n : {2, 3}) {
    auto rn = gd_ring(n);
    PseudoDiffOp Ln = gd_lax_operator(rn, n);
    HamiltonianOperator Kn = gd_operator(Ln);
    std::vector<int> ms;
    for (int m = 1; m <= 5; ++m)
      if (m % n) ms.push_back(m);
    for (size_t a = 0; a < ms.size(); ++a)
      for (size_t b = a + 1; b < ms.size(); ++b)
        CHECK(poisson(gd_hamiltonian(Ln, ms[a]), gd_hamiltonian(Ln, ms[b]), Kn).is_zero());
    // The flows are Hamiltonian: eps df/dT_m = K grad h_m.
    for (int m : ms) {
      auto flow = gd_flow(Ln, m);
      std::vector<DiffPoly> grad;
      for (int i = 0; i + 1 < n; ++i) grad.push_back(variational_derivative(gd_hamiltonian(Ln, m), i));
      auto kg = Kn.apply(grad);
      for (int i = 0; i + 1 < n; ++i) CHECK(kg[i] == flow.at(i));
    }
  }
}

TEST_CASE("normal coordinates") {
  auto r = gd_ring(2);
  auto nc = gd_normal_coords(gd_lax_operator(r, 2));
  REQUIRE(nc.size() == 1);
  CHECK(nc.at(1).scaled == P(r, "f0/2"));
  CHECK(!nc.at(1).over_sqrt_minus_r);
  auto r3 = gd_ring(3);
  PseudoDiffOp L3 = gd_lax_operator(r3, 3);
  auto nc3 = gd_normal_coords(L3);
  CHECK(nc3.at(2).scaled == res(rth_root(L3, 3, 3)));
  CHECK(nc3.at(1).over_sqrt_minus_r);
  for (const auto& [a, c] : gd_normal_coords(D(r3, 3))) CHECK(c.scaled.is_zero());
}

TEST_CASE("serialization") {
  auto r = gd_ring(3);
  PseudoDiffOp q = rth_root(gd_lax_operator(r, 3), 3, 4);
  Json doc = to_json(q);
  CHECK(doc["top"] == 1);
  CHECK(doc["depth"] == 4);
  PseudoDiffOp back = pseudo_from_json(doc, r);
  CHECK(agree(back, q));
  CHECK(back.depth == q.depth);
}
