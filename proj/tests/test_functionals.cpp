#include <doctest.h>

#include "hier/functionals.hpp"
#include "hier/presets.hpp"
#include "support.hpp"

using namespace hier;
using hier::testing::P;

TEST_CASE("integration classes") {
  auto ring = kdv_ring(Mode::Classical);
  CHECK(integrate(P(ring, "u u_1")).is_zero());
  CHECK(integrate(P(ring, "u u_2")) == integrate(P(ring, "(-1) u_1^2")));
  CHECK(integrate(DiffPoly::constant(ring, Complex(3))).is_zero());
}

TEST_CASE("variational derivatives") {
  auto ring = kdv_ring(Mode::Classical);
  CHECK(variational_derivative(integrate(P(ring, "u^3/6 + (1/24) eps^2 u u_2")), 0) ==
        P(ring, "u^2/2 + (1/12) eps^2 u_2"));
  CHECK(variational_derivative(integrate(P(ring, "u^2/2")), 0) == P(ring, "u"));
  CHECK(variational_derivative(integrate(P(ring, "u u_1")), 0).is_zero());
}

TEST_CASE("antiderivative") {
  auto ring = kdv_ring(Mode::Classical);
  CHECK(dx_inverse(P(ring, "u u_1")) == P(ring, "u^2/2"));
  CHECK(dx_inverse(P(ring, "u^2 u_1 + (1/8) eps^2 u u_3 + (1/8) eps^2 u_1 u_2 + (1/288) eps^4 u_5")) ==
        P(ring, "u^3/3 + (1/8) eps^2 u u_2 + (1/288) eps^4 u_4"));
  CHECK_THROWS_AS(dx_inverse(P(ring, "u^2")), NotExact);
}

TEST_CASE("(D-1) inverse") {
  auto ring = kdv_ring(Mode::Classical);
  CHECK(d_minus_one_inverse(P(ring, "u^2/2 + (1/12) eps^2 u_2")) == P(ring, "u^2/2 + (1/24) eps^2 u_2"));
  CHECK(d_minus_one_inverse(P(ring, "u^3/3 + (1/8) eps^2 u u_2 + (1/288) eps^4 u_4")) ==
        P(ring, "u^3/6 + (1/24) eps^2 u u_2 + (1/1152) eps^4 u_4"));
  CHECK_THROWS_AS(d_minus_one_inverse(P(ring, "u")), WeightOneComponent);
}

TEST_CASE("properties on random inputs") {
  auto ring = kdv_ring(Mode::Quantum);
  std::mt19937 rng(11);
  for (int n = 0; n < 40; ++n) {
    DiffPoly f = hier::testing::random_poly(ring, rng), g = hier::testing::random_poly(ring, rng);
    CHECK(variational_derivative(integrate(dx(f)), 0).is_zero());
    CHECK(dx(dx_inverse(dx(f))) == dx(f));
    CHECK(dx_inverse(dx(f)) == f - constant_part(f));
    CHECK(variational_derivative(integrate(f + dx(g)), 0) == variational_derivative(integrate(f), 0));
    CHECK(integrate(f + dx(g)) == integrate(f));
    PartsReduction r = reduce_by_parts(f);
    CHECK(r.remainder + dx(r.antiderivative) == f);
    DiffPoly nc = drop_constants(f);
    bool weight_one = false;
    for (const auto& t : nc.terms()) weight_one |= t.mono.weight() == 1;
    if (!weight_one) {
      DiffPoly h = d_minus_one_inverse(nc);
      CHECK(euler_D(h) - h == nc);
    }
  }
}
