#include <doctest.h>

#include "hier/miura.hpp"
#include "hier/presets.hpp"
#include "support.hpp"

using namespace hier;
using hier::testing::P;

TEST_CASE("inversion") {
  auto r = kdv_ring(Mode::Classical, {6, kUnbounded})->with_params({"c"});
  DiffPoly u = DiffPoly::variable(r, 0);
  CHECK(invert(MiuraMap::identity(r), 4).image(0) == u);
  MiuraMap m({P(r, "u + c eps^2 u_2")});
  CHECK(m.inverse_images(4)[0] == P(r, "u + (-1) c eps^2 u_2 + c^2 eps^4 u_4"));
  CHECK(substitute(m.image(0), m.inverse_images(6)) == u);
  CHECK(invert(MiuraMap({P(r, "(2) u")}), 4).image(0) == P(r, "u/2"));
  CHECK_THROWS_AS(leading_jacobian(MiuraMap({P(r, "eps u_1")})), SingularAtEpsilonZero);
}

TEST_CASE("operator conjugation") {
  auto r = ilw_ring(Mode::Classical, {6, kUnbounded});
  HamiltonianOperator k = HamiltonianOperator::eta_dx(r);
  CHECK(push_operator(k, MiuraMap::identity(r), 6) == k);
  HamiltonianOperator two = push_operator(k, MiuraMap({P(r, "(2) u")}), 6);
  CHECK(two.entry(0, 0).coeffs.size() == 1);
  CHECK(two.entry(0, 0).coeffs.at(1) == DiffPoly::constant(r, Complex(4)));

  HamiltonianOperator hodge = push_operator(k, MiuraMap({ilw_miura_image(r)}), 6);
  const auto& c = hodge.entry(0, 0).coeffs;
  REQUIRE(c.size() == 4);
  CHECK(c.at(1) == DiffPoly::constant(r, Complex(1)));
  CHECK(c.at(3) == P(r, "(1/12) mu eps^2"));
  CHECK(c.at(5) == P(r, "(1/240) mu^2 eps^4"));
  CHECK(c.at(7) == P(r, "(1/6048) mu^3 eps^6"));
}

TEST_CASE("functionals under a Miura map") {
  auto r = kdv_ring(Mode::Classical, {6, kUnbounded});
  LocalFunctional h = integrate(P(r, "u^2/2"));
  CHECK(push_functional(h, MiuraMap::identity(r), 6) == h);
  CHECK(push_functional(h, MiuraMap({P(r, "(2) u")}), 6) == integrate(P(r, "u^2/8")));

  auto ri = ilw_ring(Mode::Classical, {4, kUnbounded});
  MiuraMap hodge({ilw_miura_image(ri)});
  HamiltonianOperator k = push_operator(HamiltonianOperator::eta_dx(ri), hodge, 4);
  LocalFunctional hk = push_functional(integrate(lift(kdv_generator(kdv_ring(Mode::Classical)), ri)), hodge, 4);
  CHECK(poisson(hk, hk, k).is_zero());
}

TEST_CASE("group law and naturality") {
  auto r = kdv_ring(Mode::Classical, {4, kUnbounded});
  MiuraMap a({P(r, "u + (1/3) eps^2 u_2")});
  MiuraMap b({P(r, "u + eps^2 u u_2 + (1/5) eps^4 u_4")});
  HamiltonianOperator k = HamiltonianOperator::eta_dx(r);
  CHECK(push_operator(push_operator(k, a, 4), b, 4) == push_operator(k, compose(a, b), 4));
  LocalFunctional h1 = integrate(P(r, "u^3/6 + (1/24) eps^2 u u_2"));
  LocalFunctional h2 = integrate(P(r, "u^4/24"));
  LocalFunctional lhs = poisson(push_functional(h1, b, 4), push_functional(h2, b, 4), push_operator(k, b, 4));
  LocalFunctional rhs = push_functional(poisson(h1, h2, k), b, 4);
  CHECK(lhs == rhs);
}

TEST_CASE("normal Miura transformations") {
  PresetOptions o;
  o.max_order = 6;
  o.d_max = 1;
  Hierarchy kdv = generate(preset("kdv", o));
  TauStructure t = tau_structure(kdv);
  CHECK(normal_miura(DiffPoly(kdv.ring()), t).map.image(0) == DiffPoly::variable(kdv.ring(), 0));
  auto r = kdv.ring()->with_params({"c"});
  HierarchySpec s = kdv.spec();
  s.ring = r;
  s.generator = integrate(lift(kdv.spec().generator.repr(), r));
  TauStructure tc = tau_structure(generate(s));
  CHECK(normal_miura(P(r, "c eps^2 u"), tc).map.image(0) == P(r, "u + c eps^2 u_2"));

  Hierarchy ilw = generate(preset("ilw", o));
  TauStructure ti = tau_structure(ilw);
  NormalMiura nm = normal_miura(ilw_miura_generator(ilw.ring()), ti);
  CHECK(nm.map.image(0) == ilw_miura_image(ilw.ring()));
  CHECK(normal_tau_check(nm, ilw, 6).ok());
}
