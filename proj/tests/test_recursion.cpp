#include <doctest.h>

#include "hier/brackets.hpp"
#include "hier/presets.hpp"
#include "hier/recursion.hpp"
#include "support.hpp"

using namespace hier;
using hier::testing::P;

namespace {

Hierarchy kdv(Mode mode, int d_max, TruncationWindow w = {}, ConstantsKind k = ConstantsKind::Zero) {
  PresetOptions o;
  o.mode = mode;
  o.d_max = d_max;
  o.max_order = w.max_order;
  o.max_u_degree = w.max_u_degree;
  o.constants = k;
  return generate(preset("kdv", o));
}

}  // namespace

TEST_CASE("classical KdV table") {
  Hierarchy h = kdv(Mode::Classical, 2);
  auto r = h.ring();
  CHECK(h.density(0, -1) == P(r, "u"));
  CHECK(h.density(0, 0) == P(r, "u^2/2 + (1/24) eps^2 u_2"));
  CHECK(h.density(0, 1) == P(r, "u^3/6 + (1/24) eps^2 u u_2 + (1/1152) eps^4 u_4"));
  CHECK(h.density(0, 2) == P(r, "u^4/24 + (1/48) eps^2 u^2 u_2 + (7/5760) eps^4 u_2^2 + (1/1152) eps^4 u u_4 + "
                                "(1/82944) eps^6 u_6"));
  CHECK(integrate(h.density(0, 1)) == h.spec().generator);
}

TEST_CASE("dispersionless generator") {
  auto r = kdv_ring(Mode::Classical);
  HierarchySpec s;
  s.name = "dispersionless";
  s.ring = r;
  s.generator = integrate(P(r, "u^3/6"));
  s.d_max = 2;
  Hierarchy h = generate(s);
  CHECK(h.density(0, 2) == P(r, "u^4/24"));
  Hierarchy full = kdv(Mode::Classical, 2);
  for (int d = -1; d <= 2; ++d) CHECK(set_eps_zero(full.density(0, d)) == h.density(0, d));
}

TEST_CASE("quantum KdV with the constants table") {
  Hierarchy h = kdv(Mode::Quantum, 2, {4, kUnbounded}, ConstantsKind::Table);
  auto r = h.ring();
  CHECK(h.density(0, 0) == P(r, "u^2/2 + (1/24) eps^2 u_2 + (-1/24) i hbar"));
  CHECK(h.density(0, 1) ==
        P(r, "u^3/6 + (1/24) eps^2 u u_2 + (1/1152) eps^4 u_4 + (-1/24) i hbar u + (-1/24) i hbar u_2 + "
             "(-1/2880) i eps^2 hbar"));
  CHECK(constant_part(set_eps_zero(partial(h.density(0, 1), 0, 0))) == constant_part(h.density(0, 0)));
}

TEST_CASE("commutativity") {
  Hierarchy q = kdv(Mode::Quantum, 3, {8, kUnbounded});
  CHECK(verify_commutativity(q, all_pairs(q, 3)).ok());
  PresetOptions o;
  o.max_order = 6;
  o.d_max = 3;
  Hierarchy ilw = generate(preset("ilw", o));
  CHECK(verify_commutativity(ilw, all_pairs(ilw, 3)).ok());
  Report self = verify_commutativity(q, {{{0, 2}, {0, 2}}});
  CHECK(self.ok());
}

TEST_CASE("string and second recursion") {
  Hierarchy c = kdv(Mode::Classical, 3);
  CHECK(partial(c.density(0, 2), 0, 0) == c.density(0, 1));
  CHECK(partial(c.density(0, 0), 0, 0) == P(c.ring(), "u"));
  CHECK(string_check(c).ok());
  CHECK(second_recursion_check(c).ok());
  Hierarchy q = kdv(Mode::Quantum, 2, {6, kUnbounded}, ConstantsKind::Table);
  CHECK(string_check(q).ok());
  CHECK(second_recursion_check(q).ok());
}

TEST_CASE("tau structure for KdV") {
  Hierarchy c = kdv(Mode::Classical, 3, {4, kUnbounded});
  TauStructure t = tau_structure(c);
  auto r = c.ring();
  CHECK(t.density(0, -1) == P(r, "u"));
  CHECK(t.density(0, 0) == P(r, "u^2/2 + (1/12) eps^2 u_2"));
  CHECK(t.omega(0, 1, 0, 0) == t.density(0, 0));
  CHECK(t.omega(0, 0, 0, 0) == P(r, "u"));
  CHECK(t.omega(0, 1, 0, 2) == t.omega(0, 2, 0, 1));
  CHECK(tau_symmetry_check(t).ok());
  CHECK(omega_symmetry_check(t).ok());
  for (int d = 0; d <= 2; ++d) CHECK(is_total_derivative(poisson_local(P(r, "u"), c.functional(0, d))));
}

TEST_CASE("normal coordinates") {
  for (int r : {3, 4, 5}) {
    RingPtr ring = rspin_ring(r, Mode::Classical);
    auto nc = normal_coordinates(integrate(rspin_generator(ring, r)));
    REQUIRE(static_cast<int>(nc.size()) == r - 1);
    for (int a = 0; a < r - 1; ++a) {
      DiffPoly expect = DiffPoly::variable(ring, a);
      if (r == 4 && a == 0) expect = expect + P(ring, "(1/96) eps^2 u3_2");
      if (r == 5 && a == 0) expect = expect + P(ring, "(1/60) eps^2 u3_2");
      if (r == 5 && a == 1) expect = expect + P(ring, "(1/60) eps^2 u4_2");
      CHECK(nc[a] == expect);
    }
  }
}

TEST_CASE("evolution") {
  auto c = kdv_ring(Mode::Classical)->with_params({"t"});
  HierarchySpec s;
  s.name = "kdv";
  s.ring = c;
  s.generator = integrate(kdv_generator(c));
  s.d_max = 1;
  Hierarchy h = generate(s);
  Coefficient t{Complex(1), {{"t", 1}}};
  DiffPoly u = DiffPoly::variable(c, 0);
  CHECK(evolve_density(u, h, {{{0, 0}, t}}, 1) == P(c, "u + t u_1"));
  CHECK(evolve_density(u, h, {{{0, 1}, t}}, 1) == u + DiffPoly::param(c, "t") * dx(P(c, "u^2/2 + (1/12) eps^2 u_2")));
  CHECK(evolve_density(u, h, {}, 3) == u);
}

TEST_CASE("preset generators") {
  auto q = kdv_ring(Mode::Quantum);
  CHECK(integrate(kdv_generator(q)) == integrate(P(q, "u^3/6 + (1/24) eps^2 u u_2 + (-1/24) i hbar u")));
  auto ilw = ilw_ring(Mode::Classical, {2, kUnbounded});
  DiffPoly g = ilw_generator(ilw);
  CHECK(set_eps_zero(g) == P(ilw, "u^3/6"));
  auto s3 = rspin_ring(3, Mode::Classical);
  CHECK(set_eps_zero(rspin_generator(s3, 3)) == P(s3, "u1^2 u2/2 + u2^4/36"));
}

TEST_CASE("regenerating from the level-one functional") {
  Hierarchy h = kdv(Mode::Classical, 2);
  HierarchySpec s = h.spec();
  s.generator = h.functional(0, 1);
  Hierarchy again = generate(s);
  for (int d = -1; d <= 2; ++d) CHECK(again.density(0, d) == h.density(0, d));
}

TEST_CASE("every preset passes its suites within the window") {
  struct Case {
    std::string name;
    Mode mode;
    int max_order, max_u, d_max;
  };
  std::vector<Case> cases = {{"kdv", Mode::Classical, kUnbounded, kUnbounded, 3},
                             {"kdv", Mode::Quantum, 6, kUnbounded, 3},
                             {"ilw", Mode::Classical, 6, kUnbounded, 2},
                             {"toda", Mode::Classical, 4, 6, 1},
                             {"3-spin", Mode::Classical, kUnbounded, kUnbounded, 2},
                             {"4-spin", Mode::Classical, kUnbounded, kUnbounded, 1}};
  for (const auto& c : cases) {
    CAPTURE(c.name);
    PresetOptions o;
    o.mode = c.mode;
    o.max_order = c.max_order;
    o.max_u_degree = c.max_u;
    o.d_max = c.d_max;
    Hierarchy h = generate(preset(c.name, o));
    CHECK(verify_commutativity(h, all_pairs(h, c.d_max)).ok());
    CHECK(string_check(h).ok());
    CHECK(second_recursion_check(h).ok());
    if (c.mode == Mode::Classical) CHECK(tau_symmetry_check(tau_structure(h)).ok());
  }
}
