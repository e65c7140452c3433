#pragma once

#include <random>
#include <string>

#include "hier/io.hpp"
#include "hier/ring.hpp"

namespace hier::testing {

inline DiffPoly P(const RingPtr& ring, const std::string& text) { return parse_pretty(text, ring); }

struct RandomPolyOptions {
  int terms = 3;
  int max_u_degree = 3;
  int max_order = 3;
  int max_eps = 2;
  int max_hbar = 1;
  int max_num = 5;
};

// Small random differential polynomial; every term has at least one u-factor.
inline DiffPoly random_poly(const RingPtr& ring, std::mt19937& rng, const RandomPolyOptions& o = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  DiffPoly out(ring);
  for (int t = 0; t < o.terms; ++t) {
    DiffPoly m = DiffPoly::constant(ring, Complex(make_rational(pick(-o.max_num, o.max_num), pick(1, 4))));
    if (ring->quantum() && pick(0, 3) == 0) m = scale(Complex::i_unit(), m);
    int deg = pick(1, o.max_u_degree);
    for (int k = 0; k < deg; ++k) m = m * DiffPoly::variable(ring, pick(0, ring->n_vars() - 1), pick(0, o.max_order));
    int e = pick(0, o.max_eps);
    if (e) m = m * DiffPoly::eps(ring, e);
    if (ring->quantum()) {
      int h = pick(0, o.max_hbar);
      if (h) m = m * DiffPoly::hbar(ring, h);
    }
    out = out + m;
  }
  return out;
}

}  // namespace hier::testing
