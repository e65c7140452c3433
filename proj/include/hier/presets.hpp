#pragma once

#include <string>
#include <vector>

#include "hier/recursion.hpp"

namespace hier {

struct PresetOptions {
  Mode mode = Mode::Classical;
  int d_max = 2;
  // Largest eps^a hbar^b with a + 2b kept; ILW and Toda need it finite.
  int max_order = kUnbounded;
  int max_u_degree = kUnbounded;
  ConstantsKind constants = ConstantsKind::Zero;
};

std::vector<std::string> preset_names();
// kdv, ilw, toda, 3-spin, 4-spin, 5-spin, rank1.
HierarchySpec preset(const std::string& name, const PresetOptions& opts);

RingPtr kdv_ring(Mode mode, TruncationWindow window = {});
DiffPoly kdv_generator(const RingPtr& ring);
// Quantum KdV constants of G_0, G_1, G_2 in the ring.
ConstantsPolicy kdv_paper_constants(const RingPtr& ring);

// Parameter "mu"; needs a finite max_order.
RingPtr ilw_ring(Mode mode, TruncationWindow window);
DiffPoly ilw_generator(const RingPtr& ring);
// The normal Miura generator F and the resulting map u -> u + ...
DiffPoly ilw_miura_generator(const RingPtr& ring);
DiffPoly ilw_miura_image(const RingPtr& ring);

// Variables u1 and uw, eta off-diagonal, parameter "q"; needs finite max_order and max_u_degree.
RingPtr toda_ring(Mode mode, TruncationWindow window);
DiffPoly toda_generator(const RingPtr& ring);

// r in {3, 4, 5}; eta_{ab} = delta_{a+b,r}. 5-spin is classical only.
RingPtr rspin_ring(int r, Mode mode, TruncationWindow window = {});
DiffPoly rspin_generator(const RingPtr& ring, int r);

// Parameters s1, s2, s3 and the genus counter "gamma" (as a power of the parameter).
RingPtr rank1_ring(Mode mode, TruncationWindow window = {});
// Generator through gamma^max_genus (max_genus <= 3).
DiffPoly rank1_generator(const RingPtr& ring, int max_genus);

// S(y) = (e^{y/2} - e^{-y/2})/y = sum_k y^{2k} / (4^k (2k+1)!)
Rational s_series_coeff(int k);

// Coefficient of z^d in the dispersionless quantum KdV closed form, d >= -1.
DiffPoly kdv_closed_form(const RingPtr& ring, int d);

}  // namespace hier
