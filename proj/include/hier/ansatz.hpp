#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hier/linear.hpp"
#include "hier/ring.hpp"

namespace hier {

// IBP-irreducible monomials of genus g (eps^{2g-2j} hbar^j, degree 0 for j = 0 and <= 0 otherwise)
// whose variational derivatives are linearly independent. diff_degree_bound < 0 means 2g.
std::vector<DiffPoly> monomial_basis(const RingPtr& ring, int genus, int u_degree_bound,
                                     int diff_degree_bound = -1);

struct AnsatzOptions {
  int genus = 1;
  // Exactness of the brackets producing G_0 .. G_{d_check} is imposed.
  int d_check = 3;
  int u_degree_bound = 4;
  int diff_degree_bound = -1;
  // Genera g+1 .. g+lookahead are solved jointly and then projected away; they carry the
  // obstructions that tie the genus-g coefficients to lower genera.
  int lookahead = 0;
  // Prescribed genus-g terms, e.g. -(1/24) eps^2 u_1^2; each must reduce to basis monomials.
  std::optional<DiffPoly> anchor;
};

struct AnsatzSolution {
  int genus = 0;
  // Unknowns of genus g .. g + lookahead.
  std::vector<DiffPoly> basis;
  // Genus-g part: particular + sum_f t_f kernel[f].
  DiffPoly particular;
  std::vector<DiffPoly> kernel;
  int n_constraints = 0;
};

// Genus-g terms completing `known` (a density through genus g-1) to a DR-type generator.
AnsatzSolution solve_dr_type(const DiffPoly& known, const AnsatzOptions& opts);

// known + particular + sum_f names[f] kernel[f], in the ring extended by `names`.
DiffPoly assemble(const DiffPoly& known, const AnsatzSolution& sol, const std::vector<std::string>& names);

// Coefficients t with target = particular + sum t_f kernel[f] modulo total derivatives, if any.
std::optional<std::vector<DiffPoly>> family_coordinates(const AnsatzSolution& sol, const DiffPoly& target);

struct AnsatzRun {
  DiffPoly generator;
  std::vector<AnsatzSolution> genera;
  std::vector<std::string> free_params;
};

// Genus 0 .. max_genus in turn; new free directions become parameters s1, s2, ... in discovery order.
// anchors[g] fixes genus-g terms.
AnsatzRun solve_dr_type_through(const RingPtr& ring, int max_genus, const AnsatzOptions& base,
                                const std::map<int, DiffPoly>& anchors = {});

}  // namespace hier
