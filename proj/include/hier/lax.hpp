#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hier/brackets.hpp"
#include "hier/functionals.hpp"
#include "hier/io.hpp"
#include "hier/ring.hpp"

namespace hier {

// sum_j coeffs[j] D^j with D = eps dx, stored for j = top .. top - depth.
// finite: every order below top - depth is known to vanish (a differential operator, or a
// finite sum of negative powers written out exactly).
struct PseudoDiffOp {
  RingPtr ring;
  int top = 0;
  int depth = 0;
  bool finite = false;
  std::map<int, DiffPoly> coeffs;

  int low() const { return top - depth; }
  DiffPoly coeff(int j) const;
  void set(int j, const DiffPoly& c);

  static PseudoDiffOp zero(const RingPtr& ring);
  static PseudoDiffOp identity(const RingPtr& ring);
  // c D^j, exact.
  static PseudoDiffOp term(const DiffPoly& c, int j);
};

PseudoDiffOp operator+(const PseudoDiffOp& a, const PseudoDiffOp& b);
PseudoDiffOp operator-(const PseudoDiffOp& a, const PseudoDiffOp& b);
PseudoDiffOp scale(const Complex& c, const PseudoDiffOp& a);
// Equal on every order both operands know.
bool agree(const PseudoDiffOp& a, const PseudoDiffOp& b);

// Generalized Leibniz rule. The result is reliable down to
// max(a.low + b.top, a.top + b.low); when both inputs are finite and a has negative
// orders the series is infinite and floor must say where to stop.
PseudoDiffOp compose(const PseudoDiffOp& a, const PseudoDiffOp& b,
                     std::optional<int> floor = std::nullopt);
PseudoDiffOp commutator(const PseudoDiffOp& a, const PseudoDiffOp& b,
                        std::optional<int> floor = std::nullopt);
PseudoDiffOp power(const PseudoDiffOp& a, int n);
PseudoDiffOp positive_part(const PseudoDiffOp& a);
DiffPoly res(const PseudoDiffOp& a);

// Variables f0 .. f_{r-2}.
RingPtr gd_ring(int r);
// D^r + f_{r-2} D^{r-2} + ... + f0
PseudoDiffOp gd_lax_operator(const RingPtr& ring, int r);

// Monic first-order root, depth orders below D.
PseudoDiffOp rth_root(const PseudoDiffOp& L, int r, int depth);

// -(r/(m+r)) int res L^{(m+r)/r}
LocalFunctional gd_hamiltonian(const PseudoDiffOp& L, int m);
// i -> eps df_i/dT_m, i = 0 .. r-2, from [(L^{m/r})_+, L].
std::map<int, DiffPoly> gd_flow(const PseudoDiffOp& L, int m);

// [X, L]_+ coefficients of D^alpha, alpha = 0 .. r-2,
// for X = D^{-(r-1)} X_{r-2} + ... + D^{-1} X_0.
std::vector<DiffPoly> gd_operator_bracket(const PseudoDiffOp& L, const std::vector<DiffPoly>& x);
// The matrix operator K^GD with (K X)_alpha equal to the coefficients above.
HamiltonianOperator gd_operator(const PseudoDiffOp& L);

// u~^alpha = scaled / sqrt(-r) when over_sqrt_minus_r, else scaled.
// The half-integer powers of -r cannot be written over the Gaussian rationals.
struct NormalCoordinate {
  DiffPoly scaled;
  bool over_sqrt_minus_r = false;
};
// alpha = 1 .. r-1
std::map<int, NormalCoordinate> gd_normal_coords(const PseudoDiffOp& L);

Json to_json(const PseudoDiffOp& a);
PseudoDiffOp pseudo_from_json(const Json& doc, const RingPtr& ring);

}  // namespace hier
