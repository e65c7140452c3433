#pragma once

#include <map>
#include <shared_mutex>
#include <vector>

#include "hier/functionals.hpp"
#include "hier/ring.hpp"

namespace hier {

struct ModeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// sum_j coeffs[j] dx^j
struct DiffOperator {
  std::map<int, DiffPoly> coeffs;

  bool is_zero() const;
  DiffPoly apply(const DiffPoly& f) const;
};

DiffOperator compose(const DiffOperator& a, const DiffOperator& b, const RingPtr& ring);
DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
bool operator==(const DiffOperator& a, const DiffOperator& b);

class HamiltonianOperator {
 public:
  HamiltonianOperator() = default;
  HamiltonianOperator(RingPtr ring, std::vector<std::vector<DiffOperator>> entries);
  // eta^{mu nu} dx
  static HamiltonianOperator eta_dx(const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const DiffOperator& entry(int mu, int nu) const { return entries_[mu][nu]; }
  DiffOperator& entry(int mu, int nu) { return entries_[mu][nu]; }
  // Applies the matrix to a column of densities.
  std::vector<DiffPoly> apply(const std::vector<DiffPoly>& xs) const;

  friend bool operator==(const HamiltonianOperator& a, const HamiltonianOperator& b);

 private:
  RingPtr ring_;
  std::vector<std::vector<DiffOperator>> entries_;
};

DiffPoly poisson_local(const DiffPoly& f, const LocalFunctional& h, const HamiltonianOperator& K);
DiffPoly poisson_local(const DiffPoly& f, const LocalFunctional& h);
LocalFunctional poisson(const LocalFunctional& a, const LocalFunctional& b, const HamiltonianOperator& K);
LocalFunctional poisson(const LocalFunctional& a, const LocalFunctional& b);

// Ctilde_j, j = 0..n-1+sum(d), from prod Li_{-d_i} = sum_j Ctilde_j Li_{-j}; entry 0 is always 0.
std::vector<Rational> polylog_product_coeffs(const std::vector<int>& d);
// C_j after the sign/parity rule.
std::vector<Rational> commutator_coeffs(const std::vector<int>& a);

// Insert-only memo of C rows keyed by the sorted argument tuple.
class CCoeffTable {
 public:
  static CCoeffTable& global();
  const std::vector<Rational>& row(std::vector<int> a);
  size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::vector<int>, std::vector<Rational>> rows_;
};

// [f, g-bar] for the standard quantization; g is any representative.
DiffPoly star_commutator_local(const DiffPoly& f, const LocalFunctional& g);
DiffPoly star_commutator_local_serial(const DiffPoly& f, const LocalFunctional& g);
LocalFunctional star_commutator(const LocalFunctional& a, const LocalFunctional& b);
// (1/hbar)[f, g-bar]
DiffPoly quantum_bracket_local(const DiffPoly& f, const LocalFunctional& g);

// Classical or quantum bracket depending on the ring mode, normalized so both reduce to {f, g}.
DiffPoly hamiltonian_bracket_local(const DiffPoly& f, const LocalFunctional& g);

}  // namespace hier
