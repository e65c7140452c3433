#pragma once

#include <stdexcept>
#include <vector>

#include "hier/ring.hpp"

namespace hier {

struct NotExact : std::domain_error {
  using std::domain_error::domain_error;
};

struct WeightOneComponent : std::domain_error {
  using std::domain_error::domain_error;
};

// Class of a density modulo total x-derivatives and constants.
class LocalFunctional {
 public:
  LocalFunctional() = default;
  // Stores the reduced representative.
  explicit LocalFunctional(const DiffPoly& density);

  const DiffPoly& repr() const { return repr_; }
  const RingPtr& ring() const { return repr_.ring(); }
  bool is_zero() const;

  friend bool operator==(const LocalFunctional& a, const LocalFunctional& b);

 private:
  DiffPoly repr_;
};

inline LocalFunctional integrate(const DiffPoly& f) { return LocalFunctional(f); }

// f = remainder + dx(antiderivative); remainder has no monomial linear in its top factor.
struct PartsReduction {
  DiffPoly remainder;
  DiffPoly antiderivative;
};
PartsReduction reduce_by_parts(const DiffPoly& f);

// sum_k (-dx)^k d/du^var_k
DiffPoly euler_operator(const DiffPoly& f, int var);
DiffPoly variational_derivative(const LocalFunctional& h, int var);
std::vector<DiffPoly> variational_gradient(const DiffPoly& f);
bool is_total_derivative(const DiffPoly& f);

DiffPoly dx_inverse(const DiffPoly& f);
DiffPoly d_minus_one_inverse(const DiffPoly& f);
// Each monomial divided by its D-weight; u-free monomials of weight 0 rejected.
DiffPoly d_inverse(const DiffPoly& f);

}  // namespace hier
