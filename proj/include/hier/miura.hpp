#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hier/brackets.hpp"
#include "hier/io.hpp"
#include "hier/recursion.hpp"

namespace hier {

struct SingularAtEpsilonZero : std::domain_error {
  using std::domain_error::domain_error;
};

// u -> u~(u; eps). Images and inverses share the ring's variables.
class MiuraMap {
 public:
  MiuraMap() = default;
  explicit MiuraMap(std::vector<DiffPoly> images);
  static MiuraMap identity(const RingPtr& ring);

  const RingPtr& ring() const { return images_.front().ring(); }
  int size() const { return static_cast<int>(images_.size()); }
  const std::vector<DiffPoly>& images() const { return images_; }
  const DiffPoly& image(int alpha) const { return images_.at(alpha); }

  // u^alpha in terms of u~, correct through eps^eps_order; computed once per order.
  const std::vector<DiffPoly>& inverse_images(int eps_order) const;

  Json to_json() const;

 private:
  std::vector<DiffPoly> images_;
  struct Cache {
    std::mutex mu;
    std::map<int, std::vector<DiffPoly>> inverses;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Jacobian of the eps = 0 linear part; throws SingularAtEpsilonZero.
Matrix leading_jacobian(const MiuraMap& m);

MiuraMap invert(const MiuraMap& m, int eps_order);
// First a, then b: u -> b(a(u)).
MiuraMap compose(const MiuraMap& a, const MiuraMap& b);
// f(u) rewritten in the new coordinates.
DiffPoly push_density(const DiffPoly& f, const MiuraMap& m, int eps_order);
LocalFunctional push_functional(const LocalFunctional& h, const MiuraMap& m, int eps_order);
// L* o K o L with coefficients rewritten in the new coordinates.
HamiltonianOperator push_operator(const HamiltonianOperator& k, const MiuraMap& m, int eps_order);

struct NormalMiura {
  MiuraMap map;
  // h~_{beta,q} as differential polynomials in the old coordinates.
  std::map<DensityKey, DiffPoly> densities;
};

// u~ = u + eta dx {F, h-bar_{mu,0}}, h~_{b,q} = h_{b,q} + dx {F, h-bar_{b,q+1}}.
NormalMiura normal_miura(const DiffPoly& f, const TauStructure& tau);
// Tau-symmetry of the transformed densities, in the new coordinates under the pushed operator.
Report normal_tau_check(const NormalMiura& nm, const Hierarchy& h, int eps_order);

}  // namespace hier
