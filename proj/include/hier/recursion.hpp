#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hier/functionals.hpp"
#include "hier/report.hpp"
#include "hier/ring.hpp"

namespace hier {

enum class ConstantsKind {
  Zero,    // u-independent constants normalized to zero
  Table,   // constants supplied per (alpha, d)
  String,  // const(G_{a,d}) := dG_{a,d+1}/du^1 at u = 0
};

// (alpha, d) with alpha 0-based.
using DensityKey = std::pair<int, int>;

struct ConstantsPolicy {
  ConstantsKind kind = ConstantsKind::Zero;
  std::map<DensityKey, DiffPoly> table;
};

struct HierarchySpec {
  std::string name;
  RingPtr ring;
  LocalFunctional generator;  // G-bar_{1,1}
  int d_max = 2;
  ConstantsPolicy constants;
};

class Hierarchy {
 public:
  const HierarchySpec& spec() const { return spec_; }
  const RingPtr& ring() const { return spec_.ring; }
  int n_vars() const { return spec_.ring->n_vars(); }
  int d_max() const { return spec_.d_max; }
  bool has(int alpha, int d) const { return densities_.count({alpha, d}) > 0; }
  const DiffPoly& density(int alpha, int d) const;
  LocalFunctional functional(int alpha, int d) const { return integrate(density(alpha, d)); }
  const std::map<DensityKey, DiffPoly>& densities() const { return densities_; }

 private:
  friend Hierarchy generate(const HierarchySpec& spec);
  HierarchySpec spec_;
  std::map<DensityKey, DiffPoly> densities_;
};

// Drops the tail above the exact u-degree.
DiffPoly exact_part(const DiffPoly& f);

// (D-1)^{-1} dx^{-1} of the bracket with the generator; no constant term.
DiffPoly recursion_step(const DiffPoly& g, const LocalFunctional& generator);

// Throws NotExact or WeightOneComponent when the generator is not of DR type.
Hierarchy generate(const HierarchySpec& spec);

using LevelPair = std::pair<DensityKey, DensityKey>;
// All unordered pairs of levels -1..d_max over every component, distinct entries only.
std::vector<LevelPair> all_pairs(const Hierarchy& h, int d_max);

Report verify_commutativity(const Hierarchy& h, const std::vector<LevelPair>& pairs);
Report string_check(const Hierarchy& h);
Report second_recursion_check(const Hierarchy& h);

class TauStructure {
 public:
  explicit TauStructure(const Hierarchy& h);

  const Hierarchy& hierarchy() const { return h_; }
  // h_{alpha,p} = delta g-bar_{alpha,p+1} / delta u^1, p = -1..d_max-1.
  const DiffPoly& density(int alpha, int p) const;
  const std::map<DensityKey, DiffPoly>& densities() const { return dens_; }
  // Vanishes at u = 0; dx(result) = {h_{alpha,p-1}, g-bar_{beta,q}}.
  DiffPoly omega(int alpha, int p, int beta, int q) const;

 private:
  Hierarchy h_;
  std::map<DensityKey, DiffPoly> dens_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<DensityKey, DensityKey>, DiffPoly> omega_;
};

// Classical mode only.
TauStructure tau_structure(const Hierarchy& h);
Report tau_symmetry_check(const TauStructure& t);
// Omega symmetry on every pair with p, q in 0..d_max.
Report omega_symmetry_check(const TauStructure& t);

// u~^alpha = D^{-1} eta^{alpha mu} d/du^mu (delta g-bar_{1,1}/delta u^1).
std::vector<DiffPoly> normal_coordinates(const LocalFunctional& generator);
inline std::vector<DiffPoly> normal_coordinates(const Hierarchy& h) { return normal_coordinates(h.spec().generator); }

// Truncated exp(sum t^a_i (1/hbar)[., G-bar_{a,i}]) f, times given as coefficients (usually ring parameters).
DiffPoly evolve_density(const DiffPoly& f, const Hierarchy& h, const std::map<DensityKey, Coefficient>& times,
                        int order);

Json hierarchy_to_json(const Hierarchy& h);

}  // namespace hier
