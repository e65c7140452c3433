#pragma once

#include <stdexcept>
#include <vector>

#include "hier/ring.hpp"

namespace hier {

struct Inconsistent : std::domain_error {
  using std::domain_error::domain_error;
};

// rows * x = rhs. Entries and right-hand sides are constant polynomials in the ring parameters.
struct LinearSystem {
  int n_unknowns = 0;
  std::vector<std::vector<DiffPoly>> rows;
  std::vector<DiffPoly> rhs;

  void add_row(std::vector<DiffPoly> row, DiffPoly value);
};

struct LinearSolution {
  // x = particular + sum_f t_f kernel[f]
  std::vector<DiffPoly> particular;
  std::vector<int> free_vars;
  std::vector<std::vector<DiffPoly>> kernel;
  int rank = 0;
  // Right-hand sides of zero rows, when collected instead of raising Inconsistent.
  std::vector<DiffPoly> obstructions;
  // With numeric pivots only: rows left with parameter-dependent entries in free columns.
  LinearSystem residual;
};

struct SolveOptions {
  bool collect_obstructions = false;
  bool numeric_pivots_only = false;
};

// Fraction-free elimination over polynomials in the parameters, valid for generic parameter values.
// Numeric pivots are preferred. Kernel vectors are scaled to stay polynomial; a particular solution
// that is not polynomial raises std::domain_error. Throws Inconsistent.
LinearSolution solve_linear(const LinearSystem& sys, const DiffPoly& zero, SolveOptions opts = {});

// Forward elimination of the first n_eliminate columns; returns the rows free of them, restricted to
// the remaining columns.
LinearSystem eliminate_columns(const LinearSystem& sys, int n_eliminate, const DiffPoly& zero);

}  // namespace hier
