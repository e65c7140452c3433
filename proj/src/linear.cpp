#include "hier/linear.hpp"

#include <map>

#include "hier/io.hpp"

namespace hier {

namespace {

// Polynomial in the ring parameters; lexicographic order on exponent vectors.
using Exps = std::vector<int>;
using Poly = std::map<Exps, Complex>;

Poly to_poly(const DiffPoly& f) {
  Poly p;
  for (const auto& t : f.terms()) {
    if (!t.mono.factors.empty() || t.mono.eps || t.mono.hbar)
      throw std::invalid_argument("linear system entries must be parameter polynomials");
    p[t.mono.params] += t.coeff;
  }
  return p;
}

DiffPoly from_poly(const Poly& p, const RingPtr& ring) {
  std::vector<Term> terms;
  for (const auto& [e, c] : p) {
    Monomial m;
    m.params = e;
    terms.push_back({m, c});
  }
  return DiffPoly::from_terms(ring, std::move(terms));
}

bool is_constant(const Poly& p) {
  if (p.size() != 1) return p.empty();
  for (int e : p.begin()->first)
    if (e) return false;
  return true;
}

void add_scaled(Poly& a, const Poly& b, const Poly& f, bool negate) {
  for (const auto& [eb, cb] : b)
    for (const auto& [ef, cf] : f) {
      Exps e = eb;
      for (size_t i = 0; i < e.size(); ++i) e[i] += ef[i];
      Complex c = cb * cf;
      auto& slot = a[e];
      if (negate) slot -= c;
      else slot += c;
      if (slot.is_zero()) a.erase(e);
    }
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  add_scaled(out, a, b, false);
  return out;
}

Poly scaled(const Poly& a, const Complex& c) {
  Poly out;
  if (c.is_zero()) return out;
  for (const auto& [e, x] : a) out[e] = x * c;
  return out;
}

// a / b if exact.
bool divide(const Poly& a, const Poly& b, Poly& q) {
  q.clear();
  Poly r = a;
  const auto& [lb, cb] = *b.rbegin();
  while (!r.empty()) {
    const auto [lr, cr] = *r.rbegin();
    Exps e = lr;
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] -= lb[i];
      if (e[i] < 0) return false;
    }
    Poly t{{e, cr / cb}};
    q[e] += cr / cb;
    add_scaled(r, b, t, true);
  }
  return true;
}

}  // namespace

void LinearSystem::add_row(std::vector<DiffPoly> row, DiffPoly value) {
  if (static_cast<int>(row.size()) != n_unknowns) throw std::invalid_argument("row length mismatch");
  rows.push_back(std::move(row));
  rhs.push_back(std::move(value));
}

namespace {

using Dense = std::vector<std::vector<Poly>>;

Dense to_dense(const LinearSystem& sys, const RingPtr& ring) {
  Dense a;
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    std::vector<Poly> row;
    for (const auto& e : sys.rows[r]) row.push_back(to_poly(lift(e, ring)));
    row.push_back(to_poly(lift(sys.rhs[r], ring)));
    a.push_back(std::move(row));
  }
  return a;
}

// Echelon form over the first `cols` columns; column n of each row is the right-hand side.
// Returns the pivot columns; rows [pivots, m) are left over.
std::vector<int> forward(Dense& a, int n, int cols, bool numeric_only) {
  const size_t m = a.size();
  std::vector<int> pivot_col;
  size_t row = 0;
  for (int col = 0; col < cols && row < m; ++col) {
    size_t best = m;
    for (size_t r = row; r < m; ++r) {
      const Poly& e = a[r][col];
      if (e.empty() || (numeric_only && !is_constant(e))) continue;
      if (best == m || (is_constant(e) && !is_constant(a[best][col])) ||
          (!is_constant(a[best][col]) && e.size() < a[best][col].size()))
        best = r;
    }
    if (best == m) continue;
    std::swap(a[best], a[row]);
    const Poly p = a[row][col];
    const bool numeric = is_constant(p);
    if (numeric) {
      Complex inv = Complex(1) / p.begin()->second;
      for (int j = col; j <= n; ++j) a[row][j] = scaled(a[row][j], inv);
    }
    for (size_t r = 0; r < m; ++r) {
      if (r == row || a[r][col].empty()) continue;
      // Rows above are only cleared when that needs no scaling.
      if (r < row && !numeric) continue;
      Poly f = a[r][col];
      for (int j = 0; j <= n; ++j) {
        if (!numeric) a[r][j] = mul(a[r][j], p);
        if (!a[row][j].empty()) add_scaled(a[r][j], a[row][j], f, true);
      }
    }
    pivot_col.push_back(col);
    ++row;
  }
  return pivot_col;
}

}  // namespace

LinearSystem eliminate_columns(const LinearSystem& sys, int n_eliminate, const DiffPoly& zero) {
  const int n = sys.n_unknowns;
  if (n_eliminate < 0 || n_eliminate > n) throw std::invalid_argument("eliminate_columns: bad count");
  Dense a = to_dense(sys, zero.ring());
  auto piv = forward(a, n, n_eliminate, false);
  LinearSystem out;
  out.n_unknowns = n - n_eliminate;
  for (size_t r = piv.size(); r < a.size(); ++r) {
    std::vector<DiffPoly> row;
    for (int j = n_eliminate; j < n; ++j) row.push_back(from_poly(a[r][j], zero.ring()));
    out.add_row(std::move(row), from_poly(a[r][n], zero.ring()));
  }
  return out;
}

LinearSolution solve_linear(const LinearSystem& sys, const DiffPoly& zero, SolveOptions opts) {
  const int n = sys.n_unknowns;
  const RingPtr& ring = zero.ring();
  Dense a = to_dense(sys, ring);
  const size_t m = a.size();
  std::vector<int> pivot_col = forward(a, n, n, opts.numeric_pivots_only);
  const size_t row = pivot_col.size();
  LinearSolution s;
  s.residual.n_unknowns = n;
  for (size_t r = row; r < m; ++r) {
    bool empty = true;
    for (int j = 0; j < n && empty; ++j) empty = a[r][j].empty();
    if (!empty) {
      std::vector<DiffPoly> entries;
      for (int j = 0; j < n; ++j) entries.push_back(from_poly(a[r][j], ring));
      s.residual.add_row(std::move(entries), from_poly(a[r][n], ring));
      continue;
    }
    if (a[r][n].empty()) continue;
    DiffPoly residual = from_poly(a[r][n], ring);
    if (!opts.collect_obstructions) throw Inconsistent("linear system is inconsistent: 0 = " + pretty(residual));
    s.obstructions.push_back(residual);
  }
  if (!opts.numeric_pivots_only && !s.residual.rows.empty())
    throw std::logic_error("elimination left unreduced rows");

  s.rank = static_cast<int>(row);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int f = 0; f < n; ++f)
    if (!is_pivot[f]) s.free_vars.push_back(f);

  // Back substitution; `scalable` vectors may be rescaled to avoid fractions.
  auto back = [&](std::vector<Poly> x, int rhs_col, bool scalable) {
    for (int r = static_cast<int>(pivot_col.size()) - 1; r >= 0; --r) {
      int c = pivot_col[r];
      Poly num;
      if (rhs_col >= 0) num = a[r][rhs_col];
      for (int j = 0; j < n; ++j)
        if (j != c && !a[r][j].empty() && !x[j].empty()) add_scaled(num, a[r][j], x[j], true);
      Poly q;
      if (num.empty()) {
        x[c].clear();
      } else if (divide(num, a[r][c], q)) {
        x[c] = q;
      } else if (scalable) {
        // Scaling every entry by the pivot scales num by it as well.
        for (auto& v : x) v = mul(v, a[r][c]);
        x[c] = num;
      } else {
        throw std::domain_error("solution is not polynomial in the parameters");
      }
    }
    return x;
  };
  {
    std::vector<Poly> x(n);
    x = back(x, n, false);
    for (const auto& p : x) s.particular.push_back(from_poly(p, ring));
  }
  for (int f : s.free_vars) {
    std::vector<Poly> x(n);
    x[f] = Poly{{Exps(ring->params().size(), 0), Complex(1)}};
    x = back(x, -1, true);
    std::vector<DiffPoly> k;
    for (const auto& p : x) k.push_back(from_poly(p, ring));
    s.kernel.push_back(std::move(k));
  }
  return s;
}

}  // namespace hier
