#include "hier/ansatz.hpp"


#include "hier/brackets.hpp"
#include "hier/functionals.hpp"
#include "hier/io.hpp"
#include "hier/recursion.hpp"

namespace hier {

namespace {

using Letters = std::vector<std::pair<int, int>>;  // (var, order), nondecreasing

void enumerate(int n_vars, int count, int budget, bool exact, Letters& cur, std::vector<Letters>& out) {
  if (count == 0) {
    if (!exact || budget == 0) out.push_back(cur);
    return;
  }
  std::pair<int, int> start = cur.empty() ? std::pair{0, 0} : cur.back();
  for (int v = start.first; v < n_vars; ++v)
    for (int k = v == start.first ? start.second : 0; k <= budget; ++k) {
      cur.push_back({v, k});
      enumerate(n_vars, count - 1, budget - k, exact, cur, out);
      cur.pop_back();
    }
}

struct KeyLess {
  bool operator()(const std::pair<int, Monomial>& a, const std::pair<int, Monomial>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return compare(a.second, b.second) < 0;
  }
};
using Vec = std::map<std::pair<int, Monomial>, Complex, KeyLess>;

// Rows in echelon form keyed by their smallest entry.
class Echelon {
 public:
  bool insert(Vec v) {
    while (!v.empty()) {
      auto it = rows_.find(v.begin()->first);
      if (it == rows_.end()) break;
      Complex f = v.begin()->second;
      for (const auto& [k, c] : it->second) {
        auto& slot = v[k];
        slot -= f * c;
        if (slot.is_zero()) v.erase(k);
      }
    }
    if (v.empty()) return false;
    Complex inv = Complex(1) / v.begin()->second;
    for (auto& [k, c] : v) c *= inv;
    auto key = v.begin()->first;
    rows_.emplace(key, std::move(v));
    return true;
  }

 private:
  std::map<std::pair<int, Monomial>, Vec, KeyLess> rows_;
};

Vec euler_vector(const DiffPoly& f) {
  Vec v;
  for (int b = 0; b < f.ring()->n_vars(); ++b) {
    DiffPoly e = euler_operator(f, b);
    for (const auto& t : e.terms()) v[{b, t.mono}] += t.coeff;
  }
  return v;
}

// Linear equations in chosen ring parameters, read off the coefficients of f.
class Equations {
 public:
  Equations(int first, int n) {
    for (int i = 0; i < n; ++i) idx_.push_back(first + i);
  }
  explicit Equations(std::vector<int> param_indices) : idx_(std::move(param_indices)) {}

  void add(const DiffPoly& f, const std::vector<int>& column) {
    const auto& ring = f.ring();
    std::map<Monomial, Row, MonomialLess> rows;
    for (const auto& t : f.terms()) {
      int total = 0;
      size_t which = 0;
      for (size_t i = 0; i < idx_.size(); ++i)
        if (int e = t.mono.params[idx_[i]]) {
          total += e;
          which = i;
        }
      Monomial key = t.mono;
      key.params.assign(key.params.size(), 0);
      Row& row = rows[key];
      if (total == 0) {
        Monomial m;
        m.params = t.mono.params;
        row.rhs.push_back({m, -t.coeff});
        continue;
      }
      if (total > 1) throw std::logic_error("ansatz constraint is not linear in the unknowns");
      if (column[which] < 0) throw std::logic_error("eliminated unknown reappeared");
      Monomial m;
      m.params = t.mono.params;
      m.params[idx_[which]] = 0;
      if (row.a.empty()) row.a.resize(cols_);
      row.a[column[which]].push_back({m, t.coeff});
    }
    for (auto& [k, row] : rows) {
      std::vector<DiffPoly> entries;
      for (int c = 0; c < cols_; ++c)
        entries.push_back(row.a.empty() ? DiffPoly(ring) : DiffPoly::from_terms(ring, std::move(row.a[c])));
      sys_.add_row(std::move(entries), DiffPoly::from_terms(ring, std::move(row.rhs)));
    }
  }

  void reset(int cols) {
    cols_ = cols;
    sys_ = LinearSystem{};
    sys_.n_unknowns = cols;
  }
  const LinearSystem& system() const { return sys_; }

 private:
  struct Row {
    std::vector<std::vector<Term>> a;
    std::vector<Term> rhs;
  };
  std::vector<int> idx_;
  int cols_ = 0;
  LinearSystem sys_;
};

std::string unknown_name(int i) { return "c" + std::to_string(i); }

class Solver {
 public:
  // `extra` further genera are solved jointly; `collect` keeps inconsistencies as obstructions.
  Solver(const DiffPoly& known, const AnsatzOptions& opts, int extra, bool collect)
      : opts_(opts), collect_(collect) {
    const auto& ring = known.ring();
    if (opts.genus < 0) throw std::invalid_argument("genus must be >= 0");
    if (opts.d_check < 1) throw std::invalid_argument("d_check must be >= 1");
    for (int g = opts.genus; g <= opts.genus + extra; ++g)
      for (auto& m : monomial_basis(ring, g, opts.u_degree_bound, opts.diff_degree_bound)) basis_.push_back(m);
    n_ = static_cast<int>(basis_.size());
    first_ = static_cast<int>(ring->params().size());
    auto params = ring->params();
    for (int i = 0; i < n_; ++i) {
      if (ring->param_index(unknown_name(i)) >= 0) throw std::invalid_argument("ring already has parameter c<i>");
      params.push_back(unknown_name(i));
    }
    work_ = ring->with_params(params)->with_window({2 * (opts.genus + extra), kUnbounded});
    known_ = lift(known, work_);
    h_ = known_;
    for (int i = 0; i < n_; ++i) {
      live_.push_back(i);
      h_ = h_ + DiffPoly::param(work_, unknown_name(i)) * lift(basis_[i], work_);
    }
    eq_ = Equations(first_, n_);
  }

  // Conditions left over in collect mode, each an expression that must vanish; linear in the
  // surviving unknowns and in any parameters the known part was linear in.
  const std::vector<DiffPoly>& residuals() const { return residuals_; }
  const RingPtr& work_ring() const { return work_; }
  int n_constraints() const { return n_constraints_; }
  std::vector<std::string> live_names() const {
    std::vector<std::string> out;
    for (int i : live_) out.push_back(unknown_name(i));
    return out;
  }

  AnsatzSolution run() {
    const auto& ring = work_;
    int nv = ring->n_vars();
    begin();
    if (opts_.anchor) {
      DiffPoly a = reduce_by_parts(lift(*opts_.anchor, ring)).remainder;
      std::vector<int> col = columns();
      for (const auto& t : a.terms()) {
        int idx = -1;
        for (int i = 0; i < n_; ++i)
          if (basis_[i].terms().front().mono.factors == t.mono.factors && basis_[i].terms().front().mono.eps == t.mono.eps &&
              basis_[i].terms().front().mono.hbar == t.mono.hbar)
            idx = i;
        if (idx < 0 || col[idx] < 0) throw std::invalid_argument("anchor term outside the ansatz: " + pretty(a));
        Monomial m;
        m.params = t.mono.params;
        eq_.add(DiffPoly::param(ring, unknown_name(idx)) - DiffPoly::monomial(ring, m, t.coeff), col);
      }
    }
    {
      DiffPoly quad(ring);
      for (int mu = 0; mu < nv; ++mu)
        for (int nu = 0; nu < nv; ++nu)
          if (!ring->eta()[mu][nu].is_zero())
            quad = quad + scale(ring->eta()[mu][nu] * Complex(make_rational(1, 2)),
                                DiffPoly::variable(ring, mu) * DiffPoly::variable(ring, nu));
      DiffPoly x = drop_constants(euler_operator(h_, 0) - quad);
      for (int b = 0; b < nv; ++b) eq_.add(euler_operator(x, b), columns());
    }
    commit();
    for (int alpha = 0; alpha < nv; ++alpha) {
      DiffPoly g(ring);
      for (int mu = 0; mu < nv; ++mu)
        if (!ring->eta()[alpha][mu].is_zero()) g = g + scale(ring->eta()[alpha][mu], DiffPoly::variable(ring, mu));
      std::vector<DiffPoly> levels{g};
      for (int p = -1; p < opts_.d_check; ++p) {
        DiffPoly b = exact_part(hamiltonian_bracket_local(g, integrate(h_)));
        begin();
        for (int be = 0; be < nv; ++be) eq_.add(euler_operator(b, be), columns());
        auto subs = commit();
        b = substitute_params(b, subs);
        // In collect mode b is exact only modulo the residual conditions; its remainder is
        // what they set to zero.
        g = d_minus_one_inverse(collect_ ? reduce_by_parts(b).antiderivative : dx_inverse(b));
        if (alpha == 0 && p == 0) {
          begin();
          for (int be = 0; be < nv; ++be) eq_.add(euler_operator(g - h_, be), columns());
          subs = commit();
          g = substitute_params(g, subs);
        }
        for (auto& l : levels) l = substitute_params(l, subs);
        levels.push_back(g);
      }
      // The levels must also commute among themselves.
      begin();
      for (size_t i = 0; i < levels.size(); ++i)
        for (size_t j = i + 1; j < levels.size(); ++j) {
          DiffPoly c = exact_part(hamiltonian_bracket_local(levels[i], integrate(levels[j])));
          for (int be = 0; be < nv; ++be) eq_.add(euler_operator(c, be), columns());
        }
      commit();
    }
    AnsatzSolution s;
    s.genus = opts_.genus;
    s.basis = basis_;
    s.n_constraints = n_constraints_;
    const auto& orig = basis_.empty() ? known_.ring() : basis_.front().ring();
    DiffPoly part = genus_part(h_ - known_);
    std::map<std::string, DiffPoly> zero;
    for (int i : live_) zero[unknown_name(i)] = DiffPoly(ring);
    s.particular = lift(substitute_params(part, zero), orig);
    Echelon independent;
    for (int i : live_) {
      std::vector<Term> terms;
      for (auto t : part.terms())
        if (t.mono.params[first_ + i] == 1) {
          t.mono.params[first_ + i] = 0;
          terms.push_back(t);
        }
      DiffPoly k = lift(DiffPoly::from_terms(ring, std::move(terms)), orig);
      // Directions living only at higher genus, or dependent after projection, drop out.
      if (!k.is_zero() && independent.insert(euler_vector(k))) s.kernel.push_back(k);
    }
    return s;
  }

 private:
  std::vector<int> columns() const {
    std::vector<int> col(n_, -1);
    for (size_t c = 0; c < live_.size(); ++c) col[live_[c]] = static_cast<int>(c);
    return col;
  }
  DiffPoly genus_part(const DiffPoly& f) const {
    std::vector<Term> terms;
    for (const auto& t : f.terms())
      if (t.mono.genus_order() == 2 * opts_.genus) terms.push_back(t);
    return DiffPoly::from_terms(f.ring(), std::move(terms));
  }
  void begin() { eq_.reset(static_cast<int>(live_.size())); }

  std::map<std::string, DiffPoly> commit() {
    const auto& sys = eq_.system();
    n_constraints_ += static_cast<int>(sys.rows.size());
    LinearSolution sol = solve_linear(sys, DiffPoly(work_), {collect_, collect_});
    for (auto& o : sol.obstructions) residuals_.push_back(-o);
    for (size_t r = 0; r < sol.residual.rows.size(); ++r) {
      DiffPoly e = -sol.residual.rhs[r];
      for (size_t c = 0; c < live_.size(); ++c)
        if (!sol.residual.rows[r][c].is_zero())
          e = e + sol.residual.rows[r][c] * DiffPoly::param(work_, unknown_name(live_[c]));
      residuals_.push_back(e);
    }
    std::vector<bool> is_free(live_.size(), false);
    for (int f : sol.free_vars) is_free[f] = true;
    std::map<std::string, DiffPoly> subs;
    // Free columns are reparametrized too when their kernel entry is not 1.
    for (size_t c = 0; c < live_.size(); ++c) {
      DiffPoly v = sol.particular[c];
      for (size_t f = 0; f < sol.free_vars.size(); ++f)
        if (!sol.kernel[f][c].is_zero())
          v = v + sol.kernel[f][c] * DiffPoly::param(work_, unknown_name(live_[sol.free_vars[f]]));
      DiffPoly self = DiffPoly::param(work_, unknown_name(live_[c]));
      if (!(v == self)) subs[unknown_name(live_[c])] = v;
    }
    std::vector<int> next;
    for (size_t c = 0; c < live_.size(); ++c)
      if (is_free[c]) next.push_back(live_[c]);
    live_ = std::move(next);
    if (!subs.empty()) {
      h_ = substitute_params(h_, subs);
      for (auto& e : residuals_) e = substitute_params(e, subs);
    }
    return subs;
  }

  AnsatzOptions opts_;
  bool collect_ = false;
  std::vector<DiffPoly> residuals_;
  std::vector<DiffPoly> basis_;
  int n_ = 0, first_ = 0, n_constraints_ = 0;
  RingPtr work_;
  DiffPoly known_, h_;
  std::vector<int> live_;
  Equations eq_{0, 0};
};

}  // namespace

std::vector<DiffPoly> monomial_basis(const RingPtr& ring, int genus, int u_degree_bound, int diff_degree_bound) {
  if (genus < 0 || u_degree_bound < 1) throw std::invalid_argument("monomial_basis: bad bounds");
  int dbound = diff_degree_bound < 0 ? 2 * genus : diff_degree_bound;
  std::vector<DiffPoly> out;
  Echelon independent;
  int max_j = ring->quantum() ? genus : 0;
  for (int j = 0; j <= max_j; ++j) {
    int eps = 2 * genus - 2 * j;
    bool exact = j == 0;
    if (exact && dbound < 2 * genus) continue;
    int budget = exact ? 2 * genus : std::min(dbound, 2 * genus);
    for (int n = 1; n <= u_degree_bound; ++n) {
      std::vector<Letters> words;
      Letters cur;
      enumerate(ring->n_vars(), n, budget, exact, cur, words);
      for (const auto& w : words) {
        DiffPoly m = DiffPoly::eps(ring, eps);
        if (j > 0) m = m * DiffPoly::hbar(ring, j);
        for (auto [v, k] : w) m = m * DiffPoly::variable(ring, v, k);
        if (m.is_zero()) continue;
        if (!(reduce_by_parts(m).remainder == m)) continue;
        if (independent.insert(euler_vector(m))) out.push_back(m);
      }
    }
  }
  return out;
}

AnsatzSolution solve_dr_type(const DiffPoly& known, const AnsatzOptions& opts) {
  if (opts.lookahead < 0) throw std::invalid_argument("lookahead must be >= 0");
  AnsatzSolution base = Solver(known, opts, 0, false).run();
  if (opts.lookahead == 0 || base.kernel.empty()) return base;
  if (opts.lookahead > opts.genus + 1)
    throw std::invalid_argument("lookahead must not exceed genus + 1 (the joint system would be nonlinear)");
  // The free directions become parameters t_f; higher genera are solved for them and their
  // inconsistencies are polynomial conditions on t.
  const auto& ring = known.ring();
  const int k = static_cast<int>(base.kernel.size());
  auto params = ring->params();
  const int first = static_cast<int>(params.size());
  for (int f = 0; f < k; ++f) params.push_back("t" + std::to_string(f) + "_");
  RingPtr r = ring->with_params(params);
  DiffPoly next = lift(known, r) + lift(base.particular, r);
  for (int f = 0; f < k; ++f) next = next + DiffPoly::param(r, params[first + f]) * lift(base.kernel[f], r);
  AnsatzOptions up = opts;
  up.genus = opts.genus + 1;
  up.anchor.reset();
  Solver higher(next, up, opts.lookahead - 1, true);
  higher.run();
  // Unknowns: surviving higher-genus coefficients first, then t.
  const RingPtr& w = higher.work_ring();
  std::vector<int> idx;
  for (const auto& name : higher.live_names()) idx.push_back(w->param_index(name));
  const int nc = static_cast<int>(idx.size());
  for (int f = 0; f < k; ++f) idx.push_back(w->param_index(params[first + f]));
  Equations eq(idx);
  eq.reset(static_cast<int>(idx.size()));
  std::vector<int> col(idx.size());
  for (size_t c = 0; c < idx.size(); ++c) col[c] = static_cast<int>(c);
  for (const auto& e : higher.residuals()) eq.add(e, col);
  LinearSystem tsys = eliminate_columns(eq.system(), nc, DiffPoly(w));
  LinearSolution wts = solve_linear(tsys, DiffPoly(w));
  LinearSolution ts;
  for (auto& p : wts.particular) ts.particular.push_back(lift(p, r));
  for (auto& kv : wts.kernel) {
    std::vector<DiffPoly> v;
    for (auto& p : kv) v.push_back(lift(p, r));
    ts.kernel.push_back(std::move(v));
  }
  AnsatzSolution out = base;
  out.n_constraints += higher.n_constraints();
  DiffPoly part = lift(base.particular, r);
  for (int f = 0; f < k; ++f) part = part + ts.particular[f] * lift(base.kernel[f], r);
  out.particular = lift(part, ring);
  out.kernel.clear();
  for (const auto& kv : ts.kernel) {
    DiffPoly d(r);
    for (int f = 0; f < k; ++f) d = d + kv[f] * lift(base.kernel[f], r);
    out.kernel.push_back(lift(d, ring));
  }
  return out;
}

DiffPoly assemble(const DiffPoly& known, const AnsatzSolution& sol, const std::vector<std::string>& names) {
  if (names.size() != sol.kernel.size()) throw std::invalid_argument("one name per free direction");
  const auto& ring = known.ring();
  auto params = ring->params();
  for (const auto& n : names)
    if (ring->param_index(n) < 0) params.push_back(n);
  RingPtr r = ring->with_params(params);
  DiffPoly out = lift(known, r) + lift(sol.particular, r);
  for (size_t f = 0; f < names.size(); ++f) out = out + DiffPoly::param(r, names[f]) * lift(sol.kernel[f], r);
  return out;
}

std::optional<std::vector<DiffPoly>> family_coordinates(const AnsatzSolution& sol, const DiffPoly& target) {
  const auto& ring = target.ring();
  int first = static_cast<int>(ring->params().size());
  int n = static_cast<int>(sol.kernel.size());
  auto params = ring->params();
  for (int f = 0; f < n; ++f) params.push_back("t" + std::to_string(f) + "_");
  RingPtr r = ring->with_params(params);
  DiffPoly x = lift(target, r) - lift(sol.particular, r);
  for (int f = 0; f < n; ++f) x = x - DiffPoly::param(r, params[first + f]) * lift(sol.kernel[f], r);
  Equations eq(first, n);
  eq.reset(n);
  std::vector<int> col(n);
  for (int f = 0; f < n; ++f) col[f] = f;
  for (int b = 0; b < r->n_vars(); ++b) eq.add(euler_operator(x, b), col);
  try {
    auto s = solve_linear(eq.system(), DiffPoly(r));
    if (!s.free_vars.empty()) throw std::logic_error("kernel directions are dependent");
    std::vector<DiffPoly> out;
    for (auto& p : s.particular) out.push_back(lift(p, ring));
    return out;
  } catch (const Inconsistent&) {
    return std::nullopt;
  }
}

AnsatzRun solve_dr_type_through(const RingPtr& ring, int max_genus, const AnsatzOptions& base,
                                const std::map<int, DiffPoly>& anchors) {
  AnsatzRun run;
  run.generator = DiffPoly(ring);
  int next = 1;
  for (int g = 0; g <= max_genus; ++g) {
    AnsatzOptions o = base;
    o.genus = g;
    o.anchor.reset();
    if (auto it = anchors.find(g); it != anchors.end()) o.anchor = lift(it->second, run.generator.ring());
    AnsatzSolution sol = solve_dr_type(run.generator, o);
    std::vector<std::string> names;
    for (size_t f = 0; f < sol.kernel.size(); ++f) {
      std::string name;
      do name = "s" + std::to_string(next++);
      while (run.generator.ring()->param_index(name) >= 0);
      names.push_back(name);
    }
    run.generator = assemble(run.generator, sol, names);
    run.free_params.insert(run.free_params.end(), names.begin(), names.end());
    run.genera.push_back(std::move(sol));
  }
  return run;
}

}  // namespace hier
