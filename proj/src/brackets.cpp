#include "hier/brackets.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hier {

// ---- operators

bool DiffOperator::is_zero() const {
  for (const auto& [j, c] : coeffs)
    if (!c.is_zero()) return false;
  return true;
}

DiffPoly DiffOperator::apply(const DiffPoly& f) const {
  DiffPoly out(f.ring());
  DiffPoly d = f;
  int at = 0;
  for (const auto& [j, c] : coeffs) {
    if (c.is_zero()) continue;
    while (at < j) {
      d = dx(d);
      ++at;
    }
    out = out + c * d;
  }
  return out;
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b, const RingPtr& ring) {
  std::map<int, TermMap> acc;
  for (const auto& [i, ai] : a.coeffs) {
    if (ai.is_zero()) continue;
    for (const auto& [j, bj] : b.coeffs) {
      if (bj.is_zero()) continue;
      DiffPoly d = bj;
      for (int l = 0; l <= i; ++l) {
        if (l) d = dx(d);
        if (d.is_zero()) break;
        acc[i - l + j].add_scaled(ai * d, Complex(binomial(i, l)));
      }
    }
  }
  DiffOperator out;
  for (auto& [k, tm] : acc) {
    DiffPoly c = tm.finish(ring);
    if (!c.is_zero()) out.coeffs.emplace(k, std::move(c));
  }
  return out;
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator out = a;
  for (const auto& [j, c] : b.coeffs) {
    auto it = out.coeffs.find(j);
    if (it == out.coeffs.end()) {
      out.coeffs.emplace(j, c);
    } else {
      it->second = it->second + c;
    }
  }
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();) {
    if (it->second.is_zero()) {
      it = out.coeffs.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
  auto strip = [](const DiffOperator& o) {
    std::vector<std::pair<int, const DiffPoly*>> v;
    for (const auto& [j, c] : o.coeffs)
      if (!c.is_zero()) v.emplace_back(j, &c);
    return v;
  };
  auto x = strip(a), y = strip(b);
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i].first != y[i].first || !(*x[i].second == *y[i].second)) return false;
  return true;
}

HamiltonianOperator::HamiltonianOperator(RingPtr ring, std::vector<std::vector<DiffOperator>> entries)
    : ring_(std::move(ring)), entries_(std::move(entries)) {
  int n = ring_->n_vars();
  if (static_cast<int>(entries_.size()) != n) throw std::invalid_argument("operator size must equal n_vars");
  for (const auto& row : entries_)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("operator size must equal n_vars");
}

HamiltonianOperator HamiltonianOperator::eta_dx(const RingPtr& ring) {
  int n = ring->n_vars();
  std::vector<std::vector<DiffOperator>> e(n, std::vector<DiffOperator>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!ring->eta_inv()[a][b].is_zero()) e[a][b].coeffs.emplace(1, DiffPoly::constant(ring, ring->eta_inv()[a][b]));
  return HamiltonianOperator(ring, std::move(e));
}

std::vector<DiffPoly> HamiltonianOperator::apply(const std::vector<DiffPoly>& xs) const {
  std::vector<DiffPoly> out;
  for (int mu = 0; mu < size(); ++mu) {
    DiffPoly acc(ring_);
    for (int nu = 0; nu < size(); ++nu) acc = acc + entries_[mu][nu].apply(xs[nu]);
    out.push_back(acc);
  }
  return out;
}

bool operator==(const HamiltonianOperator& a, const HamiltonianOperator& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (!(a.entries_[i][j] == b.entries_[i][j])) return false;
  return true;
}

// ---- classical bracket

namespace {

void require_classical(const DiffPoly& f) {
  for (const auto& t : f.terms())
    if (t.mono.hbar) throw ModeMismatch("classical bracket applied to an hbar-dependent density");
}

int sat_sub(int a, int b) { return a == kUnbounded ? a : a - b; }

}  // namespace

DiffPoly poisson_local(const DiffPoly& f, const LocalFunctional& h, const HamiltonianOperator& K) {
  require_same_ring(f, h.repr());
  require_classical(f);
  require_classical(h.repr());
  const auto& ring = f.ring();
  auto grad = variational_gradient(h.repr());
  auto w = K.apply(grad);
  TermMap acc;
  for (int mu = 0; mu < ring->n_vars(); ++mu) {
    int top = f.max_order(mu);
    DiffPoly d = w[mu];
    for (int s = 0; s <= top; ++s) {
      if (s) d = dx(d);
      DiffPoly p = partial(f, mu, s);
      if (!p.is_zero() && !d.is_zero()) acc.add(p * d);
    }
  }
  int exact = std::min(f.exact_u_degree(), sat_sub(h.repr().exact_u_degree(), 1));
  return acc.finish(ring, exact);
}

DiffPoly poisson_local(const DiffPoly& f, const LocalFunctional& h) {
  return poisson_local(f, h, HamiltonianOperator::eta_dx(f.ring()));
}

LocalFunctional poisson(const LocalFunctional& a, const LocalFunctional& b, const HamiltonianOperator& K) {
  return integrate(poisson_local(a.repr(), b, K));
}

LocalFunctional poisson(const LocalFunctional& a, const LocalFunctional& b) {
  return poisson(a, b, HamiltonianOperator::eta_dx(a.ring()));
}

// ---- polylogarithm coefficients

std::vector<Rational> polylog_product_coeffs(const std::vector<int>& d) {
  if (d.empty()) throw std::invalid_argument("empty polylog product");
  int n = static_cast<int>(d.size());
  int m = n - 1;
  for (int x : d) {
    if (x < 1) throw std::invalid_argument("polylog index must be >= 1");
    m += x;
  }
  auto kpow = [](int k, int e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), k, e);
    return Rational(r);
  };
  std::vector<Rational> v(m + 1);
  for (int k = 0; k <= m; ++k) v[k] = kpow(k, d[0]);
  for (int i = 1; i < n; ++i) {
    std::vector<Rational> next(m + 1, Rational(0));
    for (int k = 0; k <= m; ++k)
      for (int j = 0; j <= k; ++j) next[k] += v[j] * kpow(k - j, d[i]);
    v = std::move(next);
  }
  // Newton forward differences, then binom(k, i) expanded in powers of k.
  std::vector<Rational> diff = v;
  std::vector<Rational> coeffs(m + 1, Rational(0));
  std::vector<Rational> falling{Rational(1)};  // k(k-1)...(k-i+1) in powers of k
  for (int i = 0; i <= m; ++i) {
    Rational lead = diff[0] / factorial(i);
    for (size_t p = 0; p < falling.size(); ++p) coeffs[p] += lead * falling[p];
    for (int k = 0; k + 1 < static_cast<int>(diff.size()) - i; ++k) diff[k] = diff[k + 1] - diff[k];
    std::vector<Rational> nf(falling.size() + 1, Rational(0));
    for (size_t p = 0; p < falling.size(); ++p) {
      nf[p + 1] += falling[p];
      nf[p] -= falling[p] * i;
    }
    falling = std::move(nf);
  }
  if (sgn(coeffs[0]) != 0) throw std::logic_error("polylog product has a nonzero constant term");
  return coeffs;
}

std::vector<Rational> commutator_coeffs(const std::vector<int>& a) {
  auto ct = polylog_product_coeffs(a);
  int n = static_cast<int>(a.size());
  int top = n - 1;
  for (int x : a) top += x;
  std::vector<Rational> c(top + 1, Rational(0));
  for (int j = 1; j <= top; ++j) {
    if ((top - j) % 2 != 0) continue;
    c[j] = ((top - j) / 2) % 2 == 0 ? ct[j] : Rational(-ct[j]);
  }
  return c;
}

CCoeffTable& CCoeffTable::global() {
  static CCoeffTable table;
  return table;
}

const std::vector<Rational>& CCoeffTable::row(std::vector<int> a) {
  std::sort(a.begin(), a.end());
  {
    std::shared_lock lock(mu_);
    auto it = rows_.find(a);
    if (it != rows_.end()) return it->second;
  }
  auto c = commutator_coeffs(a);
  std::unique_lock lock(mu_);
  auto [it, inserted] = rows_.emplace(std::move(a), std::move(c));
  return it->second;
}

size_t CCoeffTable::size() const {
  std::shared_lock lock(mu_);
  return rows_.size();
}

// ---- quantum commutator

namespace {

struct VarKey {
  int var, order;
  auto operator<=>(const VarKey&) const = default;
};

std::set<VarKey> variables_of(const DiffPoly& f) {
  std::set<VarKey> s;
  for (const auto& t : f.terms())
    for (const auto& fa : t.mono.factors) s.insert({fa.var, fa.order});
  return s;
}

struct PairKey {
  VarKey f, g;
  Complex eta;
};

class StarCommutator {
 public:
  StarCommutator(const DiffPoly& f, const DiffPoly& g) : ring_(f.ring()), f_(f), g_(g) {
    auto fv = variables_of(f), gv = variables_of(g);
    for (const auto& a : fv)
      for (const auto& b : gv)
        if (!ring_->eta_inv()[a.var][b.var].is_zero()) pairs_.push_back({a, b, ring_->eta_inv()[a.var][b.var]});
    max_order_ = ring_->window().max_order;
    nmax_ = std::min(f.max_u_degree(), g.max_u_degree());
    if (max_order_ != kUnbounded && !f.is_zero() && !g.is_zero())
      nmax_ = std::min(nmax_, (max_order_ - f.min_genus_order() - g.min_genus_order()) / 2);
  }

  int nmax() const { return nmax_; }
  size_t branches() const { return pairs_.size(); }

  // Explores every multiset whose smallest pair index is `first`.
  void run_branch(size_t first, TermMap& out) const {
    Node root{0, DiffPoly(f_), DiffPoly(g_), Complex(1), {}, -1, 0};
    step(root, first, out);
  }

 private:
  struct Node {
    int n;
    DiffPoly df, dg;
    Complex factor;  // prod eta * (-1)^{sum r} / prod mult!
    std::vector<int> a;
    long last;
    int run;
  };

  void step(const Node& node, size_t idx, TermMap& out) const {
    if (node.n + 1 > nmax_) return;
    const auto& p = pairs_[idx];
    DiffPoly df = partial(node.df, p.f.var, p.f.order);
    if (df.is_zero()) return;
    DiffPoly dg = partial(node.dg, p.g.var, p.g.order);
    if (dg.is_zero()) return;
    int n = node.n + 1;
    if (max_order_ != kUnbounded && df.min_genus_order() + dg.min_genus_order() + 2 * n > max_order_) return;
    Node child{n, std::move(df), std::move(dg), node.factor * p.eta, node.a, static_cast<long>(idx), 1};
    if (static_cast<long>(idx) == node.last) child.run = node.run + 1;
    if (p.g.order % 2) child.factor = -child.factor;
    if (child.run > 1) child.factor /= Complex(Rational(child.run));
    child.a.push_back(p.f.order + p.g.order + 1);
    emit(child, out);
    for (size_t next = idx; next < pairs_.size(); ++next) step(child, next, out);
  }

  void emit(const Node& node, TermMap& out) const {
    const auto& c = CCoeffTable::global().row(node.a);
    DiffPoly sum(ring_);
    DiffPoly d = node.dg;
    for (size_t j = 1; j < c.size(); ++j) {
      d = dx(d);
      if (d.is_zero()) break;
      if (sgn(c[j]) != 0) sum = sum + scale(Complex(c[j]), d);
    }
    if (sum.is_zero()) return;
    Complex k = i_power(-(node.n - 1)) * node.factor;
    DiffPoly h = DiffPoly::hbar(ring_, node.n);
    out.add_scaled(node.df * (h * sum), k);
  }

  RingPtr ring_;
  DiffPoly f_, g_;
  std::vector<PairKey> pairs_;
  int max_order_;
  int nmax_;
};

DiffPoly star_impl(const DiffPoly& f, const LocalFunctional& h, bool parallel) {
  require_same_ring(f, h.repr());
  if (!f.ring()->quantum()) throw ModeMismatch("star commutator requires a quantum ring");
  StarCommutator sc(f, h.repr());
  size_t nb = sc.branches();
  TermMap total;
  if (parallel && exec::parallel() && nb > 1) {
    int nt = exec::threads();
    std::vector<TermMap> parts(static_cast<size_t>(nt));
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long b = 0; b < static_cast<long>(nb); ++b) {
#ifdef _OPENMP
      int t = omp_get_thread_num();
#else
      int t = 0;
#endif
      sc.run_branch(static_cast<size_t>(b), parts[t]);
    }
    for (auto& p : parts) total.merge(std::move(p));
  } else {
    for (size_t b = 0; b < nb; ++b) sc.run_branch(b, total);
  }
  int n = std::max(1, sc.nmax());
  int exact = std::min(sat_sub(f.exact_u_degree(), 2 * n - 2), sat_sub(h.repr().exact_u_degree(), 2 * n - 1));
  return total.finish(f.ring(), exact);
}

}  // namespace

DiffPoly star_commutator_local(const DiffPoly& f, const LocalFunctional& g) { return star_impl(f, g, true); }

DiffPoly star_commutator_local_serial(const DiffPoly& f, const LocalFunctional& g) { return star_impl(f, g, false); }

LocalFunctional star_commutator(const LocalFunctional& a, const LocalFunctional& b) {
  return integrate(star_commutator_local(a.repr(), b));
}

DiffPoly quantum_bracket_local(const DiffPoly& f, const LocalFunctional& g) {
  const auto& ring = f.ring();
  auto w = ring->window();
  if (w.max_order == kUnbounded) return divide_by_hbar(star_commutator_local(f, g));
  // One extra hbar is divided out, so the commutator is taken in a window two orders wider.
  auto wide = ring->with_window({w.max_order + 2, w.max_u_degree});
  DiffPoly c = star_commutator_local(lift(f, wide), integrate(lift(g.repr(), wide)));
  return lift(divide_by_hbar(c), ring);
}

DiffPoly hamiltonian_bracket_local(const DiffPoly& f, const LocalFunctional& g) {
  if (f.ring()->quantum()) return quantum_bracket_local(f, g);
  return poisson_local(f, g);
}

}  // namespace hier
