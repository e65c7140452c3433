#include "hier/functionals.hpp"

#include <optional>

namespace hier {

namespace {

// Factor with the largest (var, order); factors are kept sorted so it is the last one.
bool reducible(const Monomial& m) {
  if (m.factors.empty()) return false;
  const auto& top = m.factors.back();
  return top.power == 1 && top.order >= 1;
}

std::pair<int, int> top_key(const Monomial& m) { return {m.factors.back().var, m.factors.back().order}; }

}  // namespace

PartsReduction reduce_by_parts(const DiffPoly& f) {
  const auto& ring = f.ring();
  DiffPoly work = f;
  TermMap anti;
  while (true) {
    std::optional<std::pair<int, int>> level;
    for (const auto& t : work.terms())
      if (reducible(t.mono) && (!level || top_key(t.mono) > *level)) level = top_key(t.mono);
    if (!level) break;
    auto [var, order] = *level;
    TermMap next;
    for (const auto& t : work.terms()) {
      if (!reducible(t.mono) || top_key(t.mono) != *level) {
        next.add(t.mono, t.coeff);
        continue;
      }
      // m = c * Q * (u_{k-1})^p * u_k = c * Q * dx(W), W = (u_{k-1})^{p+1}/(p+1)
      Monomial q = t.mono;
      q.factors.pop_back();
      int p = 0;
      if (!q.factors.empty() && q.factors.back().var == var && q.factors.back().order == order - 1) {
        p = q.factors.back().power;
        q.factors.pop_back();
      }
      Monomial w;
      w.factors.push_back({var, order - 1, p + 1});
      Complex c = t.coeff / Complex(Rational(p + 1));
      anti.add(multiply(q, w), c);
      DiffPoly dq = dx(DiffPoly::monomial(ring, q, Complex(1)));
      DiffPoly wpoly = DiffPoly::monomial(ring, w, Complex(1));
      next.add_scaled(dq * wpoly, -c);
    }
    work = next.finish(ring, f.exact_u_degree());
  }
  return {work, anti.finish(ring, f.exact_u_degree())};
}

LocalFunctional::LocalFunctional(const DiffPoly& density) : repr_(reduce_by_parts(drop_constants(density)).remainder) {}

bool LocalFunctional::is_zero() const {
  for (int a = 0; a < ring()->n_vars(); ++a)
    if (!euler_operator(repr_, a).is_zero()) return false;
  return true;
}

bool operator==(const LocalFunctional& a, const LocalFunctional& b) {
  require_same_ring(a.repr(), b.repr());
  return LocalFunctional(a.repr() - b.repr()).is_zero();
}

DiffPoly euler_operator(const DiffPoly& f, int var) {
  int top = f.max_order(var);
  DiffPoly acc(f.ring());
  for (int k = top; k >= 0; --k) acc = partial(f, var, k) - dx(acc);
  return acc;
}

DiffPoly variational_derivative(const LocalFunctional& h, int var) { return euler_operator(h.repr(), var); }

std::vector<DiffPoly> variational_gradient(const DiffPoly& f) {
  std::vector<DiffPoly> g;
  for (int a = 0; a < f.ring()->n_vars(); ++a) g.push_back(euler_operator(f, a));
  return g;
}

bool is_total_derivative(const DiffPoly& f) {
  if (!constant_part(f).is_zero()) return false;
  for (int a = 0; a < f.ring()->n_vars(); ++a)
    if (!euler_operator(f, a).is_zero()) return false;
  return true;
}

DiffPoly dx_inverse(const DiffPoly& f) {
  if (!constant_part(f).is_zero()) throw NotExact("dx_inverse: input has a constant term");
  for (int a = 0; a < f.ring()->n_vars(); ++a)
    if (!euler_operator(f, a).is_zero()) throw NotExact("dx_inverse: nonzero variational derivative");
  auto r = reduce_by_parts(f);
  if (!r.remainder.is_zero()) throw NotExact("dx_inverse: reduction left a remainder");
  return r.antiderivative;
}

DiffPoly d_minus_one_inverse(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms()) {
    int w = t.mono.weight();
    if (w == 1) throw WeightOneComponent("d_minus_one_inverse: monomial of D-weight 1");
    tm.add(t.mono, t.coeff / Complex(Rational(w - 1)));
  }
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly d_inverse(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms()) {
    int w = t.mono.weight();
    if (w == 0) throw std::domain_error("d_inverse: monomial of D-weight 0");
    tm.add(t.mono, t.coeff / Complex(Rational(w)));
  }
  return tm.finish(f.ring(), f.exact_u_degree());
}

}  // namespace hier
