#include "hier/miura.hpp"

namespace hier {

namespace {

RingPtr order_ring(const RingPtr& ring, int eps_order) {
  auto w = ring->window();
  if (eps_order < 0) throw std::invalid_argument("eps order must be >= 0");
  return ring->with_window({std::min(w.max_order, eps_order), w.max_u_degree});
}

bool leading(const Monomial& m) { return m.eps == 0 && m.hbar == 0; }

}  // namespace

MiuraMap::MiuraMap(std::vector<DiffPoly> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("empty Miura map");
  const auto& ring = images_.front().ring();
  if (static_cast<int>(images_.size()) != ring->n_vars()) throw std::invalid_argument("one image per variable");
  for (const auto& f : images_) require_same_ring(images_.front(), f);
}

MiuraMap MiuraMap::identity(const RingPtr& ring) {
  std::vector<DiffPoly> v;
  for (int a = 0; a < ring->n_vars(); ++a) v.push_back(DiffPoly::variable(ring, a));
  return MiuraMap(std::move(v));
}

Matrix leading_jacobian(const MiuraMap& m) {
  int n = m.size();
  Matrix a(n, std::vector<Complex>(n, Complex(0)));
  for (int al = 0; al < n; ++al)
    for (const auto& t : m.image(al).terms()) {
      if (!leading(t.mono)) continue;
      if (t.mono.diff_degree() != 0) throw std::invalid_argument("Miura image has a negative-degree eps = 0 part");
      if (t.mono.u_degree() != 1) continue;
      for (int p : t.mono.params)
        if (p) throw SingularAtEpsilonZero("parameter-dependent eps = 0 linear part");
      a[al][t.mono.factors.front().var] += t.coeff;
    }
  try {
    inverse(a);
  } catch (const std::domain_error&) {
    throw SingularAtEpsilonZero("eps = 0 Jacobian of the Miura map is singular");
  }
  return a;
}

const std::vector<DiffPoly>& MiuraMap::inverse_images(int eps_order) const {
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->inverses.find(eps_order); it != cache_->inverses.end()) return it->second;
  }
  Matrix a = leading_jacobian(*this);
  Matrix ainv = inverse(a);
  RingPtr r = order_ring(ring(), eps_order);
  int n = size();
  std::vector<DiffPoly> rest;
  bool nonlinear_leading = false;
  for (int al = 0; al < n; ++al) {
    DiffPoly f = lift(image(al), r);
    for (int b = 0; b < n; ++b)
      if (!a[al][b].is_zero()) f = f - scale(a[al][b], DiffPoly::variable(r, b));
    for (const auto& t : f.terms()) nonlinear_leading = nonlinear_leading || leading(t.mono);
    rest.push_back(f);
  }
  if (nonlinear_leading && r->window().max_u_degree == kUnbounded)
    throw std::domain_error("nonlinear eps = 0 part needs a finite u-degree window");
  auto apply_ainv = [&](const std::vector<DiffPoly>& v) {
    std::vector<DiffPoly> out;
    for (int al = 0; al < n; ++al) {
      DiffPoly acc(r);
      for (int b = 0; b < n; ++b)
        if (!ainv[al][b].is_zero()) acc = acc + scale(ainv[al][b], v[b]);
      out.push_back(acc);
    }
    return out;
  };
  std::vector<DiffPoly> tilde;
  for (int b = 0; b < n; ++b) tilde.push_back(DiffPoly::variable(r, b));
  std::vector<DiffPoly> u = apply_ainv(tilde);
  int cap = r->window().max_order + (nonlinear_leading ? r->window().max_u_degree : 0) + 2;
  for (int it = 0;; ++it) {
    std::vector<DiffPoly> rhs;
    for (int b = 0; b < n; ++b) rhs.push_back(tilde[b] - substitute(rest[b], u));
    auto next = apply_ainv(rhs);
    if (next == u) break;
    if (it > cap) throw std::logic_error("Miura inversion did not stabilize");
    u = std::move(next);
  }
  std::lock_guard lock(cache_->mu);
  return cache_->inverses.emplace(eps_order, std::move(u)).first->second;
}

Json MiuraMap::to_json() const {
  Json imgs = Json::object(), inv = Json::object();
  for (int a = 0; a < size(); ++a) imgs[std::to_string(a + 1)] = hier::to_json(image(a));
  std::lock_guard lock(cache_->mu);
  for (const auto& [order, v] : cache_->inverses) {
    Json one = Json::object();
    for (size_t a = 0; a < v.size(); ++a) one[std::to_string(a + 1)] = hier::to_json(v[a]);
    inv[std::to_string(order)] = one;
  }
  return {{"images", imgs}, {"inverse", inv}};
}

MiuraMap invert(const MiuraMap& m, int eps_order) { return MiuraMap(m.inverse_images(eps_order)); }

MiuraMap compose(const MiuraMap& a, const MiuraMap& b) {
  std::vector<DiffPoly> out;
  for (int al = 0; al < b.size(); ++al) out.push_back(substitute(lift(b.image(al), a.ring()), a.images()));
  return MiuraMap(std::move(out));
}

DiffPoly push_density(const DiffPoly& f, const MiuraMap& m, int eps_order) {
  const auto& inv = m.inverse_images(eps_order);
  return substitute(lift(f, inv.front().ring()), inv);
}

LocalFunctional push_functional(const LocalFunctional& h, const MiuraMap& m, int eps_order) {
  return integrate(push_density(h.repr(), m, eps_order));
}

HamiltonianOperator push_operator(const HamiltonianOperator& k, const MiuraMap& m, int eps_order) {
  const auto& inv = m.inverse_images(eps_order);
  RingPtr r = inv.front().ring();
  int n = m.size();
  std::vector<DiffPoly> img;
  for (const auto& f : m.images()) img.push_back(lift(f, r));
  // (L*)^a_mu = sum_s d u~^a / d u^mu_s dx^s
  std::vector<std::vector<DiffOperator>> lstar(n, std::vector<DiffOperator>(n));
  for (int a = 0; a < n; ++a)
    for (int mu = 0; mu < n; ++mu)
      for (int s = 0; s <= img[a].max_order(mu); ++s) {
        DiffPoly c = partial(img[a], mu, s);
        if (!c.is_zero()) lstar[a][mu].coeffs.emplace(s, c);
      }
  // L^nu_b = sum_s (-dx)^s o d u~^b / d u^nu_s, the adjoint of (L*)^b_nu
  auto adjoint = [&](const DiffOperator& op) {
    DiffOperator out;
    for (const auto& [s, c] : op.coeffs) {
      DiffOperator sign, mult;
      sign.coeffs.emplace(s, DiffPoly::constant(r, Complex(s % 2 ? -1 : 1)));
      mult.coeffs.emplace(0, c);
      out = out + compose(sign, mult, r);
    }
    return out;
  };
  std::vector<std::vector<DiffOperator>> l(n, std::vector<DiffOperator>(n));
  for (int nu = 0; nu < n; ++nu)
    for (int b = 0; b < n; ++b) l[nu][b] = adjoint(lstar[b][nu]);
  std::vector<std::vector<DiffOperator>> kk(n, std::vector<DiffOperator>(n));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      for (const auto& [j, c] : k.entry(mu, nu).coeffs) kk[mu][nu].coeffs.emplace(j, lift(c, r));
  std::vector<std::vector<DiffOperator>> out(n, std::vector<DiffOperator>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      DiffOperator acc;
      for (int mu = 0; mu < n; ++mu) {
        if (lstar[a][mu].is_zero()) continue;
        for (int nu = 0; nu < n; ++nu) {
          if (kk[mu][nu].is_zero() || l[nu][b].is_zero()) continue;
          acc = acc + compose(compose(lstar[a][mu], kk[mu][nu], r), l[nu][b], r);
        }
      }
      DiffOperator rewritten;
      for (const auto& [j, c] : acc.coeffs) {
        DiffPoly s = substitute(c, inv);
        if (!s.is_zero()) rewritten.coeffs.emplace(j, s);
      }
      out[a][b] = rewritten;
    }
  return HamiltonianOperator(r, std::move(out));
}

NormalMiura normal_miura(const DiffPoly& f, const TauStructure& tau) {
  const auto& h = tau.hierarchy();
  const auto& ring = h.ring();
  int n = ring->n_vars();
  std::vector<DiffPoly> images;
  for (int a = 0; a < n; ++a) {
    DiffPoly img = DiffPoly::variable(ring, a);
    for (int mu = 0; mu < n; ++mu) {
      const Complex& e = ring->eta_inv()[a][mu];
      if (e.is_zero()) continue;
      img = img + scale(e, dx(poisson_local(f, integrate(tau.density(mu, 0)))));
    }
    images.push_back(img);
  }
  NormalMiura nm{MiuraMap(std::move(images)), {}};
  for (const auto& [key, d] : tau.densities())
    nm.densities[key] = d + dx(poisson_local(f, h.functional(key.first, key.second + 1)));
  return nm;
}

Report normal_tau_check(const NormalMiura& nm, const Hierarchy& h, int eps_order) {
  HamiltonianOperator k = push_operator(HamiltonianOperator::eta_dx(h.ring()), nm.map, eps_order);
  std::map<DensityKey, DiffPoly> dens;
  for (const auto& [key, d] : nm.densities) dens[key] = push_density(d, nm.map, eps_order);
  std::vector<DensityKey> keys;
  for (int a = 0; a < h.n_vars(); ++a)
    for (int p = 0; p < h.d_max(); ++p) keys.push_back({a, p});
  Report r;
  for (size_t i = 0; i < keys.size(); ++i)
    for (size_t j = i + 1; j < keys.size(); ++j) {
      auto [a, p] = keys[i];
      auto [b, q] = keys[j];
      DiffPoly lhs = poisson_local(dens.at({a, p - 1}), integrate(dens.at({b, q})), k);
      DiffPoly rhs = poisson_local(dens.at({b, q - 1}), integrate(dens.at({a, p})), k);
      r.add("normal_tau_symmetry",
            "(" + std::to_string(a + 1) + "," + std::to_string(p) + ";" + std::to_string(b + 1) + "," +
                std::to_string(q) + ")",
            exact_part(lhs - rhs));
    }
  return r;
}

}  // namespace hier
