#include "hier/recursion.hpp"

#include <sstream>

#include "hier/brackets.hpp"

namespace hier {

namespace {

std::string key_string(int alpha, int d) { return std::to_string(alpha + 1) + "," + std::to_string(d); }

std::string pair_string(const DensityKey& a, const DensityKey& b) {
  return "(" + key_string(a.first, a.second) + ";" + key_string(b.first, b.second) + ")";
}

DiffPoly residual_functional(const DiffPoly& density) {
  LocalFunctional f = integrate(exact_part(density));
  return f.is_zero() ? DiffPoly(density.ring()) : f.repr();
}

DiffPoly seed(const RingPtr& ring, int alpha) {
  DiffPoly g(ring);
  for (int mu = 0; mu < ring->n_vars(); ++mu) {
    const Complex& e = ring->eta()[alpha][mu];
    if (!e.is_zero()) g = g + scale(e, DiffPoly::variable(ring, mu));
  }
  return g;
}

}  // namespace

const DiffPoly& Hierarchy::density(int alpha, int d) const {
  auto it = densities_.find({alpha, d});
  if (it == densities_.end()) throw std::out_of_range("density " + key_string(alpha, d) + " not generated");
  return it->second;
}

DiffPoly exact_part(const DiffPoly& f) {
  if (f.exact_u_degree() == kUnbounded) return f;
  return truncate_u_degree(f, f.exact_u_degree());
}

DiffPoly recursion_step(const DiffPoly& g, const LocalFunctional& generator) {
  DiffPoly b = exact_part(hamiltonian_bracket_local(g, generator));
  return d_minus_one_inverse(dx_inverse(b));
}

Hierarchy generate(const HierarchySpec& spec) {
  if (!spec.ring) throw std::invalid_argument("hierarchy spec without ring");
  if (spec.d_max < -1) throw std::invalid_argument("d_max must be >= -1");
  require_same_ring(DiffPoly(spec.ring), spec.generator.repr());
  Hierarchy h;
  h.spec_ = spec;
  const auto& ring = spec.ring;
  int top = spec.d_max + (spec.constants.kind == ConstantsKind::String ? 1 : 0);
  for (int alpha = 0; alpha < ring->n_vars(); ++alpha) {
    DiffPoly g = seed(ring, alpha);
    h.densities_[{alpha, -1}] = g;
    for (int d = 0; d <= top; ++d) {
      g = recursion_step(g, spec.generator);
      h.densities_[{alpha, d}] = g;
    }
  }
  switch (spec.constants.kind) {
    case ConstantsKind::Zero:
      break;
    case ConstantsKind::Table:
      for (const auto& [k, c] : spec.constants.table) {
        auto it = h.densities_.find(k);
        if (it == h.densities_.end() || k.second < 0) continue;
        it->second = it->second + lift(c, ring);
      }
      break;
    case ConstantsKind::String:
      for (int alpha = 0; alpha < ring->n_vars(); ++alpha) {
        for (int d = 0; d <= spec.d_max; ++d) {
          DiffPoly c = constant_part(partial(h.densities_.at({alpha, d + 1}), 0, 0));
          auto& g = h.densities_.at({alpha, d});
          g = g + c;
        }
        h.densities_.erase({alpha, top});
      }
      break;
  }
  return h;
}

std::vector<LevelPair> all_pairs(const Hierarchy& h, int d_max) {
  std::vector<DensityKey> keys;
  for (int a = 0; a < h.n_vars(); ++a)
    for (int d = -1; d <= std::min(d_max, h.d_max()); ++d) keys.push_back({a, d});
  std::vector<LevelPair> out;
  for (size_t i = 0; i < keys.size(); ++i)
    for (size_t j = i + 1; j < keys.size(); ++j) out.push_back({keys[i], keys[j]});
  return out;
}

Report verify_commutativity(const Hierarchy& h, const std::vector<LevelPair>& pairs) {
  Report r;
  for (const auto& [a, b] : pairs) {
    DiffPoly c = hamiltonian_bracket_local(h.density(a.first, a.second), h.functional(b.first, b.second));
    r.add("commutativity", pair_string(a, b), residual_functional(c));
  }
  return r;
}

Report string_check(const Hierarchy& h) {
  Report r;
  bool mod_constants = h.spec().constants.kind == ConstantsKind::Zero;
  for (int a = 0; a < h.n_vars(); ++a)
    for (int p = 0; p <= h.d_max(); ++p) {
      DiffPoly diff = partial(h.density(a, p), 0, 0) - h.density(a, p - 1);
      if (mod_constants) diff = drop_constants(diff);
      r.add("string", "(" + key_string(a, p) + ")", exact_part(diff));
    }
  return r;
}

Report second_recursion_check(const Hierarchy& h) {
  Report r;
  for (int b = 0; b < h.n_vars(); ++b) {
    LocalFunctional gb0 = h.functional(b, 0);
    for (int a = 0; a < h.n_vars(); ++a)
      for (int p = -1; p < h.d_max(); ++p) {
        DiffPoly lhs = dx(partial(h.density(a, p + 1), b, 0));
        DiffPoly rhs = hamiltonian_bracket_local(h.density(a, p), gb0);
        r.add("second_recursion", pair_string({a, p}, {b, 0}), exact_part(lhs - rhs));
      }
  }
  return r;
}

TauStructure::TauStructure(const Hierarchy& h) : h_(h) {
  if (h.ring()->quantum()) throw ModeMismatch("tau structures are classical");
  for (int a = 0; a < h.n_vars(); ++a)
    for (int p = -1; p < h.d_max(); ++p) dens_[{a, p}] = euler_operator(h.density(a, p + 1), 0);
}

const DiffPoly& TauStructure::density(int alpha, int p) const {
  auto it = dens_.find({alpha, p});
  if (it == dens_.end()) throw std::out_of_range("tau density " + key_string(alpha, p) + " out of range");
  return it->second;
}

DiffPoly TauStructure::omega(int alpha, int p, int beta, int q) const {
  if (p < 0 || q < 0) throw std::invalid_argument("omega needs p, q >= 0");
  std::pair<DensityKey, DensityKey> key{{alpha, p}, {beta, q}};
  {
    std::lock_guard lock(mu_);
    if (auto it = omega_.find(key); it != omega_.end()) return it->second;
  }
  DiffPoly w = dx_inverse(exact_part(poisson_local(density(alpha, p - 1), h_.functional(beta, q))));
  std::lock_guard lock(mu_);
  return omega_.emplace(key, w).first->second;
}

TauStructure tau_structure(const Hierarchy& h) { return TauStructure(h); }

Report tau_symmetry_check(const TauStructure& t) {
  const auto& h = t.hierarchy();
  Report r;
  std::vector<DensityKey> keys;
  for (int a = 0; a < h.n_vars(); ++a)
    for (int p = 0; p <= h.d_max(); ++p) keys.push_back({a, p});
  for (size_t i = 0; i < keys.size(); ++i)
    for (size_t j = i + 1; j < keys.size(); ++j) {
      auto [a, p] = keys[i];
      auto [b, q] = keys[j];
      DiffPoly lhs = poisson_local(t.density(a, p - 1), h.functional(b, q));
      DiffPoly rhs = poisson_local(t.density(b, q - 1), h.functional(a, p));
      r.add("tau_symmetry", pair_string(keys[i], keys[j]), exact_part(lhs - rhs));
    }
  return r;
}

Report omega_symmetry_check(const TauStructure& t) {
  const auto& h = t.hierarchy();
  Report r;
  for (int a = 0; a < h.n_vars(); ++a)
    for (int b = 0; b < h.n_vars(); ++b)
      for (int p = 0; p <= h.d_max(); ++p)
        for (int q = 0; q <= h.d_max(); ++q) {
          if (std::make_pair(a, p) >= std::make_pair(b, q)) continue;
          DiffPoly w1 = t.omega(a, p, b, q), w2 = t.omega(b, q, a, p);
          r.add("omega_symmetry", pair_string({a, p}, {b, q}), exact_part(w1 - w2));
        }
  return r;
}

std::vector<DiffPoly> normal_coordinates(const LocalFunctional& generator) {
  DiffPoly g = generator.repr();
  if (g.ring()->quantum()) g = set_hbar_zero(g);
  DiffPoly v = euler_operator(g, 0);
  const auto& ring = g.ring();
  std::vector<DiffPoly> out;
  for (int a = 0; a < ring->n_vars(); ++a) {
    DiffPoly acc(ring);
    for (int mu = 0; mu < ring->n_vars(); ++mu) {
      const Complex& e = ring->eta_inv()[a][mu];
      if (!e.is_zero()) acc = acc + scale(e, partial(v, mu, 0));
    }
    out.push_back(d_inverse(acc));
  }
  return out;
}

DiffPoly evolve_density(const DiffPoly& f, const Hierarchy& h, const std::map<DensityKey, Coefficient>& times,
                        int order) {
  std::vector<std::pair<DiffPoly, LocalFunctional>> gens;
  for (const auto& [k, c] : times) {
    DiffPoly t = DiffPoly::coefficient(f.ring(), c);
    if (!t.is_zero()) gens.push_back({t, h.functional(k.first, k.second)});
  }
  DiffPoly total = f, term = f;
  for (int n = 1; n <= order && !term.is_zero(); ++n) {
    DiffPoly next(f.ring());
    for (const auto& [t, g] : gens) next = next + t * hamiltonian_bracket_local(term, g);
    term = scale(Complex(make_rational(1, n)), next);
    total = total + term;
  }
  return total;
}

Json hierarchy_to_json(const Hierarchy& h) {
  const auto& s = h.spec();
  const auto& w = s.ring->window();
  Json spec = {{"name", s.name},
               {"mode", s.ring->quantum() ? "quantum" : "classical"},
               {"d_max", s.d_max},
               {"n_vars", s.ring->n_vars()},
               {"params", s.ring->params()}};
  spec["window"] = {{"max_order", w.max_order == kUnbounded ? Json() : Json(w.max_order)},
                    {"max_u_degree", w.max_u_degree == kUnbounded ? Json() : Json(w.max_u_degree)}};
  const char* policy[] = {"zero", "table", "string"};
  spec["constants"] = policy[static_cast<int>(s.constants.kind)];
  spec["generator"] = to_json(s.generator.repr());
  Json dens = Json::object();
  for (const auto& [k, g] : h.densities()) dens[key_string(k.first, k.second)] = to_json(g);
  return {{"spec", spec}, {"densities", dens}};
}

}  // namespace hier
