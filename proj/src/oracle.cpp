#include "hier/oracle.hpp"

#include <sstream>

#include "hier/brackets.hpp"
#include "hier/functionals.hpp"

namespace hier::oracle {

int FMono::frequency() const {
  int f = 0;
  for (const auto& [m, p] : modes) f += m.k * p;
  return f;
}

int FMono::degree() const {
  int d = 0;
  for (const auto& [m, p] : modes) d += p;
  return d;
}

namespace {

FMono mono_product(const FMono& a, const FMono& b) {
  FMono m;
  m.params = a.params;
  if (m.params.size() < b.params.size()) m.params.resize(b.params.size(), 0);
  for (size_t i = 0; i < b.params.size(); ++i) m.params[i] += b.params[i];
  m.eps = a.eps + b.eps;
  m.hbar = a.hbar + b.hbar;
  std::map<Mode, int> acc;
  for (const auto& [md, p] : a.modes) acc[md] += p;
  for (const auto& [md, p] : b.modes) acc[md] += p;
  m.modes.assign(acc.begin(), acc.end());
  return m;
}

// Removes one power of `md`; returns the old power (0 if absent).
int remove_one(FMono& m, const Mode& md) {
  for (auto it = m.modes.begin(); it != m.modes.end(); ++it) {
    if (it->first != md) continue;
    int p = it->second;
    if (--it->second == 0) m.modes.erase(it);
    return p;
  }
  return 0;
}

Complex ik_power(int k, int j) {
  // (ik)^j
  Rational r = 1;
  for (int s = 0; s < j; ++s) r *= k;
  return i_power(j) * Complex(r);
}

}  // namespace

FourierPoly FourierPoly::mode(const RingPtr& ring, int k_max, int var, int k) {
  FourierPoly f(ring, k_max);
  FMono m;
  m.params.assign(ring->params().size(), 0);
  m.modes.push_back({{var, k}, 1});
  f.add(m, Complex(1));
  return f;
}

FourierPoly FourierPoly::constant(const RingPtr& ring, int k_max, const Complex& c) {
  FourierPoly f(ring, k_max);
  FMono m;
  m.params.assign(ring->params().size(), 0);
  f.add(m, c);
  return f;
}

int FourierPoly::max_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void FourierPoly::add(const FMono& m, const Complex& c) {
  if (c.is_zero()) return;
  if (ring_ && m.genus_order_exceeds(ring_->window().max_order)) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FourierPoly operator+(const FourierPoly& a, const FourierPoly& b) {
  FourierPoly r = a;
  if (!r.ring_) r = FourierPoly(b.ring_, b.k_max_);
  for (const auto& [m, c] : b.terms_) r.add(m, c);
  return r;
}

FourierPoly operator-(const FourierPoly& a, const FourierPoly& b) {
  FourierPoly r = a;
  if (!r.ring_) r = FourierPoly(b.ring_, b.k_max_);
  for (const auto& [m, c] : b.terms_) r.add(m, -c);
  return r;
}

FourierPoly operator*(const FourierPoly& a, const FourierPoly& b) {
  FourierPoly r(a.ring_ ? a.ring_ : b.ring_, std::max(a.k_max_, b.k_max_));
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add(mono_product(ma, mb), ca * cb);
  return r;
}

FourierPoly to_fourier(const DiffPoly& f, int k_max) {
  const auto& ring = f.ring();
  FourierPoly out(ring, k_max);
  for (const auto& t : f.terms()) {
    FourierPoly acc(ring, k_max);
    FMono base;
    base.params = t.mono.params;
    base.eps = t.mono.eps;
    base.hbar = t.mono.hbar;
    acc.add(base, t.coeff);
    for (const auto& fac : t.mono.factors) {
      FourierPoly series(ring, k_max);
      for (int k = -k_max; k <= k_max; ++k) {
        FMono m;
        m.modes.push_back({{fac.var, k}, 1});
        series.add(m, ik_power(k, fac.order));
      }
      for (int p = 0; p < fac.power; ++p) acc = acc * series;
    }
    out = out + acc;
  }
  return out;
}

FourierPoly frequency_part(const FourierPoly& f, int freq) {
  FourierPoly r(f.ring(), f.k_max());
  for (const auto& [m, c] : f.terms())
    if (m.frequency() == freq) r.add(m, c);
  return r;
}

FourierPoly restrict_modes(const FourierPoly& f, int k_max) {
  FourierPoly r(f.ring(), k_max);
  for (const auto& [m, c] : f.terms()) {
    bool keep = true;
    for (const auto& [md, p] : m.modes) keep = keep && std::abs(md.k) <= k_max;
    if (keep) r.add(m, c);
  }
  return r;
}

FourierPoly poisson_fourier(const FourierPoly& f, const FourierPoly& g) {
  const auto& ring = f.ring();
  const auto& eta = ring->eta_inv();
  FourierPoly r(ring, f.k_max());
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [af, pf] : mf.modes) {
      if (af.k == 0) continue;
      for (const auto& [mg, cg] : g.terms()) {
        for (const auto& [ag, pg] : mg.modes) {
          if (ag.k != -af.k || eta[af.var][ag.var].is_zero()) continue;
          FMono a = mf, b = mg;
          remove_one(a, af);
          remove_one(b, ag);
          Complex c = cf * cg * Complex(Rational(pf * pg)) * Complex(Rational(0), Rational(af.k)) * eta[af.var][ag.var];
          r.add(mono_product(a, b), c);
        }
      }
    }
  }
  return r;
}

FourierPoly star_product_fourier(const FourierPoly& f, const FourierPoly& g) {
  const auto& ring = f.ring();
  const int n = ring->n_vars();
  const auto& eta = ring->eta_inv();
  // Right factor lives on shifted variables var + n until the contractions are done.
  FourierPoly shifted(ring, g.k_max());
  for (const auto& [m, c] : g.terms()) {
    FMono s = m;
    for (auto& [md, p] : s.modes) md.var += n;
    shifted.add(s, c);
  }
  FourierPoly level = f * shifted;
  FourierPoly total = level;
  for (int order = 1; !level.is_zero(); ++order) {
    FourierPoly next(ring, level.k_max());
    for (const auto& [m, c] : level.terms()) {
      for (const auto& [a, pa] : m.modes) {
        if (a.var >= n || a.k <= 0) continue;
        for (const auto& [b, pb] : m.modes) {
          if (b.var < n || b.k != -a.k || eta[a.var][b.var - n].is_zero()) continue;
          FMono t = m;
          remove_one(t, a);
          remove_one(t, b);
          t.hbar += 1;
          Complex k = Complex(Rational(0), make_rational(a.k, order)) * eta[a.var][b.var - n];
          next.add(t, c * Complex(Rational(pa * pb)) * k);
        }
      }
    }
    level = next;
    total = total + level;
  }
  FourierPoly out(ring, std::max(f.k_max(), g.k_max()));
  for (const auto& [m, c] : total.terms()) {
    FMono s = m;
    std::map<Mode, int> acc;
    for (auto [md, p] : s.modes) {
      if (md.var >= n) md.var -= n;
      acc[md] += p;
    }
    s.modes.assign(acc.begin(), acc.end());
    out.add(s, c);
  }
  return out;
}

FourierPoly star_commutator_fourier(const FourierPoly& f, const FourierPoly& g) {
  return star_product_fourier(f, g) - star_product_fourier(g, f);
}

int oracle_modes(int k, const DiffPoly& h) {
  int d = h.is_zero() ? 1 : h.max_u_degree();
  return std::max(k, (d - 1) * k);
}

bool classical_agrees(const DiffPoly& f, const DiffPoly& h, int k) {
  int kk = oracle_modes(k, h);
  FourierPoly lhs = to_fourier(poisson_local(f, integrate(h)), k);
  FourierPoly rhs = poisson_fourier(to_fourier(f, kk), frequency_part(to_fourier(h, kk), 0));
  return lhs == restrict_modes(rhs, k);
}

bool quantum_agrees(const DiffPoly& f, const DiffPoly& h, int k) {
  int kk = oracle_modes(k, h);
  FourierPoly lhs = to_fourier(star_commutator_local(f, integrate(h)), k);
  FourierPoly rhs = star_commutator_fourier(to_fourier(f, kk), frequency_part(to_fourier(h, kk), 0));
  return lhs == restrict_modes(rhs, k);
}

std::vector<char> agree_batch_serial(const std::vector<std::pair<DiffPoly, DiffPoly>>& pairs, int k, bool quantum) {
  std::vector<char> out;
  for (const auto& [f, h] : pairs) out.push_back(quantum ? quantum_agrees(f, h, k) : classical_agrees(f, h, k));
  return out;
}

std::vector<char> agree_batch(const std::vector<std::pair<DiffPoly, DiffPoly>>& pairs, int k, bool quantum) {
  int nt = exec::threads();
  if (nt <= 1) return agree_batch_serial(pairs, k, quantum);
  std::vector<char> out(pairs.size());
  int n = static_cast<int>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (int i = 0; i < n; ++i)
    out[i] = quantum ? quantum_agrees(pairs[i].first, pairs[i].second, k)
                     : classical_agrees(pairs[i].first, pairs[i].second, k);
  return out;
}

std::string to_string(const FourierPoly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rational_string(c.re) << " + " << rational_string(c.im) << " i)";
    for (size_t i = 0; i < m.params.size(); ++i)
      if (m.params[i]) os << " " << f.ring()->params()[i] << "^" << m.params[i];
    if (m.eps) os << " eps^" << m.eps;
    if (m.hbar) os << " hbar^" << m.hbar;
    for (const auto& [md, p] : m.modes) os << " p" << md.var + 1 << "[" << md.k << "]^" << p;
  }
  return os.str();
}

}  // namespace hier::oracle
