#include "hier/ring.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hier {

namespace {

int sat_add(int a, int b) {
  if (a == kUnbounded || b == kUnbounded) return kUnbounded;
  long s = static_cast<long>(a) + b;
  return s >= kUnbounded ? kUnbounded : static_cast<int>(s);
}

int clamp_exact(int e, const RingContext& ring) { return std::min(e, ring.window().max_u_degree); }

bool within_window(const Monomial& m, const RingContext& ring) {
  const auto& w = ring.window();
  if (w.max_order != kUnbounded && m.genus_order() > w.max_order) return false;
  if (w.max_u_degree != kUnbounded && m.u_degree() > w.max_u_degree) return false;
  return true;
}

std::atomic<int> g_threads{0};

}  // namespace

namespace exec {
void set_threads(int n) { g_threads = std::max(1, n); }
int threads() {
  int t = g_threads.load();
  if (t > 0) return t;
  if (const char* env = std::getenv("HIER_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}
bool parallel() { return threads() > 1; }
}  // namespace exec

// ---- RingContext

RingPtr RingContext::create(RingOptions opts) {
  if (opts.n_vars < 1) throw std::invalid_argument("ring needs at least one variable");
  std::shared_ptr<RingContext> r(new RingContext());
  r->n_vars_ = opts.n_vars;
  r->mode_ = opts.mode;
  r->params_ = std::move(opts.params);
  r->window_ = opts.window;
  for (size_t i = 0; i < r->params_.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (r->params_[i] == r->params_[j]) throw std::invalid_argument("duplicate parameter " + r->params_[i]);
  if (opts.var_names.empty()) {
    if (opts.n_vars == 1) {
      opts.var_names = {"u"};
    } else {
      for (int a = 1; a <= opts.n_vars; ++a) opts.var_names.push_back("u" + std::to_string(a));
    }
  }
  if (static_cast<int>(opts.var_names.size()) != opts.n_vars)
    throw std::invalid_argument("var_names size must equal n_vars");
  r->var_names_ = std::move(opts.var_names);
  if (opts.eta.empty()) {
    opts.eta.assign(opts.n_vars, std::vector<Complex>(opts.n_vars, Complex(0)));
    for (int a = 0; a < opts.n_vars; ++a) opts.eta[a][a] = Complex(1);
  }
  if (static_cast<int>(opts.eta.size()) != opts.n_vars) throw std::invalid_argument("eta has wrong size");
  for (int a = 0; a < opts.n_vars; ++a) {
    if (static_cast<int>(opts.eta[a].size()) != opts.n_vars) throw std::invalid_argument("eta has wrong size");
    for (int b = 0; b < a; ++b)
      if (!(opts.eta[a][b] == opts.eta[b][a])) throw std::invalid_argument("eta must be symmetric");
  }
  r->eta_ = std::move(opts.eta);
  r->eta_inv_ = inverse(r->eta_);
  return r;
}

int RingContext::param_index(const std::string& name) const {
  for (size_t i = 0; i < params_.size(); ++i)
    if (params_[i] == name) return static_cast<int>(i);
  return -1;
}

RingOptions RingContext::options() const {
  RingOptions o;
  o.n_vars = n_vars_;
  o.mode = mode_;
  o.params = params_;
  o.window = window_;
  o.var_names = var_names_;
  o.eta = eta_;
  return o;
}

RingPtr RingContext::with_window(TruncationWindow w) const {
  auto o = options();
  o.window = w;
  return create(o);
}

RingPtr RingContext::with_mode(Mode m) const {
  auto o = options();
  o.mode = m;
  return create(o);
}

RingPtr RingContext::with_params(std::vector<std::string> params) const {
  auto o = options();
  o.params = std::move(params);
  return create(o);
}

bool RingContext::same_as(const RingContext& o) const {
  if (this == &o) return true;
  return n_vars_ == o.n_vars_ && mode_ == o.mode_ && params_ == o.params_ && window_ == o.window_ &&
         eta_ == o.eta_;
}

// ---- Monomial

int Monomial::u_degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.power;
  return d;
}

int Monomial::diff_degree() const {
  int d = 0;
  for (const auto& f : factors) d += f.order * f.power;
  return d;
}

int Monomial::power_of(int var, int order) const {
  for (const auto& f : factors)
    if (f.var == var && f.order == order) return f.power;
  return 0;
}

std::strong_ordering compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.genus_order() <=> b.genus_order(); c != 0) return c;
  if (auto c = a.hbar <=> b.hbar; c != 0) return c;
  if (auto c = a.params <=> b.params; c != 0) return c;
  if (auto c = b.u_degree() <=> a.u_degree(); c != 0) return c;
  size_t n = std::min(a.factors.size(), b.factors.size());
  for (size_t i = 0; i < n; ++i) {
    const auto& x = a.factors[i];
    const auto& y = b.factors[i];
    if (auto c = x.var <=> y.var; c != 0) return c;
    if (auto c = x.order <=> y.order; c != 0) return c;
    if (auto c = y.power <=> x.power; c != 0) return c;
  }
  return a.factors.size() <=> b.factors.size();
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.eps = a.eps + b.eps;
  m.hbar = a.hbar + b.hbar;
  m.params = a.params;
  if (m.params.size() < b.params.size()) m.params.resize(b.params.size(), 0);
  for (size_t i = 0; i < b.params.size(); ++i) m.params[i] += b.params[i];
  m.factors.reserve(a.factors.size() + b.factors.size());
  size_t i = 0, j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size()) {
      m.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size()) {
      m.factors.push_back(b.factors[j++]);
    } else {
      const auto& x = a.factors[i];
      const auto& y = b.factors[j];
      if (x.var == y.var && x.order == y.order) {
        m.factors.push_back({x.var, x.order, x.power + y.power});
        ++i;
        ++j;
      } else if (std::tie(x.var, x.order) < std::tie(y.var, y.order)) {
        m.factors.push_back(x);
        ++i;
      } else {
        m.factors.push_back(y);
        ++j;
      }
    }
  }
  return m;
}

// ---- TermMap

void TermMap::add(const Monomial& m, const Complex& c) {
  if (c.is_zero()) return;
  auto it = map_.find(m);
  if (it == map_.end()) {
    map_.emplace(m, c);
  } else {
    it->second += c;
  }
}

void TermMap::add(Monomial&& m, const Complex& c) {
  if (c.is_zero()) return;
  auto it = map_.find(m);
  if (it == map_.end()) {
    map_.emplace(std::move(m), c);
  } else {
    it->second += c;
  }
}

void TermMap::add_scaled(const DiffPoly& p, const Complex& c) {
  if (c.is_zero()) return;
  for (const auto& t : p.terms()) add(t.mono, t.coeff * c);
}

void TermMap::merge(TermMap&& other) {
  for (auto& [m, c] : other.map_) add(m, c);
  other.map_.clear();
}

DiffPoly TermMap::finish(const RingPtr& ring, int exact) {
  DiffPoly p(ring);
  p.terms_.reserve(map_.size());
  for (auto& [m, c] : map_) {
    if (c.is_zero() || !within_window(m, *ring)) continue;
    if (!ring->quantum() && m.hbar != 0) throw std::invalid_argument("hbar term in classical ring");
    if (static_cast<int>(m.params.size()) != static_cast<int>(ring->params().size())) {
      Monomial mm = m;
      for (size_t i = ring->params().size(); i < mm.params.size(); ++i)
        if (mm.params[i] != 0) throw std::invalid_argument("undeclared parameter");
      mm.params.resize(ring->params().size(), 0);
      p.terms_.push_back({std::move(mm), std::move(c)});
    } else {
      p.terms_.push_back({m, std::move(c)});
    }
  }
  map_.clear();
  p.exact_ = clamp_exact(exact, *ring);
  return p;
}

// ---- DiffPoly

DiffPoly::DiffPoly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("null ring");
  exact_ = clamp_exact(kUnbounded, *ring_);
}

DiffPoly DiffPoly::monomial(const RingPtr& ring, Monomial m, const Complex& c) {
  m.params.resize(ring->params().size(), 0);
  TermMap tm;
  tm.add(std::move(m), c);
  return tm.finish(ring);
}

DiffPoly DiffPoly::constant(const RingPtr& ring, const Complex& c) { return monomial(ring, Monomial{}, c); }

DiffPoly DiffPoly::coefficient(const RingPtr& ring, const Coefficient& c) {
  Monomial m;
  m.params.assign(ring->params().size(), 0);
  for (const auto& [name, e] : c.params) {
    if (e < 0) throw std::invalid_argument("negative parameter exponent");
    int idx = ring->param_index(name);
    if (idx < 0) throw std::invalid_argument("unknown parameter " + name);
    m.params[idx] += e;
  }
  return monomial(ring, std::move(m), c.value);
}

DiffPoly DiffPoly::variable(const RingPtr& ring, int var, int order) {
  if (var < 0 || var >= ring->n_vars() || order < 0) throw std::out_of_range("variable index");
  Monomial m;
  m.factors.push_back({var, order, 1});
  return monomial(ring, std::move(m), Complex(1));
}

DiffPoly DiffPoly::eps(const RingPtr& ring, int power) {
  Monomial m;
  m.eps = power;
  return monomial(ring, std::move(m), Complex(1));
}

DiffPoly DiffPoly::hbar(const RingPtr& ring, int power) {
  if (!ring->quantum()) throw std::invalid_argument("hbar in classical ring");
  Monomial m;
  m.hbar = power;
  return monomial(ring, std::move(m), Complex(1));
}

DiffPoly DiffPoly::param(const RingPtr& ring, const std::string& name, int power) {
  return coefficient(ring, Coefficient{Complex(1), {{name, power}}});
}

DiffPoly DiffPoly::from_terms(const RingPtr& ring, std::vector<Term> terms, int exact) {
  TermMap tm;
  for (auto& t : terms) {
    std::sort(t.mono.factors.begin(), t.mono.factors.end(),
              [](const Factor& a, const Factor& b) { return std::tie(a.var, a.order) < std::tie(b.var, b.order); });
    for (size_t i = 1; i < t.mono.factors.size(); ++i) {
      const auto& a = t.mono.factors[i - 1];
      const auto& b = t.mono.factors[i];
      if (a.var == b.var && a.order == b.order) throw std::invalid_argument("duplicate factor key");
    }
    for (const auto& f : t.mono.factors) {
      if (f.var < 0 || f.var >= ring->n_vars()) throw std::out_of_range("variable index out of range");
      if (f.order < 0 || f.power <= 0) throw std::invalid_argument("bad factor");
    }
    if (t.mono.eps < 0 || t.mono.hbar < 0) throw std::invalid_argument("negative eps/hbar power");
    for (int e : t.mono.params)
      if (e < 0) throw std::invalid_argument("negative parameter exponent");
    t.mono.params.resize(ring->params().size(), 0);
    tm.add(std::move(t.mono), t.coeff);
  }
  return tm.finish(ring, exact);
}

DiffPoly DiffPoly::with_exact(int exact) const {
  DiffPoly p = *this;
  p.exact_ = clamp_exact(std::min(exact, exact_), *ring_);
  return p;
}

int DiffPoly::max_u_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.u_degree());
  return d;
}

int DiffPoly::min_u_degree() const {
  int d = kUnbounded;
  for (const auto& t : terms_) d = std::min(d, t.mono.u_degree());
  return d;
}

int DiffPoly::min_genus_order() const {
  int d = kUnbounded;
  for (const auto& t : terms_) d = std::min(d, t.mono.genus_order());
  return d;
}

int DiffPoly::max_genus_order() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.genus_order());
  return d;
}

int DiffPoly::max_order(int var) const {
  int k = -1;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors)
      if (f.var == var) k = std::max(k, f.order);
  return k;
}

Complex DiffPoly::coeff_of(const Monomial& m) const {
  Monomial key = m;
  key.params.resize(ring_->params().size(), 0);
  for (const auto& t : terms_)
    if (t.mono == key) return t.coeff;
  return Complex(0);
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
  }
  return true;
}

void require_same_ring(const DiffPoly& a, const DiffPoly& b) {
  if (!a.ring() || !b.ring() || !a.ring()->same_as(*b.ring())) throw RingMismatch("mismatched ring contexts");
}

// ---- arithmetic

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
  require_same_ring(a, b);
  TermMap tm;
  tm.add(a);
  tm.add(b);
  return tm.finish(a.ring(), std::min(a.exact_u_degree(), b.exact_u_degree()));
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) {
  require_same_ring(a, b);
  TermMap tm;
  tm.add(a);
  tm.add_scaled(b, Complex(-1));
  return tm.finish(a.ring(), std::min(a.exact_u_degree(), b.exact_u_degree()));
}

DiffPoly operator-(const DiffPoly& a) { return scale(Complex(-1), a); }

DiffPoly scale(const Complex& c, const DiffPoly& f) {
  TermMap tm;
  tm.add_scaled(f, c);
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly scale(const Coefficient& c, const DiffPoly& f) { return DiffPoly::coefficient(f.ring(), c) * f; }

namespace {

int product_exact(const DiffPoly& a, const DiffPoly& b) {
  return std::min(sat_add(a.exact_u_degree(), b.min_u_degree()), sat_add(b.exact_u_degree(), a.min_u_degree()));
}

void multiply_range(const DiffPoly& a, const DiffPoly& b, size_t lo, size_t hi, TermMap& out) {
  const auto& w = a.ring()->window();
  for (size_t i = lo; i < hi; ++i) {
    const auto& x = a.terms()[i];
    int xo = x.mono.genus_order(), xd = x.mono.u_degree();
    for (const auto& y : b.terms()) {
      if (w.max_order != kUnbounded && xo + y.mono.genus_order() > w.max_order) continue;
      if (w.max_u_degree != kUnbounded && xd + y.mono.u_degree() > w.max_u_degree) continue;
      out.add(multiply(x.mono, y.mono), x.coeff * y.coeff);
    }
  }
}

}  // namespace

DiffPoly mul_serial(const DiffPoly& a, const DiffPoly& b) {
  require_same_ring(a, b);
  TermMap tm;
  multiply_range(a, b, 0, a.size(), tm);
  return tm.finish(a.ring(), product_exact(a, b));
}

DiffPoly mul_parallel(const DiffPoly& a, const DiffPoly& b) {
  require_same_ring(a, b);
  int nt = exec::threads();
  size_t n = a.size();
  std::vector<TermMap> parts(static_cast<size_t>(nt));
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (int t = 0; t < nt; ++t) {
    size_t lo = n * t / nt, hi = n * (t + 1) / nt;
    multiply_range(a, b, lo, hi, parts[t]);
  }
  TermMap tm;
  for (auto& p : parts) tm.merge(std::move(p));
  return tm.finish(a.ring(), product_exact(a, b));
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  if (exec::parallel() && a.size() * b.size() > 4096) return mul_parallel(a, b);
  return mul_serial(a, b);
}

DiffPoly power(const DiffPoly& f, int n) {
  DiffPoly r = DiffPoly::constant(f.ring(), Complex(1));
  DiffPoly base = f;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

// ---- derivations

DiffPoly dx(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms()) {
    const auto& fs = t.mono.factors;
    for (size_t i = 0; i < fs.size(); ++i) {
      Monomial m = t.mono;
      Factor raised{fs[i].var, fs[i].order + 1, 1};
      if (fs[i].power == 1) {
        m.factors.erase(m.factors.begin() + i);
      } else {
        m.factors[i].power -= 1;
      }
      Monomial r;
      r.params.assign(m.params.size(), 0);
      r.factors.push_back(raised);
      tm.add(multiply(m, r), t.coeff * Complex(fs[i].power));
    }
  }
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly dx(const DiffPoly& f, int times) {
  DiffPoly r = f;
  for (int i = 0; i < times; ++i) r = dx(r);
  return r;
}

DiffPoly partial(const DiffPoly& f, int var, int order) {
  TermMap tm;
  for (const auto& t : f.terms()) {
    for (size_t i = 0; i < t.mono.factors.size(); ++i) {
      const auto& fa = t.mono.factors[i];
      if (fa.var != var || fa.order != order) continue;
      Monomial m = t.mono;
      if (fa.power == 1) {
        m.factors.erase(m.factors.begin() + i);
      } else {
        m.factors[i].power -= 1;
      }
      tm.add(std::move(m), t.coeff * Complex(fa.power));
      break;
    }
  }
  int e = f.exact_u_degree();
  return tm.finish(f.ring(), e == kUnbounded ? e : e - 1);
}

DiffPoly euler_D(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms()) tm.add(t.mono, t.coeff * Complex(t.mono.weight()));
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly substitute(const DiffPoly& f, const std::vector<DiffPoly>& images) {
  const auto& ring = f.ring();
  if (static_cast<int>(images.size()) != ring->n_vars()) throw std::invalid_argument("one image per variable");
  for (const auto& im : images) require_same_ring(f, im);
  std::map<std::pair<int, int>, std::vector<DiffPoly>> powers;  // (var, order) -> [dx^k image]^p
  auto get_power = [&](int var, int order, int p) -> const DiffPoly& {
    auto& vec = powers[{var, order}];
    if (vec.empty()) {
      vec.push_back(DiffPoly::constant(ring, Complex(1)));
      vec.push_back(dx(images[var], order));
    }
    while (static_cast<int>(vec.size()) <= p) vec.push_back(vec.back() * vec[1]);
    return vec[p];
  };
  TermMap tm;
  for (const auto& t : f.terms()) {
    Monomial scalar = t.mono;
    scalar.factors.clear();
    DiffPoly acc = DiffPoly::monomial(ring, scalar, t.coeff);
    for (const auto& fa : t.mono.factors) {
      if (acc.is_zero()) break;
      acc = acc * get_power(fa.var, fa.order, fa.power);
    }
    tm.add(acc);
  }
  int dmin = kUnbounded, emin = kUnbounded;
  for (const auto& im : images) {
    dmin = std::min(dmin, im.min_u_degree());
    emin = std::min(emin, im.exact_u_degree());
  }
  int exact = emin;
  if (f.exact_u_degree() != kUnbounded) {
    if (dmin == 0) {
      exact = -1;
    } else if (dmin != kUnbounded) {
      exact = std::min<long>(exact, static_cast<long>(f.exact_u_degree() + 1) * dmin - 1);
    }
  }
  return tm.finish(ring, exact);
}

DiffPoly constant_part(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms())
    if (t.mono.is_constant()) tm.add(t.mono, t.coeff);
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly drop_constants(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms())
    if (!t.mono.is_constant()) tm.add(t.mono, t.coeff);
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly set_hbar_zero(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms())
    if (t.mono.hbar == 0) tm.add(t.mono, t.coeff);
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly set_eps_zero(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms())
    if (t.mono.eps == 0) tm.add(t.mono, t.coeff);
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly divide_by_hbar(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms()) {
    if (t.mono.hbar == 0) throw std::domain_error("term without hbar cannot be divided by hbar");
    Monomial m = t.mono;
    m.hbar -= 1;
    tm.add(std::move(m), t.coeff);
  }
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly divide_by_eps(const DiffPoly& f) {
  TermMap tm;
  for (const auto& t : f.terms()) {
    if (t.mono.eps == 0) throw std::domain_error("term without eps cannot be divided by eps");
    Monomial m = t.mono;
    m.eps -= 1;
    tm.add(std::move(m), t.coeff);
  }
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly truncate_order(const DiffPoly& f, int max_order) {
  TermMap tm;
  for (const auto& t : f.terms())
    if (t.mono.genus_order() <= max_order) tm.add(t.mono, t.coeff);
  return tm.finish(f.ring(), f.exact_u_degree());
}

DiffPoly truncate_u_degree(const DiffPoly& f, int max_u_degree) {
  TermMap tm;
  for (const auto& t : f.terms())
    if (t.mono.u_degree() <= max_u_degree) tm.add(t.mono, t.coeff);
  return tm.finish(f.ring(), std::min(f.exact_u_degree(), max_u_degree));
}

DiffPoly lift(const DiffPoly& f, const RingPtr& target) {
  const auto& src = f.ring();
  if (src->n_vars() > target->n_vars()) throw RingMismatch("target ring has fewer variables");
  std::vector<int> map(src->params().size());
  for (size_t i = 0; i < map.size(); ++i) map[i] = target->param_index(src->params()[i]);
  TermMap tm;
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    m.params.assign(target->params().size(), 0);
    for (size_t i = 0; i < map.size(); ++i) {
      if (t.mono.params[i] == 0) continue;
      if (map[i] < 0) throw RingMismatch("parameter " + src->params()[i] + " missing in target ring");
      m.params[map[i]] += t.mono.params[i];
    }
    if (m.hbar > 0 && !target->quantum()) throw RingMismatch("hbar term lifted to a classical ring");
    tm.add(std::move(m), t.coeff);
  }
  return tm.finish(target, f.exact_u_degree());
}

DiffPoly substitute_params(const DiffPoly& f, const std::map<std::string, DiffPoly>& values) {
  const auto& ring = f.ring();
  std::vector<std::pair<int, const DiffPoly*>> subs;
  for (const auto& [name, v] : values) {
    int idx = ring->param_index(name);
    if (idx < 0) continue;
    require_same_ring(f, v);
    subs.emplace_back(idx, &v);
  }
  TermMap tm;
  for (const auto& t : f.terms()) {
    Monomial m = t.mono;
    DiffPoly acc(ring);
    bool touched = false;
    for (auto& [idx, v] : subs) {
      int e = m.params[idx];
      if (e == 0) continue;
      m.params[idx] = 0;
      if (!touched) {
        acc = DiffPoly::constant(ring, Complex(1));
        touched = true;
      }
      acc = acc * power(*v, e);
    }
    if (!touched) {
      tm.add(std::move(m), t.coeff);
    } else {
      tm.add(acc * DiffPoly::monomial(ring, m, t.coeff));
    }
  }
  return tm.finish(ring, f.exact_u_degree());
}

}  // namespace hier
