#include "hier/lax.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <string>

namespace hier {

namespace {

constexpr int kNoFloor = INT_MIN / 4;

int known_low(const PseudoDiffOp& a) { return a.finite ? kNoFloor : a.low(); }

bool has_negative_orders(const PseudoDiffOp& a) {
  for (const auto& [j, c] : a.coeffs)
    if (j < 0 && !c.is_zero()) return true;
  return false;
}

// D^i b = eps^i dx^i b, memoized in i.
class Derivatives {
 public:
  explicit Derivatives(const DiffPoly& b) : cache_{b} {}
  const DiffPoly& get(int i) {
    while (static_cast<int>(cache_.size()) <= i) {
      int k = static_cast<int>(cache_.size());
      raw_.push_back(raw_.empty() ? dx(cache_[0]) : dx(raw_.back()));
      cache_.push_back(DiffPoly::eps(cache_[0].ring(), k) * raw_.back());
    }
    return cache_[i];
  }

 private:
  std::vector<DiffPoly> cache_;
  std::vector<DiffPoly> raw_;
};

}  // namespace

DiffPoly PseudoDiffOp::coeff(int j) const {
  auto it = coeffs.find(j);
  if (it != coeffs.end()) return it->second;
  if (j < low() && !finite) throw std::out_of_range("order " + std::to_string(j) + " below stored depth");
  return DiffPoly(ring);
}

void PseudoDiffOp::set(int j, const DiffPoly& c) {
  if (c.is_zero())
    coeffs.erase(j);
  else
    coeffs[j] = c;
}

PseudoDiffOp PseudoDiffOp::zero(const RingPtr& ring) { return PseudoDiffOp{ring, 0, 0, true, {}}; }

PseudoDiffOp PseudoDiffOp::identity(const RingPtr& ring) {
  return term(DiffPoly::constant(ring, Complex(1)), 0);
}

PseudoDiffOp PseudoDiffOp::term(const DiffPoly& c, int j) {
  PseudoDiffOp a{c.ring(), j, 0, true, {}};
  a.set(j, c);
  return a;
}

namespace {

PseudoDiffOp combine(const PseudoDiffOp& a, const PseudoDiffOp& b, const Complex& sb) {
  if (!a.ring->same_as(*b.ring)) throw RingMismatch("operators over different rings");
  PseudoDiffOp r;
  r.ring = a.ring;
  r.top = std::max(a.top, b.top);
  r.finite = a.finite && b.finite;
  int low = r.finite ? std::min(a.low(), b.low()) : std::max(known_low(a), known_low(b));
  r.depth = r.top - low;
  for (const auto& [j, c] : a.coeffs)
    if (j >= low) r.set(j, c);
  for (const auto& [j, c] : b.coeffs)
    if (j >= low) r.set(j, r.coeff(j) + scale(sb, c));
  return r;
}

}  // namespace

PseudoDiffOp operator+(const PseudoDiffOp& a, const PseudoDiffOp& b) { return combine(a, b, Complex(1)); }
PseudoDiffOp operator-(const PseudoDiffOp& a, const PseudoDiffOp& b) { return combine(a, b, Complex(-1)); }

PseudoDiffOp scale(const Complex& c, const PseudoDiffOp& a) {
  PseudoDiffOp r = a;
  r.coeffs.clear();
  for (const auto& [j, x] : a.coeffs) r.set(j, scale(c, x));
  return r;
}

bool agree(const PseudoDiffOp& a, const PseudoDiffOp& b) {
  if (!a.ring->same_as(*b.ring)) return false;
  int low = std::max(known_low(a), known_low(b));
  for (const auto& [j, c] : a.coeffs)
    if (j >= low && !(c == b.coeff(j))) return false;
  for (const auto& [j, c] : b.coeffs)
    if (j >= low && !(c == a.coeff(j))) return false;
  return true;
}

PseudoDiffOp compose(const PseudoDiffOp& a, const PseudoDiffOp& b, std::optional<int> floor) {
  if (!a.ring->same_as(*b.ring)) throw RingMismatch("operators over different rings");
  PseudoDiffOp r;
  r.ring = a.ring;
  r.top = a.top + b.top;
  int low = std::max(a.finite ? kNoFloor : a.low() + b.top, b.finite ? kNoFloor : a.top + b.low());
  if (low == kNoFloor && !has_negative_orders(a)) {
    // Leibniz terms of a differential operator reach down to the orders of b.
    r.finite = true;
    low = b.low();
  }
  if (floor && *floor > low) {
    low = *floor;
    r.finite = false;
  }
  if (low == kNoFloor) throw std::invalid_argument("infinite composition needs a floor");
  r.depth = r.top - low;

  std::map<int, TermMap> acc;
  for (const auto& [k, bk] : b.coeffs) {
    Derivatives d(bk);
    for (const auto& [j, aj] : a.coeffs) {
      for (int i = 0; j + k - i >= low; ++i) {
        if (j >= 0 && i > j) break;
        Rational c = j >= 0 ? binomial(j, i) : binomial_general(j, i);
        acc[j + k - i].add_scaled(aj * d.get(i), Complex(c));
      }
    }
  }
  for (auto& [n, tm] : acc) r.set(n, tm.finish(r.ring));
  return r;
}

PseudoDiffOp commutator(const PseudoDiffOp& a, const PseudoDiffOp& b, std::optional<int> floor) {
  return compose(a, b, floor) - compose(b, a, floor);
}

PseudoDiffOp power(const PseudoDiffOp& a, int n) {
  if (n < 0) throw std::invalid_argument("negative power");
  PseudoDiffOp r = PseudoDiffOp::identity(a.ring);
  for (int i = 0; i < n; ++i) r = compose(r, a);
  return r;
}

PseudoDiffOp positive_part(const PseudoDiffOp& a) {
  if (!a.finite && a.low() > 0) throw std::logic_error("positive part needs order 0 stored");
  PseudoDiffOp r{a.ring, std::max(a.top, 0), std::max(a.top, 0), true, {}};
  for (const auto& [j, c] : a.coeffs)
    if (j >= 0) r.set(j, c);
  return r;
}

DiffPoly res(const PseudoDiffOp& a) { return a.coeff(-1); }

RingPtr gd_ring(int r) {
  if (r < 2) throw std::invalid_argument("GD hierarchy needs r >= 2");
  RingOptions o;
  o.n_vars = r - 1;
  for (int i = 0; i < r - 1; ++i) o.var_names.push_back("f" + std::to_string(i));
  return RingContext::create(o);
}

PseudoDiffOp gd_lax_operator(const RingPtr& ring, int r) {
  if (ring->n_vars() < r - 1) throw RingMismatch("ring has fewer than r-1 variables");
  PseudoDiffOp L{ring, r, r, true, {}};
  L.set(r, DiffPoly::constant(ring, Complex(1)));
  for (int i = 0; i + 2 <= r; ++i) L.set(i, DiffPoly::variable(ring, i));
  return L;
}

PseudoDiffOp rth_root(const PseudoDiffOp& L, int r, int depth) {
  if (L.top != r || !(L.coeff(r) == DiffPoly::constant(L.ring, Complex(1))))
    throw std::invalid_argument("rth_root needs a monic operator of order r");
  if (!L.finite && L.low() > r - depth) throw std::invalid_argument("operator not stored deep enough");
  Complex inv_r(make_rational(1, r));
  PseudoDiffOp q{L.ring, 1, 0, false, {}};
  q.set(1, DiffPoly::constant(L.ring, Complex(1)));
  for (int n = 1; n <= depth; ++n) {
    q.depth = n;
    PseudoDiffOp p = power(q, r);
    q.set(1 - n, scale(inv_r, L.coeff(r - n) - p.coeff(r - n)));
  }
  return q;
}

LocalFunctional gd_hamiltonian(const PseudoDiffOp& L, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  int r = L.top;
  PseudoDiffOp q = rth_root(L, r, m + r + 1);
  DiffPoly density = scale(Complex(make_rational(-r, m + r)), res(power(q, m + r)));
  return integrate(density);
}

std::map<int, DiffPoly> gd_flow(const PseudoDiffOp& L, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  int r = L.top;
  PseudoDiffOp p = positive_part(power(rth_root(L, r, m + 1), m));
  PseudoDiffOp c = commutator(p, L);
  for (const auto& [j, x] : c.coeffs)
    if (j >= r - 1) throw std::logic_error("commutator has order " + std::to_string(j));
  std::map<int, DiffPoly> out;
  for (int i = 0; i + 2 <= r; ++i) out.emplace(i, c.coeff(i));
  return out;
}

std::vector<DiffPoly> gd_operator_bracket(const PseudoDiffOp& L, const std::vector<DiffPoly>& x) {
  int r = L.top;
  if (static_cast<int>(x.size()) != r - 1) throw std::invalid_argument("X needs r-1 entries");
  PseudoDiffOp X = PseudoDiffOp::zero(L.ring);
  X.finite = false;
  X.depth = r;  // orders 0 .. -r
  for (int b = 0; b + 1 < r; ++b)
    X = X + compose(PseudoDiffOp::term(DiffPoly::constant(L.ring, Complex(1)), -(b + 1)),
                    PseudoDiffOp::term(x[b], 0), -r);
  PseudoDiffOp c = positive_part(commutator(X, L));
  for (const auto& [j, v] : c.coeffs)
    if (j >= r - 1) throw std::logic_error("[X, L]_+ has order " + std::to_string(j));
  std::vector<DiffPoly> out;
  for (int a = 0; a + 1 < r; ++a) out.push_back(c.coeff(a));
  return out;
}

HamiltonianOperator gd_operator(const PseudoDiffOp& L) {
  int r = L.top, n = r - 1;
  const RingPtr& ring = L.ring;
  if (ring->n_vars() != n || !ring->params().empty()) throw RingMismatch("gd_operator expects the GD ring");
  RingOptions o = ring->options();
  o.n_vars = 2 * n;
  for (int b = 0; b < n; ++b) o.var_names.push_back("X" + std::to_string(b));
  o.eta.clear();
  RingPtr aux = RingContext::create(o);

  PseudoDiffOp La{aux, L.top, L.depth, L.finite, {}};
  for (const auto& [j, c] : L.coeffs) La.set(j, lift(c, aux));
  std::vector<DiffPoly> xs;
  for (int b = 0; b < n; ++b) xs.push_back(DiffPoly::variable(aux, n + b));
  std::vector<DiffPoly> img = gd_operator_bracket(La, xs);

  std::vector<std::vector<DiffOperator>> entries(n, std::vector<DiffOperator>(n));
  for (int a = 0; a < n; ++a) {
    std::map<std::pair<int, int>, std::vector<Term>> parts;
    for (const auto& t : img[a].terms()) {
      Monomial m = t.mono;
      auto it = std::find_if(m.factors.begin(), m.factors.end(), [&](const Factor& f) { return f.var >= n; });
      if (it == m.factors.end() || it->power != 1) throw std::logic_error("[X, L]_+ is not linear in X");
      std::pair<int, int> key{it->var - n, it->order};
      m.factors.erase(it);
      if (std::any_of(m.factors.begin(), m.factors.end(), [&](const Factor& f) { return f.var >= n; }))
        throw std::logic_error("[X, L]_+ is not linear in X");
      parts[key].push_back(Term{std::move(m), t.coeff});
    }
    for (auto& [key, terms] : parts) {
      DiffPoly c = DiffPoly::from_terms(ring, std::move(terms));
      if (!c.is_zero()) entries[a][key.first].coeffs[key.second] = c;
    }
  }
  return HamiltonianOperator(ring, std::move(entries));
}

std::map<int, NormalCoordinate> gd_normal_coords(const PseudoDiffOp& L) {
  int r = L.top;
  PseudoDiffOp q = rth_root(L, r, r + 1);
  std::map<int, NormalCoordinate> out;
  PseudoDiffOp p = PseudoDiffOp::identity(L.ring);
  std::vector<DiffPoly> residues(r);
  for (int k = 1; k < r; ++k) {
    p = compose(p, q);
    residues[k] = res(p);
  }
  for (int a = 1; a < r; ++a) {
    int k = r - a;
    // (-r)^{(k-1)/2}: integer part folded in, a leftover half power kept symbolic.
    int e = (k - 1) / 2;
    bool half = (k - 1) % 2 != 0;
    Rational denom = k;
    for (int i = 0; i < e; ++i) denom *= -r;
    Rational inv = 1 / denom;
    inv.canonicalize();
    out[a] = NormalCoordinate{scale(Complex(inv), residues[k]), half};
  }
  return out;
}

Json to_json(const PseudoDiffOp& a) {
  Json coeffs = Json::object();
  for (const auto& [j, c] : a.coeffs) coeffs[std::to_string(j)] = to_json(c);
  Json doc{{"top", a.top}, {"depth", a.depth}, {"coeffs", coeffs}};
  if (a.finite) doc["finite"] = true;
  return doc;
}

PseudoDiffOp pseudo_from_json(const Json& doc, const RingPtr& ring) {
  if (!doc.is_object() || !doc.contains("top") || !doc.contains("depth") || !doc.contains("coeffs"))
    throw ParseError("pseudo-differential operator needs top, depth and coeffs");
  PseudoDiffOp a{ring, doc["top"].get<int>(), doc["depth"].get<int>(), doc.value("finite", false), {}};
  for (const auto& [key, c] : doc["coeffs"].items()) {
    int j = 0;
    try {
      j = std::stoi(key);
    } catch (const std::exception&) {
      throw ParseError("/coeffs/" + key + ": order is not an integer");
    }
    if (j > a.top || j < a.low()) throw ParseError("/coeffs/" + key + ": order outside the stored range");
    a.set(j, from_json(c, ring));
  }
  return a;
}

}  // namespace hier
