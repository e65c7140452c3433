#include "hier/presets.hpp"

#include "hier/brackets.hpp"
#include "hier/io.hpp"

namespace hier {

namespace {

DiffPoly P(const RingPtr& ring, const std::string& text) { return parse_pretty(text, ring); }

DiffPoly R(long num, long den, const DiffPoly& f) {
  return scale(Complex(make_rational(num, den)), f);
}

DiffPoly i_hbar(const RingPtr& ring) { return scale(Complex::i_unit(), DiffPoly::hbar(ring)); }

RingPtr make_ring(int n_vars, Mode mode, TruncationWindow window, std::vector<std::string> params,
                  std::vector<std::string> names = {}, Matrix eta = {}) {
  RingOptions o;
  o.n_vars = n_vars;
  o.mode = mode;
  o.window = window;
  o.params = std::move(params);
  o.var_names = std::move(names);
  o.eta = std::move(eta);
  return RingContext::create(o);
}

void require_finite(const TruncationWindow& w, bool order, bool degree, const std::string& name) {
  if (order && w.max_order == kUnbounded) throw std::invalid_argument(name + " needs a finite eps-order");
  if (degree && w.max_u_degree == kUnbounded) throw std::invalid_argument(name + " needs a finite u-degree");
}

// Largest g with eps^{2g} inside the window.
int genus_bound(const RingPtr& ring) { return ring->window().max_order / 2; }

}  // namespace

Rational s_series_coeff(int k) {
  Rational four_k = 1;
  for (int i = 0; i < k; ++i) four_k *= 4;
  return 1 / (four_k * factorial(2 * k + 1));
}

std::vector<std::string> preset_names() { return {"kdv", "ilw", "toda", "3-spin", "4-spin", "5-spin", "rank1"}; }

// ---- KdV

RingPtr kdv_ring(Mode mode, TruncationWindow window) { return make_ring(1, mode, window, {}); }

DiffPoly kdv_generator(const RingPtr& ring) {
  DiffPoly g = P(ring, "u^3/6 + (1/24) eps^2 u u_2");
  if (ring->quantum()) g = g + R(-1, 24, i_hbar(ring) * P(ring, "u"));
  return g;
}

ConstantsPolicy kdv_paper_constants(const RingPtr& ring) {
  ConstantsPolicy c;
  c.kind = ConstantsKind::Table;
  DiffPoly ih = i_hbar(ring);
  auto e = [&](int p) { return DiffPoly::eps(ring, p); };
  c.table[{0, 0}] = R(-1, 24, ih);
  c.table[{0, 1}] = R(-1, 2880, ih * e(2));
  c.table[{0, 2}] = R(-1, 120960, ih * e(4)) + R(7, 5760, power(ih, 2));
  return c;
}

// ---- ILW

RingPtr ilw_ring(Mode mode, TruncationWindow window) {
  require_finite(window, true, false, "ilw");
  return make_ring(1, mode, window, {"mu"});
}

DiffPoly ilw_generator(const RingPtr& ring) {
  DiffPoly g = P(ring, "u^3/6");
  int gmax = genus_bound(ring);
  auto mu = [&](int p) { return DiffPoly::param(ring, "mu", p); };
  for (int k = 1; k <= gmax; ++k) {
    Rational c = abs(bernoulli(2 * k)) / (2 * factorial(2 * k));
    DiffPoly uu = DiffPoly::variable(ring, 0) * DiffPoly::variable(ring, 0, 2 * k);
    g = g + scale(Complex(c), DiffPoly::eps(ring, 2 * k) * mu(k - 1) * uu);
  }
  if (ring->quantum()) {
    DiffPoly ih = i_hbar(ring);
    g = g + R(-1, 24, ih * DiffPoly::variable(ring, 0));
    for (int k = 1; 2 * k <= ring->window().max_order; ++k) {
      Rational c = abs(bernoulli(2 * k)) / (2 * factorial(2 * k));
      DiffPoly uu = DiffPoly::variable(ring, 0) * DiffPoly::variable(ring, 0, 2 * k);
      g = g - scale(Complex(c), ih * DiffPoly::eps(ring, 2 * k - 2) * mu(k) * uu);
    }
  }
  return g;
}

DiffPoly ilw_miura_generator(const RingPtr& ring) {
  DiffPoly f(ring);
  for (int k = 1; k <= genus_bound(ring); ++k) {
    Rational two = 1;
    for (int i = 0; i < 2 * k - 1; ++i) two *= 2;
    Rational c = (two - 1) / two * abs(bernoulli(2 * k)) / factorial(2 * k);
    f = f + scale(Complex(c), DiffPoly::eps(ring, 2 * k) * DiffPoly::param(ring, "mu", k) *
                                  DiffPoly::variable(ring, 0, 2 * k - 2));
  }
  return f;
}

DiffPoly ilw_miura_image(const RingPtr& ring) {
  DiffPoly f = DiffPoly::variable(ring, 0);
  for (int k = 1; k <= genus_bound(ring); ++k) {
    Rational two = 1;
    for (int i = 0; i < 2 * k - 1; ++i) two *= 2;
    Rational c = (two - 1) / two * abs(bernoulli(2 * k)) / factorial(2 * k);
    f = f + scale(Complex(c), DiffPoly::eps(ring, 2 * k) * DiffPoly::param(ring, "mu", k) *
                                  DiffPoly::variable(ring, 0, 2 * k));
  }
  return f;
}

// ---- extended Toda

RingPtr toda_ring(Mode mode, TruncationWindow window) {
  require_finite(window, true, true, "toda");
  Matrix eta = {{Complex(0), Complex(1)}, {Complex(1), Complex(0)}};
  return make_ring(2, mode, window, {"q"}, {"u1", "uw"}, eta);
}

DiffPoly toda_generator(const RingPtr& ring) {
  const int one = 0, w = 1;
  int gmax = genus_bound(ring);
  auto u = [&](int var, int k) { return DiffPoly::variable(ring, var, k); };
  DiffPoly g = R(1, 2, u(one, 0) * u(one, 0) * u(w, 0));
  for (int k = 1; k <= gmax; ++k)
    g = g + scale(Complex(bernoulli(2 * k) / factorial(2 * k)), DiffPoly::eps(ring, 2 * k) * u(one, 0) * u(one, 2 * k));
  // S(eps dx) u^w and cosh(eps dx/2) u^w
  DiffPoly su(ring), cu(ring);
  for (int k = 0; k <= gmax; ++k) {
    Rational four_k = 1;
    for (int i = 0; i < k; ++i) four_k *= 4;
    su = su + scale(Complex(s_series_coeff(k)), DiffPoly::eps(ring, 2 * k) * u(w, 2 * k));
    cu = cu + scale(Complex(1 / (four_k * factorial(2 * k))), DiffPoly::eps(ring, 2 * k) * u(w, 2 * k));
  }
  DiffPoly ex = DiffPoly::constant(ring, Complex(1)), pw = ex;
  for (int n = 1; n <= ring->window().max_u_degree; ++n) {
    pw = scale(Complex(make_rational(1, n)), pw * su);
    if (pw.is_zero()) break;
    ex = ex + pw;
  }
  DiffPoly q = DiffPoly::param(ring, "q");
  g = g + q * (cu - DiffPoly::constant(ring, Complex(2))) * ex + q * u(w, 0);
  if (ring->quantum()) {
    DiffPoly ih = i_hbar(ring);
    g = g + R(-1, 12, ih * u(one, 0));
    for (int k = 1; 2 * k <= ring->window().max_order; ++k)
      g = g + scale(Complex(bernoulli(2 * k) / factorial(2 * k)),
                    ih * DiffPoly::eps(ring, 2 * k - 2) * u(w, 2 * k) * u(one, 0));
  }
  return drop_constants(g);
}

// ---- r-spin

RingPtr rspin_ring(int r, Mode mode, TruncationWindow window) {
  if (r < 3 || r > 5) throw std::invalid_argument("r-spin preset needs r in {3, 4, 5}");
  if (r == 5 && mode == Mode::Quantum) throw std::invalid_argument("5-spin preset is classical only");
  Matrix eta(r - 1, std::vector<Complex>(r - 1, Complex(0)));
  for (int a = 0; a < r - 1; ++a) eta[a][r - 2 - a] = Complex(1);
  return make_ring(r - 1, mode, window, {}, {}, eta);
}

DiffPoly rspin_generator(const RingPtr& ring, int r) {
  DiffPoly g(ring);
  DiffPoly ih = ring->quantum() ? i_hbar(ring) : DiffPoly(ring);
  if (r == 3) {
    g = P(ring,
          "(1/2) u1^2 u2 + u2^4/36 + (-1/12) eps^2 u1_1^2 + (-1/24) eps^2 u2 u2_1^2 + (1/432) eps^4 u2_2^2");
    if (ring->quantum()) g = g + R(-1, 12, ih * P(ring, "u1"));
  } else if (r == 4) {
    g = P(ring,
          "u1 u2^2/2 + u1^2 u3/2 + u2^2 u3^2/8 + u3^5/320"
          " + (-1/8) eps^2 u1_1^2 + (-1/16) eps^2 u3 u2_1^2 + (-1/32) eps^2 u3 u1_1 u3_1"
          " + (3/64) eps^2 u2^2 u3_2 + (1/192) eps^2 u3^3 u3_2"
          " + (1/160) eps^4 u2_2^2 + (3/640) eps^4 u1_2 u3_2 + (5/4096) eps^4 u3^2 u3_4"
          " + (-1/8192) eps^6 u3_3^2");
    if (ring->quantum())
      g = g + ih * P(ring, "(1/96) u3_1^2 + (-1/96) u3^2 + (-1/8) u1") + R(-1, 1280, ih * P(ring, "eps^2 u3"));
  } else if (r == 5) {
    g = P(ring,
          "u1^2 u4/2 + u1 u2 u3 + u2^3/6 + u3^4/30 + (1/5) u2 u3^2 u4 + (1/10) u2^2 u4^2"
          " + (1/50) u3^2 u4^3 + u4^6/3750"
          " + (1/6) eps^2 u1 u1_2 + (3/20) eps^2 u2 u3 u3_2 + (1/10) eps^2 u2 u3_1^2 + (1/20) eps^2 u1_2 u3 u4"
          " + (1/10) eps^2 u2 u2_2 u4 + (1/40) eps^2 u2_1^2 u4 + (1/50) eps^2 u2 u4 u4_1^2"
          " + (1/75) eps^2 u2 u4^2 u4_2 + (1/75) eps^2 u3^2 u4 u4_2 + (1/50) eps^2 u3 u3_2 u4^2"
          " + (1/1200) eps^2 u4^4 u4_2"
          " + (7/600) eps^4 u2 u2_4 + (11/900) eps^4 u1 u3_4 + (7/1200) eps^4 u2 u4 u4_4"
          " + (17/1200) eps^4 u2 u4_1 u4_3 + (71/7200) eps^4 u2 u4_2^2 + (31/3600) eps^4 u3 u3_4 u4"
          " + (7/450) eps^4 u3_1 u3_3 u4 + (91/7200) eps^4 u3_2^2 u4 + (13/12000) eps^4 u4_2^2 u4^2"
          " + (3/4000) eps^4 u4_2 u4_1^2 u4"
          " + (53/108000) eps^6 u3 u3_6 + (11/18000) eps^6 u2 u4_6 + (1397/6480000) eps^6 u4_3^2 u4"
          " + (617/1620000) eps^6 u4_4 u4_2 u4"
          " + (107/10800000) eps^8 u4 u4_8");
  } else {
    throw std::invalid_argument("r-spin preset needs r in {3, 4, 5}");
  }
  return g;
}

// ---- rank 1 family

RingPtr rank1_ring(Mode mode, TruncationWindow window) { return make_ring(1, mode, window, {"s1", "s2", "s3"}); }

DiffPoly rank1_generator(const RingPtr& ring, int max_genus) {
  if (max_genus < 0 || max_genus > 3) throw std::invalid_argument("rank1 generator known through genus 3");
  const bool q = ring->quantum();
  DiffPoly ih = q ? i_hbar(ring) : DiffPoly(ring);
  auto ih_pow = [&](int n) { return power(ih, n); };
  auto s = [&](const std::string& name, int p) { return DiffPoly::param(ring, name, p); };
  auto e = [&](int p) { return DiffPoly::eps(ring, p); };
  DiffPoly g = P(ring, "u^3/6");
  if (max_genus >= 1) {
    DiffPoly c = R(-1, 24, e(2));
    if (q) c = c + R(-1, 2, s("s1", 1) * ih);
    g = g + c * P(ring, "u_1^2");
    if (q) g = g + R(-1, 24, ih * P(ring, "u"));
  }
  if (max_genus >= 2) {
    DiffPoly c = R(-1, 120, s("s1", 1) * e(4));
    if (q)
      c = c + R(-1, 10, s("s1", 2) * ih * e(2)) -
          (R(24, 60, s("s1", 3)) + R(5, 60, s("s2", 1))) * ih_pow(2);
    g = g + c * P(ring, "u_2^2");
  }
  if (max_genus >= 3) {
    DiffPoly c2 = R(-1, 360, s("s1", 3) * e(6)) + R(-1, 1728, s("s2", 1) * e(6));
    DiffPoly c3 = R(-1, 420, s("s1", 2) * e(6));
    if (q) {
      c2 = c2 - (R(24, 720, s("s1", 4)) + R(5, 720, s("s1", 1) * s("s2", 1))) * ih * e(4) -
           (R(4608, 28800, s("s1", 5)) + R(2400, 28800, s("s2", 1) * s("s1", 2)) +
            R(35, 28800, s("s3", 1))) *
               ih_pow(2) * e(2) -
           (R(2304, 7200, s("s1", 6)) + R(2400, 7200, s("s2", 1) * s("s1", 3)) +
            R(105, 7200, s("s3", 1) * s("s1", 1)) - R(500, 7200, s("s2", 2))) *
               ih_pow(3);
      c3 = c3 - (R(96, 2520, s("s1", 3)) + R(5, 2520, s("s2", 1))) * ih * e(4) -
           (R(24, 105, s("s1", 4)) + R(5, 105, s("s2", 1) * s("s1", 1))) * ih_pow(2) * e(2) -
           (R(4608, 8400, s("s1", 5)) + R(2400, 8400, s("s2", 1) * s("s1", 2)) +
            R(35, 8400, s("s3", 1))) *
               ih_pow(3);
    }
    g = g + c2 * P(ring, "u_2^3") + c3 * P(ring, "u_3^2");
  }
  return g;
}

// ---- closed form

DiffPoly kdv_closed_form(const RingPtr& ring, int d) {
  if (d < -1) throw std::invalid_argument("closed form starts at z^-1");
  if (!ring->quantum()) throw ModeMismatch("closed form needs a quantum ring");
  const int n = d + 2;  // power of z in A(z) E(z)
  // 1/S(y) = sum a_k y^{2k}
  std::vector<Rational> a(n / 2 + 1);
  a[0] = 1;
  for (int m = 1; m < static_cast<int>(a.size()); ++m) {
    Rational acc = 0;
    for (int k = 1; k <= m; ++k) acc -= s_series_coeff(k) * a[m - k];
    a[m] = acc;
  }
  DiffPoly ih = i_hbar(ring);
  DiffPoly minus_ih = -ih;
  // X(z) = S((lambda/sqrt i) z dx) u = sum_k z^{2k} (-i hbar)^k u_{2k} / (4^k (2k+1)!)
  std::vector<DiffPoly> x(n + 1, DiffPoly(ring));
  for (int k = 0; 2 * k <= n; ++k)
    x[2 * k] = scale(Complex(s_series_coeff(k)), power(minus_ih, k) * DiffPoly::variable(ring, 0, 2 * k));
  auto mul = [&](const std::vector<DiffPoly>& p, const std::vector<DiffPoly>& q) {
    std::vector<DiffPoly> r(n + 1, DiffPoly(ring));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j)
        if (!p[i].is_zero() && !q[j].is_zero()) r[i + j] = r[i + j] + p[i] * q[j];
    return r;
  };
  // zX
  std::vector<DiffPoly> zx(n + 1, DiffPoly(ring));
  for (int i = 0; i < n; ++i) zx[i + 1] = x[i];
  std::vector<DiffPoly> e(n + 1, DiffPoly(ring)), pw(n + 1, DiffPoly(ring));
  e[0] = pw[0] = DiffPoly::constant(ring, Complex(1));
  for (int m = 1; m <= n; ++m) {
    pw = mul(pw, zx);
    for (auto& t : pw) t = scale(Complex(make_rational(1, m)), t);
    for (int i = 0; i <= n; ++i) e[i] = e[i] + pw[i];
  }
  DiffPoly out(ring);
  for (int k = 0; 2 * k <= n; ++k) out = out + scale(Complex(a[k]), power(ih, k) * e[n - 2 * k]);
  return out;
}

// ---- catalog

HierarchySpec preset(const std::string& name, const PresetOptions& opts) {
  TruncationWindow w{opts.max_order, opts.max_u_degree};
  HierarchySpec s;
  s.name = name;
  s.d_max = opts.d_max;
  s.constants.kind = opts.constants;
  DiffPoly g;
  if (name == "kdv") {
    s.ring = kdv_ring(opts.mode, w);
    g = kdv_generator(s.ring);
    if (opts.constants == ConstantsKind::Table) {
      if (!s.ring->quantum()) throw std::invalid_argument("kdv constants table is quantum only");
      s.constants = kdv_paper_constants(s.ring);
    }
  } else if (name == "ilw") {
    s.ring = ilw_ring(opts.mode, w);
    g = ilw_generator(s.ring);
  } else if (name == "toda") {
    s.ring = toda_ring(opts.mode, w);
    g = toda_generator(s.ring);
  } else if (name == "3-spin" || name == "4-spin" || name == "5-spin") {
    int r = name[0] - '0';
    s.ring = rspin_ring(r, opts.mode, w);
    g = rspin_generator(s.ring, r);
  } else if (name == "rank1") {
    s.ring = rank1_ring(opts.mode, w);
    int genus = w.max_order == kUnbounded ? 3 : std::min(3, w.max_order / 2);
    g = rank1_generator(s.ring, genus);
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  if (opts.constants == ConstantsKind::Table && name != "kdv")
    throw std::invalid_argument("no constants table for preset '" + name + "'");
  s.generator = integrate(g);
  return s;
}

}  // namespace hier
