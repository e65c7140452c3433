#include "hier/io.hpp"

#include <sstream>

namespace hier {

namespace {

Json ring_json(const RingContext& r) {
  return Json{{"n_vars", r.n_vars()}, {"params", r.params()}, {"var_names", r.var_names()}};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected integer");
  return j.get<int>();
}

Rational get_rational(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected rational string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

RingPtr ring_from_doc(const Json& doc) {
  if (!doc.is_object()) fail("", "expected object");
  if (!doc.contains("ring") || !doc["ring"].is_object()) fail("/ring", "missing ring block");
  const Json& r = doc["ring"];
  if (!r.contains("n_vars")) fail("/ring/n_vars", "missing");
  RingOptions o;
  o.n_vars = get_int(r["n_vars"], "/ring/n_vars");
  if (o.n_vars < 1) fail("/ring/n_vars", "must be >= 1");
  if (r.contains("params")) {
    if (!r["params"].is_array()) fail("/ring/params", "expected array");
    for (size_t i = 0; i < r["params"].size(); ++i) {
      if (!r["params"][i].is_string()) fail("/ring/params/" + std::to_string(i), "expected string");
      o.params.push_back(r["params"][i].get<std::string>());
    }
  }
  if (r.contains("var_names")) {
    if (!r["var_names"].is_array()) fail("/ring/var_names", "expected array");
    for (size_t i = 0; i < r["var_names"].size(); ++i) {
      if (!r["var_names"][i].is_string()) fail("/ring/var_names/" + std::to_string(i), "expected string");
      o.var_names.push_back(r["var_names"][i].get<std::string>());
    }
  }
  bool hbar = false;
  if (doc.contains("terms") && doc["terms"].is_array())
    for (const auto& t : doc["terms"])
      if (t.is_object() && t.contains("hbar") && t["hbar"].is_number_integer() && t["hbar"].get<int>() > 0)
        hbar = true;
  o.mode = hbar ? Mode::Quantum : Mode::Classical;
  try {
    return RingContext::create(o);
  } catch (const std::exception& e) {
    fail("/ring", e.what());
  }
}

std::string rational_text(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

}  // namespace

Json to_json(const DiffPoly& f) {
  const auto& ring = *f.ring();
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    Json params = Json::object();
    for (size_t i = 0; i < t.mono.params.size(); ++i)
      if (t.mono.params[i] != 0) params[ring.params()[i]] = t.mono.params[i];
    Json factors = Json::array();
    for (const auto& fa : t.mono.factors) factors.push_back(Json::array({fa.var + 1, fa.order, fa.power}));
    terms.push_back(Json{{"re", rational_string(t.coeff.re)},
                         {"im", rational_string(t.coeff.im)},
                         {"params", params},
                         {"eps", t.mono.eps},
                         {"hbar", t.mono.hbar},
                         {"factors", factors}});
  }
  return Json{{"ring", ring_json(ring)}, {"terms", terms}};
}

DiffPoly from_json(const Json& doc) { return from_json(doc, ring_from_doc(doc)); }

DiffPoly from_json(const Json& doc, const RingPtr& ring) {
  if (!doc.is_object()) fail("", "expected object");
  if (doc.contains("ring")) {
    const Json& r = doc["ring"];
    if (!r.is_object()) fail("/ring", "expected object");
    if (r.contains("n_vars") && get_int(r["n_vars"], "/ring/n_vars") != ring->n_vars())
      fail("/ring/n_vars", "does not match ring context");
    if (r.contains("params") && r["params"] != Json(ring->params()))
      fail("/ring/params", "does not match ring context");
  }
  if (!doc.contains("terms") || !doc["terms"].is_array()) fail("/terms", "expected array");
  std::vector<Term> terms;
  const Json& ts = doc["terms"];
  for (size_t i = 0; i < ts.size(); ++i) {
    std::string p = "/terms/" + std::to_string(i);
    const Json& t = ts[i];
    if (!t.is_object()) fail(p, "expected object");
    Term term;
    term.coeff.re = t.contains("re") ? get_rational(t["re"], p + "/re") : Rational(0);
    term.coeff.im = t.contains("im") ? get_rational(t["im"], p + "/im") : Rational(0);
    term.mono.params.assign(ring->params().size(), 0);
    if (t.contains("params")) {
      if (!t["params"].is_object()) fail(p + "/params", "expected object");
      for (const auto& [name, e] : t["params"].items()) {
        int idx = ring->param_index(name);
        if (idx < 0) fail(p + "/params/" + name, "undeclared parameter");
        int v = get_int(e, p + "/params/" + name);
        if (v < 0) fail(p + "/params/" + name, "negative exponent");
        term.mono.params[idx] = v;
      }
    }
    term.mono.eps = t.contains("eps") ? get_int(t["eps"], p + "/eps") : 0;
    term.mono.hbar = t.contains("hbar") ? get_int(t["hbar"], p + "/hbar") : 0;
    if (term.mono.eps < 0) fail(p + "/eps", "negative");
    if (term.mono.hbar < 0) fail(p + "/hbar", "negative");
    if (term.mono.hbar > 0 && !ring->quantum()) fail(p + "/hbar", "hbar in classical ring");
    if (t.contains("factors")) {
      const Json& fs = t["factors"];
      if (!fs.is_array()) fail(p + "/factors", "expected array");
      for (size_t k = 0; k < fs.size(); ++k) {
        std::string fp = p + "/factors/" + std::to_string(k);
        if (!fs[k].is_array() || fs[k].size() != 3) fail(fp, "expected [alpha, k, pow]");
        int a = get_int(fs[k][0], fp + "/0"), o = get_int(fs[k][1], fp + "/1"), w = get_int(fs[k][2], fp + "/2");
        if (a < 1 || a > ring->n_vars()) fail(fp + "/0", "variable index out of range");
        if (o < 0) fail(fp + "/1", "negative derivative order");
        if (w < 1) fail(fp + "/2", "power must be positive");
        for (const auto& prev : term.mono.factors)
          if (prev.var == a - 1 && prev.order == o) fail(fp, "duplicate (alpha, k) key");
        term.mono.factors.push_back({a - 1, o, w});
      }
    }
    terms.push_back(std::move(term));
  }
  return DiffPoly::from_terms(ring, std::move(terms));
}

std::string serialize(const DiffPoly& f) { return to_json(f).dump(); }

DiffPoly parse(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return from_json(doc);
}

DiffPoly parse(const std::string& text, const RingPtr& ring) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return from_json(doc, ring);
}

// ---- pretty

namespace {

std::string power_suffix(int e) { return e == 1 ? "" : "^" + std::to_string(e); }

std::string render(const RingContext& ring, const Monomial& m, const Rational& c, bool with_i) {
  std::vector<std::string> atoms;
  if (with_i) atoms.push_back("i");
  for (size_t i = 0; i < m.params.size(); ++i)
    if (m.params[i]) atoms.push_back(ring.params()[i] + power_suffix(m.params[i]));
  if (m.eps) atoms.push_back("eps" + power_suffix(m.eps));
  if (m.hbar) atoms.push_back("hbar" + power_suffix(m.hbar));
  bool pure_u = atoms.empty() && !m.factors.empty();
  for (const auto& f : m.factors) {
    std::string a = ring.var_names()[f.var];
    if (f.order) a += "_" + std::to_string(f.order);
    atoms.push_back(a + power_suffix(f.power));
  }
  std::string body;
  for (size_t i = 0; i < atoms.size(); ++i) body += (i ? " " : "") + atoms[i];
  if (atoms.empty()) return c == 1 ? "1" : "(" + rational_text(c) + ")";
  if (c == 1) return body;
  if (pure_u && c.get_num() == 1 && c.get_den() > 1) return body + "/" + c.get_den().get_str();
  return "(" + rational_text(c) + ") " + body;
}

}  // namespace

std::string pretty(const DiffPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (sgn(t.coeff.re) != 0) out += (out.empty() ? "" : " + ") + render(*f.ring(), t.mono, t.coeff.re, false);
    if (sgn(t.coeff.im) != 0) out += (out.empty() ? "" : " + ") + render(*f.ring(), t.mono, t.coeff.im, true);
  }
  return out;
}

DiffPoly parse_pretty(const std::string& text, const RingPtr& ring) {
  if (text == "0") return DiffPoly(ring);
  std::vector<std::string> terms;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(" + ", start);
    terms.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 3;
  }
  auto parse_int = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad integer '" + s + "' in '" + text + "'");
    return std::stoi(s);
  };
  DiffPoly sum(ring);
  for (const auto& term : terms) {
    std::istringstream in(term);
    std::vector<std::string> toks;
    for (std::string tok; in >> tok;) toks.push_back(tok);
    if (toks.empty()) throw ParseError("empty term in '" + text + "'");
    Complex c(1);
    size_t i = 0;
    if (toks[0].front() == '(') {
      if (toks[0].back() != ')') throw ParseError("unterminated coefficient '" + toks[0] + "'");
      try {
        c = Complex(parse_rational(toks[0].substr(1, toks[0].size() - 2)));
      } catch (const std::exception& e) {
        throw ParseError(e.what());
      }
      i = 1;
    }
    if (i < toks.size()) {
      auto& last = toks.back();
      auto slash = last.find('/');
      if (slash != std::string::npos) {
        c /= Complex(Rational(parse_int(last.substr(slash + 1))));
        last = last.substr(0, slash);
      }
    }
    Monomial m;
    m.params.assign(ring->params().size(), 0);
    for (; i < toks.size(); ++i) {
      std::string a = toks[i];
      if (a == "1") continue;
      if (a == "i") {
        c *= Complex::i_unit();
        continue;
      }
      int e = 1;
      if (auto caret = a.find('^'); caret != std::string::npos) {
        e = parse_int(a.substr(caret + 1));
        a = a.substr(0, caret);
      }
      if (a == "eps") {
        m.eps += e;
      } else if (a == "hbar") {
        m.hbar += e;
      } else if (int p = ring->param_index(a); p >= 0) {
        m.params[p] += e;
      } else {
        int order = 0;
        std::string name = a;
        if (auto us = a.rfind('_'); us != std::string::npos) {
          name = a.substr(0, us);
          order = parse_int(a.substr(us + 1));
        }
        int var = -1;
        for (int v = 0; v < ring->n_vars(); ++v)
          if (ring->var_names()[v] == name) var = v;
        if (var < 0) throw ParseError("unknown symbol '" + a + "' in '" + text + "'");
        Monomial f;
        f.factors.push_back({var, order, e});
        m = multiply(m, f);
      }
    }
    sum = sum + DiffPoly::monomial(ring, m, c);
  }
  return sum;
}

}  // namespace hier
