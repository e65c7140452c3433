#include "hier/cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hier/ansatz.hpp"
#include "hier/lax.hpp"
#include "hier/miura.hpp"
#include "hier/presets.hpp"
#include "hier/recursion.hpp"

namespace hier::cli {

namespace {

const std::set<std::string> kCommands = {"generate", "verify", "miura", "ansatz", "lax", "evolve", "pretty", "diff"};
const std::set<std::string> kChecks = {"commutativity", "string", "second-recursion", "tau", "omega"};

template <class T>
void read_field(const Json& doc, const char* key, T& out) {
  if (!doc.contains(key)) return;
  try {
    out = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("/") + key, "wrong type");
  }
}

template <class T>
void read_field(const Json& doc, const char* key, std::optional<T>& out) {
  if (!doc.contains(key) || doc.at(key).is_null()) return;
  T v{};
  read_field(doc, key, v);
  out = v;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void validate(const JobConfig& c) {
  if (!kCommands.count(c.command)) throw ConfigError("/command", "unknown command '" + c.command + "'");
  if (c.mode != "classical" && c.mode != "quantum") throw ConfigError("/mode", "must be classical or quantum");
  if (c.format != "json" && c.format != "pretty") throw ConfigError("/format", "must be json or pretty");
  if (c.constants != "zero" && c.constants != "paper" && c.constants != "string")
    throw ConfigError("/constants", "must be zero, paper or string");
  if (c.d_max < 0) throw ConfigError("/d_max", "must be >= 0");
  if (c.genus_cutoff && *c.genus_cutoff < 0) throw ConfigError("/genus_cutoff", "must be >= 0");
  if (c.genus_cutoff && c.eps_order) throw ConfigError("/eps_order", "conflicts with genus_cutoff");
  if (c.u_degree_cutoff && *c.u_degree_cutoff < 1) throw ConfigError("/u_degree_cutoff", "must be >= 1");
  for (size_t i = 0; i < c.checks.size(); ++i)
    if (!kChecks.count(c.checks[i])) throw ConfigError("/checks/" + std::to_string(i), "unknown check '" + c.checks[i] + "'");
  if (c.threads < 0) throw ConfigError("/threads", "must be >= 0");
  bool needs_hierarchy = c.command == "generate" || c.command == "verify" || c.command == "miura" || c.command == "evolve";
  if (needs_hierarchy && c.preset.empty() && c.input.empty()) throw ConfigError("/preset", "preset or input required");
  if ((c.command == "pretty" || c.command == "diff") && c.input.empty()) throw ConfigError("/input", "required");
  if (c.command == "diff" && c.input2.empty()) throw ConfigError("/input2", "required");
  if (c.command == "lax" && (c.r < 2 || c.m_max < 1)) throw ConfigError("/r", "needs r >= 2 and m_max >= 1");
  if (c.command == "ansatz" && (c.genus < 0 || c.d_check < 0 || c.lookahead < 0))
    throw ConfigError("/genus", "genus, d_check and lookahead must be >= 0");
}

Mode mode_of(const JobConfig& c) { return c.mode == "quantum" ? Mode::Quantum : Mode::Classical; }

TruncationWindow window_of(const JobConfig& c) {
  TruncationWindow w;
  if (c.genus_cutoff) w.max_order = 2 * *c.genus_cutoff;
  if (c.eps_order) w.max_order = *c.eps_order;
  if (c.u_degree_cutoff) w.max_u_degree = *c.u_degree_cutoff;
  return w;
}

HierarchySpec spec_of(const JobConfig& c) {
  ConstantsKind kind = c.constants == "paper" ? ConstantsKind::Table
                       : c.constants == "string" ? ConstantsKind::String
                                                 : ConstantsKind::Zero;
  if (!c.preset.empty()) {
    PresetOptions o;
    o.mode = mode_of(c);
    o.d_max = c.d_max;
    TruncationWindow w = window_of(c);
    o.max_order = w.max_order;
    o.max_u_degree = w.max_u_degree;
    o.constants = kind;
    return preset(c.preset, o);
  }
  if (kind == ConstantsKind::Table) throw ConfigError("/constants", "paper constants need a preset");
  DiffPoly g = from_json(read_json_file(c.input));
  RingOptions ro = g.ring()->options();
  ro.mode = mode_of(c);
  ro.window = window_of(c);
  HierarchySpec s;
  s.name = "input";
  s.ring = RingContext::create(ro);
  s.generator = integrate(lift(g, s.ring));
  s.d_max = c.d_max;
  s.constants.kind = kind;
  return s;
}

std::string key_of(const DensityKey& k) { return std::to_string(k.first + 1) + "," + std::to_string(k.second); }

Json report_doc(const Report& r) { return Json{{"ok", r.ok()}, {"entries", r.to_json()}}; }

Json operator_json(const HamiltonianOperator& k) {
  Json rows = Json::array();
  for (int a = 0; a < k.size(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < k.size(); ++b) {
      Json e = Json::object();
      for (const auto& [j, c] : k.entry(a, b).coeffs) e[std::to_string(j)] = to_json(c);
      row.push_back(e);
    }
    rows.push_back(row);
  }
  return rows;
}

struct Artifact {
  Json doc;
  int exit_code = 0;
};

Artifact do_generate(const JobConfig& c) { return {hierarchy_to_json(generate(spec_of(c)))}; }

Artifact do_verify(const JobConfig& c) {
  Hierarchy h = generate(spec_of(c));
  std::vector<std::string> checks = c.checks;
  if (checks.empty()) checks = {"commutativity", "string"};
  Report rep;
  for (const auto& name : checks) {
    if (name == "commutativity") rep.merge(verify_commutativity(h, all_pairs(h, h.d_max())));
    if (name == "string") rep.merge(string_check(h));
    if (name == "second-recursion") rep.merge(second_recursion_check(h));
    if (name == "tau") rep.merge(tau_symmetry_check(tau_structure(h)));
    if (name == "omega") rep.merge(omega_symmetry_check(tau_structure(h)));
  }
  return {report_doc(rep), rep.ok() ? 0 : 1};
}

Artifact do_miura(const JobConfig& c) {
  HierarchySpec s = spec_of(c);
  Hierarchy h = generate(s);
  bool have_f = !c.input2.empty() || c.preset == "ilw";
  if (!have_f) {
    Json coords = Json::object();
    auto nc = normal_coordinates(h);
    for (size_t a = 0; a < nc.size(); ++a) coords[std::to_string(a + 1)] = to_json(nc[a]);
    return {Json{{"normal_coordinates", coords}}};
  }
  DiffPoly f = c.input2.empty() ? ilw_miura_generator(h.ring()) : from_json(read_json_file(c.input2), h.ring());
  int order = h.ring()->window().max_order;
  if (order == kUnbounded) throw ConfigError("/eps_order", "miura needs a finite window");
  NormalMiura nm = normal_miura(f, tau_structure(h));
  Json dens = Json::object();
  for (const auto& [k, d] : nm.densities) dens[key_of(k)] = to_json(d);
  Json doc{{"map", nm.map.to_json()}, {"densities", dens}};
  doc["operator"] = operator_json(push_operator(HamiltonianOperator::eta_dx(h.ring()), nm.map, order));
  return {doc};
}

Artifact do_ansatz(const JobConfig& c) {
  TruncationWindow w;
  w.max_order = 2 * (c.genus + c.lookahead + 1);
  RingPtr ring = kdv_ring(mode_of(c), w);
  AnsatzOptions o;
  o.d_check = c.d_check;
  o.u_degree_bound = c.u_degree_cutoff.value_or(4);
  o.lookahead = c.lookahead;
  std::map<int, DiffPoly> anchors;
  if (c.genus >= 1) anchors.emplace(1, parse_pretty("(-1/24) eps^2 u_1^2", ring));
  AnsatzRun run = solve_dr_type_through(ring, c.genus, o, anchors);
  Json genera = Json::array();
  for (const auto& s : run.genera) {
    Json kernel = Json::array();
    for (const auto& k : s.kernel) kernel.push_back(to_json(k));
    genera.push_back(Json{{"genus", s.genus},
                          {"constraints", s.n_constraints},
                          {"particular", to_json(s.particular)},
                          {"kernel", kernel}});
  }
  return {Json{{"generator", to_json(run.generator)}, {"free_params", run.free_params}, {"genera", genera}}};
}

Artifact do_lax(const JobConfig& c) {
  RingPtr ring = gd_ring(c.r);
  PseudoDiffOp L = gd_lax_operator(ring, c.r);
  Json flows = Json::object(), hams = Json::object(), coords = Json::object();
  for (int m = 1; m <= c.m_max; ++m) {
    Json f = Json::object();
    for (const auto& [i, x] : gd_flow(L, m)) f["f" + std::to_string(i)] = to_json(x);
    flows[std::to_string(m)] = f;
    hams[std::to_string(m)] = to_json(gd_hamiltonian(L, m).repr());
  }
  for (const auto& [a, nc] : gd_normal_coords(L))
    coords[std::to_string(a)] = Json{{"scaled", to_json(nc.scaled)}, {"over_sqrt_minus_r", nc.over_sqrt_minus_r}};
  return {Json{{"r", c.r},
               {"root", to_json(rth_root(L, c.r, c.r + 2 * c.m_max))},
               {"flows", flows},
               {"hamiltonians", hams},
               {"operator", operator_json(gd_operator(L))},
               {"normal_coordinates", coords}}};
}

Artifact do_evolve(const JobConfig& c) {
  HierarchySpec s = spec_of(c);
  std::vector<std::string> params = s.ring->params();
  if (s.ring->param_index("t") >= 0) throw ConfigError("/preset", "ring already has a parameter t");
  params.push_back("t");
  RingPtr ring = s.ring->with_params(params);
  HierarchySpec st = s;
  st.ring = ring;
  st.generator = integrate(lift(s.generator.repr(), ring));
  for (auto& [k, v] : st.constants.table) v = lift(v, ring);
  Hierarchy h = generate(st);
  DiffPoly f = c.input2.empty() ? DiffPoly::variable(ring, 0) : lift(from_json(read_json_file(c.input2)), ring);
  if (c.alpha < 1 || c.alpha > ring->n_vars()) throw ConfigError("/alpha", "out of range");
  Coefficient t{Complex(1), {{"t", 1}}};
  DiffPoly out = evolve_density(f, h, {{{c.alpha - 1, c.level}, t}}, c.order);
  return {Json{{"density", to_json(out)}}};
}

// key -> formula object, for every formula leaf below doc.
void collect(const Json& doc, const std::string& key, std::map<std::string, Json>& out) {
  if (doc.is_object() && doc.contains("terms") && doc.contains("ring")) {
    out[key] = doc;
    return;
  }
  if (doc.is_object()) {
    for (const auto& [k, v] : doc.items()) collect(v, key.empty() ? k : key + "/" + k, out);
  } else if (doc.is_array()) {
    for (size_t i = 0; i < doc.size(); ++i) collect(doc[i], key + "/" + std::to_string(i), out);
  }
}

std::map<std::string, Json> monomials(const Json& formula) {
  std::map<std::string, Json> out;
  for (const auto& t : formula["terms"]) {
    Json m{{"params", t.value("params", Json::object())},
           {"eps", t.value("eps", 0)},
           {"hbar", t.value("hbar", 0)},
           {"factors", t.value("factors", Json::array())}};
    out[m.dump()] = Json{{"re", t.value("re", "0/1")}, {"im", t.value("im", "0/1")}};
  }
  return out;
}

}  // namespace

JobConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("/", "expected object");
  static const std::set<std::string> known = {
      "command", "preset",  "input",     "input2", "mode", "d_max", "genus_cutoff", "eps_order",
      "u_degree_cutoff", "constants", "output", "format", "checks", "threads", "genus", "d_check",
      "lookahead", "r", "m_max", "alpha", "level", "order", "constant_only_ok"};
  for (const auto& [k, v] : doc.items())
    if (!known.count(k)) throw ConfigError("/" + k, "unknown field");
  JobConfig c;
  read_field(doc, "command", c.command);
  read_field(doc, "preset", c.preset);
  read_field(doc, "input", c.input);
  read_field(doc, "input2", c.input2);
  read_field(doc, "mode", c.mode);
  read_field(doc, "d_max", c.d_max);
  read_field(doc, "genus_cutoff", c.genus_cutoff);
  read_field(doc, "eps_order", c.eps_order);
  read_field(doc, "u_degree_cutoff", c.u_degree_cutoff);
  read_field(doc, "constants", c.constants);
  read_field(doc, "output", c.output);
  read_field(doc, "format", c.format);
  read_field(doc, "checks", c.checks);
  read_field(doc, "threads", c.threads);
  read_field(doc, "genus", c.genus);
  read_field(doc, "d_check", c.d_check);
  read_field(doc, "lookahead", c.lookahead);
  read_field(doc, "r", c.r);
  read_field(doc, "m_max", c.m_max);
  read_field(doc, "alpha", c.alpha);
  read_field(doc, "level", c.level);
  read_field(doc, "order", c.order);
  read_field(doc, "constant_only_ok", c.constant_only_ok);
  return c;
}

Json config_to_json(const JobConfig& c) {
  Json d{{"command", c.command},     {"preset", c.preset},   {"input", c.input},     {"input2", c.input2},
         {"mode", c.mode},           {"d_max", c.d_max},     {"constants", c.constants},
         {"output", c.output},       {"format", c.format},   {"checks", c.checks},   {"threads", c.threads},
         {"genus", c.genus},         {"d_check", c.d_check}, {"lookahead", c.lookahead},
         {"r", c.r},                 {"m_max", c.m_max},     {"alpha", c.alpha},     {"level", c.level},
         {"order", c.order},         {"constant_only_ok", c.constant_only_ok}};
  d["genus_cutoff"] = c.genus_cutoff ? Json(*c.genus_cutoff) : Json();
  d["eps_order"] = c.eps_order ? Json(*c.eps_order) : Json();
  d["u_degree_cutoff"] = c.u_degree_cutoff ? Json(*c.u_degree_cutoff) : Json();
  return d;
}

Json diff_tables(const Json& a, const Json& b) {
  std::map<std::string, Json> fa, fb;
  collect(a, "", fa);
  collect(b, "", fb);
  auto ring_of = [](const std::map<std::string, Json>& f) -> std::optional<Json> {
    std::optional<Json> r;
    for (const auto& [k, v] : f) {
      if (r && *r != v["ring"]) throw std::invalid_argument("formulas over different rings in one file");
      r = v["ring"];
    }
    return r;
  };
  auto ra = ring_of(fa), rb = ring_of(fb);
  if (ra && rb && *ra != *rb) throw std::invalid_argument("files are over different rings");
  Json entries = Json::array();
  std::set<std::string> keys;
  for (const auto& [k, v] : fa) keys.insert(k);
  for (const auto& [k, v] : fb) keys.insert(k);
  for (const auto& k : keys) {
    auto ia = fa.find(k), ib = fb.find(k);
    if (ia == fa.end() || ib == fb.end()) {
      entries.push_back(Json{{"key", k}, {"status", ia == fa.end() ? "missing_left" : "missing_right"},
                             {"constant_only", false}, {"monomials", Json::array()}});
      continue;
    }
    from_json(ia->second);
    from_json(ib->second);
    auto ma = monomials(ia->second), mb = monomials(ib->second);
    Json diffs = Json::array();
    bool constant_only = true;
    std::set<std::string> mk;
    for (const auto& [m, v] : ma) mk.insert(m);
    for (const auto& [m, v] : mb) mk.insert(m);
    for (const auto& m : mk) {
      auto xa = ma.find(m), xb = mb.find(m);
      Json va = xa == ma.end() ? Json() : xa->second, vb = xb == mb.end() ? Json() : xb->second;
      if (va == vb) continue;
      Json mono = Json::parse(m);
      if (!mono["factors"].empty()) constant_only = false;
      diffs.push_back(Json{{"monomial", mono}, {"left", va}, {"right", vb}});
    }
    if (!diffs.empty())
      entries.push_back(Json{{"key", k}, {"status", "differs"}, {"constant_only", constant_only}, {"monomials", diffs}});
  }
  return entries;
}

std::string pretty_table(const Json& doc) {
  std::map<std::string, Json> f;
  collect(doc, "", f);
  std::string out;
  for (const auto& [k, v] : f) out += (k.empty() ? std::string() : k + " = ") + pretty(from_json(v)) + "\n";
  return out;
}

void write_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename onto " + path);
  }
}

JobResult run(const JobConfig& config) {
  validate(config);
  if (config.threads > 0) exec::set_threads(config.threads);
  Artifact art;
  const std::string& cmd = config.command;
  if (cmd == "generate") art = do_generate(config);
  if (cmd == "verify") art = do_verify(config);
  if (cmd == "miura") art = do_miura(config);
  if (cmd == "ansatz") art = do_ansatz(config);
  if (cmd == "lax") art = do_lax(config);
  if (cmd == "evolve") art = do_evolve(config);
  if (cmd == "pretty") art.doc = read_json_file(config.input);
  if (cmd == "diff") {
    Json entries = diff_tables(read_json_file(config.input), read_json_file(config.input2));
    bool ok = true;
    for (const auto& e : entries)
      if (!(config.constant_only_ok && e["constant_only"].get<bool>())) ok = false;
    art.doc = Json{{"ok", ok}, {"entries", entries}};
    art.exit_code = ok ? 0 : 1;
  }

  JobResult res;
  res.exit_code = art.exit_code;
  bool as_pretty = config.format == "pretty" || cmd == "pretty";
  if (as_pretty && cmd != "verify" && cmd != "diff") {
    res.text = pretty_table(art.doc);
    if (res.text.empty()) res.text = "\n";
  } else {
    res.text = art.doc.dump(2) + "\n";
  }
  if (!config.output.empty()) write_atomic(config.output, res.text);
  return res;
}

}  // namespace hier::cli
