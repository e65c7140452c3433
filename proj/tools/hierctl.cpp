#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hier/cli.hpp"

using hier::Json;
using hier::cli::JobConfig;

int main(int argc, char** argv) {
  CLI::App app{"Batch driver for DR and DR-type hierarchies"};
  app.require_subcommand(1);

  std::string config_file;
  JobConfig flags;
  int genus_cutoff = 0, eps_order = 0, u_degree_cutoff = 0;
  std::string checks;
  std::vector<std::string> files;

  app.add_option("--config", config_file, "JSON job file; flags override its fields");
  auto* o_preset = app.add_option("--preset", flags.preset, "kdv, ilw, toda, 3-spin, 4-spin, 5-spin, rank1");
  auto* o_input = app.add_option("--input", flags.input, "generator (or formula) JSON file");
  auto* o_input2 = app.add_option("--input2", flags.input2, "second file: diff right side, miura F, evolve density");
  auto* o_mode = app.add_option("--mode", flags.mode, "classical or quantum");
  auto* o_dmax = app.add_option("--d-max", flags.d_max);
  auto* o_gc = app.add_option("--genus-cutoff", genus_cutoff, "keep eps^a hbar^b with a + 2b <= 2g");
  auto* o_eo = app.add_option("--eps-order", eps_order, "keep eps^a hbar^b with a + 2b <= n");
  auto* o_ud = app.add_option("--u-degree-cutoff", u_degree_cutoff);
  auto* o_const = app.add_option("--constants", flags.constants, "zero, paper or string");
  auto* o_out = app.add_option("-o,--output", flags.output, "artifact path (written atomically)");
  auto* o_fmt = app.add_option("--format", flags.format, "json or pretty");
  auto* o_checks = app.add_option("--checks", checks, "commutativity,string,second-recursion,tau,omega");
  auto* o_threads = app.add_option("--threads", flags.threads, "default: HIER_THREADS, then OpenMP");
  auto* o_genus = app.add_option("--genus", flags.genus);
  auto* o_dcheck = app.add_option("--d-check", flags.d_check);
  auto* o_look = app.add_option("--lookahead", flags.lookahead);
  auto* o_r = app.add_option("--r", flags.r);
  auto* o_m = app.add_option("--m-max", flags.m_max);
  auto* o_alpha = app.add_option("--alpha", flags.alpha);
  auto* o_level = app.add_option("--level", flags.level);
  auto* o_order = app.add_option("--order", flags.order);
  auto* o_coo = app.add_flag("--constant-only-ok", flags.constant_only_ok, "diff: accept u-free differences");

  for (const char* name : {"generate", "verify", "miura", "ansatz", "lax", "evolve"})
    app.add_subcommand(name)->fallthrough();
  app.add_subcommand("pretty")->fallthrough()->add_option("file", files)->required();
  app.add_subcommand("diff")->fallthrough()->add_option("files", files)->required()->expected(2);

  CLI11_PARSE(app, argc, argv);

  try {
    JobConfig c;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw std::runtime_error("cannot open " + config_file);
      c = hier::cli::config_from_json(Json::parse(in));
    }
    c.command = app.get_subcommands().front()->get_name();
    auto given = [](CLI::Option* o) { return o->count() > 0; };
    if (given(o_preset)) c.preset = flags.preset;
    if (given(o_input)) c.input = flags.input;
    if (given(o_input2)) c.input2 = flags.input2;
    if (given(o_mode)) c.mode = flags.mode;
    if (given(o_dmax)) c.d_max = flags.d_max;
    if (given(o_gc)) c.genus_cutoff = genus_cutoff;
    if (given(o_eo)) c.eps_order = eps_order;
    if (given(o_ud)) c.u_degree_cutoff = u_degree_cutoff;
    if (given(o_const)) c.constants = flags.constants;
    if (given(o_out)) c.output = flags.output;
    if (given(o_fmt)) c.format = flags.format;
    if (given(o_threads)) c.threads = flags.threads;
    if (given(o_genus)) c.genus = flags.genus;
    if (given(o_dcheck)) c.d_check = flags.d_check;
    if (given(o_look)) c.lookahead = flags.lookahead;
    if (given(o_r)) c.r = flags.r;
    if (given(o_m)) c.m_max = flags.m_max;
    if (given(o_alpha)) c.alpha = flags.alpha;
    if (given(o_level)) c.level = flags.level;
    if (given(o_order)) c.order = flags.order;
    if (given(o_coo)) c.constant_only_ok = true;
    if (given(o_checks)) {
      c.checks.clear();
      std::stringstream ss(checks);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) c.checks.push_back(item);
    }
    if (!files.empty()) c.input = files[0];
    if (files.size() > 1) c.input2 = files[1];

    hier::cli::JobResult r = hier::cli::run(c);
    if (c.output.empty()) std::cout << r.text;
    if (r.exit_code != 0 && !c.output.empty()) std::cerr << r.text;
    return r.exit_code;
  } catch (const hier::cli::ConfigError& e) {
    std::cerr << Json{{"error", "config"}, {"path", e.path}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "engine"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
}
