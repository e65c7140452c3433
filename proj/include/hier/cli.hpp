#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hier/io.hpp"

namespace hier::cli {

struct ConfigError : std::invalid_argument {
  ConfigError(const std::string& path, const std::string& what)
      : std::invalid_argument("config " + path + ": " + what), path(path) {}
  std::string path;
};

// One job. Every field has a JSON twin of the same name.
struct JobConfig {
  std::string command;  // generate | verify | miura | ansatz | lax | evolve | pretty | diff
  std::string preset;
  std::string input;   // generator / density / formula file
  std::string input2;  // diff: right-hand file; miura: generator F; evolve: density
  std::string mode = "classical";
  int d_max = 2;
  std::optional<int> genus_cutoff;  // max eps^a hbar^b order is 2 * genus_cutoff
  std::optional<int> eps_order;     // same window, given directly
  std::optional<int> u_degree_cutoff;
  std::string constants = "zero";  // zero | paper | string
  std::string output;              // empty: stdout
  std::string format = "json";     // json | pretty
  std::vector<std::string> checks;  // verify: commutativity, string, second-recursion, tau, omega
  int threads = 0;                  // 0: HIER_THREADS or the OpenMP default
  // ansatz
  int genus = 1;
  int d_check = 2;
  int lookahead = 0;
  // lax
  int r = 2;
  int m_max = 3;
  // evolve: exp(t (1/hbar)[., G-bar_{alpha,level}]) of the input density (default u^1), to order
  int alpha = 1;
  int level = 0;
  int order = 2;
  // diff: differences confined to u-free monomials do not fail the job
  bool constant_only_ok = false;
};

JobConfig config_from_json(const Json& doc);
Json config_to_json(const JobConfig& c);

struct JobResult {
  int exit_code = 0;
  std::string text;  // the artifact (also written to output when set)
};

// Engine errors propagate; ConfigError for invalid fields.
JobResult run(const JobConfig& config);

// Formula tables: any JSON tree whose leaves are formula objects ({"ring", "terms"}).
// Entries: {"key", "status": missing_left | missing_right | differs, "constant_only", "monomials"}.
// Throws std::invalid_argument when the two files live over different rings.
Json diff_tables(const Json& a, const Json& b);

// "key = pretty formula" lines, sorted by key.
std::string pretty_table(const Json& doc);

void write_atomic(const std::string& path, const std::string& text);

}  // namespace hier::cli
