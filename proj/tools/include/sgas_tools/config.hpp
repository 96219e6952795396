/** @file config.hpp
 *  Run configuration: a flat `key = value` document, one key per line.
 */
#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgas/modulation.hpp"
#include "sgas/nsoliton.hpp"
#include "sgas/scenario.hpp"

namespace sgas::tools {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Solver { Exact, Gas, Asymptotic, Kdv };

Solver parse_solver(const std::string& name);
std::string to_string(Solver s);

struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  int nx = 0;
  std::vector<double> t_list;

  std::vector<double> xs() const;
};

struct RunConfig {
  Scenario scenario;
  GridSpec grid;
  Solver solver = Solver::Gas;
  NumericOptions opts;
  std::string output_path = ".";
  int exact_n = 128;                      // sampled gas size for the exact solver
  std::optional<SolitonSet> solitons;     // explicit set overrides sampling
  std::optional<double> phaseshift_alpha;
};

/// Keys that may appear in a document.
const std::vector<std::string>& known_keys();

/// Parses and validates. `base_dir` resolves a relative r.table_path.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Solitons fed to the exact solver: the explicit set, or a sampled gas of
/// size exact_n plus the trial soliton when one is configured.
SolitonSet exact_soliton_set(const RunConfig& cfg);

/// Canonical parameter sets of the figures (1..5).
RunConfig figure_config(int figure);

}  // namespace sgas::tools
