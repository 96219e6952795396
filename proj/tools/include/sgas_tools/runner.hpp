/** @file runner.hpp
 *  Grid and time-series evaluation, parallel over points, and CSV output.
 */
#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgas_tools/config.hpp"

namespace sgas::tools {

struct Failure {
  double x = 0.0;
  double t = 0.0;
  std::string message;
  bool guard = false;  // the exponent guard fired
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<Failure> failures;
};

/// --workers beats SGAS_WORKERS, which beats the core count.
int resolve_workers(std::optional<int> flag);

/// Runs body(i) for i in [0, n) on `workers` threads.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

/// q over the x grid at one t. Columns x,t,q plus q_bg,q_sol for the asymptotic solver.
Table evaluate_grid(const RunConfig& cfg, Solver solver, double t, int workers);

/// (t, x_peak, amplitude, velocity, x_free) for every t in the grid's t_list.
Table peak_series(const RunConfig& cfg, int workers);
/// (t, xdot_peak, v_bar_sol).
Table velocity_series(const RunConfig& cfg, int workers);

std::string format_number(double v);
/// Drops rows holding non-finite values (recording them as failures) and writes.
void write_csv(const std::filesystem::path& path, Table& table);
void write_failures(const std::filesystem::path& path, const std::vector<Failure>& failures);

}  // namespace sgas::tools
