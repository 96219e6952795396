#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <optional>

#include "sgas/dynamics.hpp"
#include "sgas_tools/config.hpp"
#include "sgas_tools/runner.hpp"
#include "sgas_tools/suite.hpp"

namespace fs = std::filesystem;
using namespace sgas;
using namespace sgas::tools;

namespace {

struct Flags {
  std::string config;
  std::string solver;
  std::string out;
  std::optional<int> workers;
  bool long_format = false;
};

int report(const std::string& name, const fs::path& dir, Table& t) {
  if (t.failures.empty()) return 0;
  fs::path f = dir / (name + "_failures.csv");
  write_failures(f, t.failures);
  bool guard = false;
  for (const auto& e : t.failures) guard = guard || e.guard;
  std::cerr << fmt::format("{}: {} point(s) failed, listed in {}\n", name, t.failures.size(), f.string());
  std::cerr << "  first: x=" << format_number(t.failures.front().x)
            << " t=" << format_number(t.failures.front().t) << ": " << t.failures.front().message << "\n";
  if (guard) std::cerr << "  the exponent guard tripped; the `asymptotic` command covers these points\n";
  return 2;
}

fs::path out_dir(const Flags& fl, const RunConfig& cfg) {
  fs::path d = fl.out.empty() ? fs::path(cfg.output_path) : fs::path(fl.out);
  fs::create_directories(d);
  return d;
}

int run_grid(const std::string& name, const RunConfig& cfg, Solver solver, const Flags& fl) {
  const int workers = resolve_workers(fl.workers);
  const fs::path dir = out_dir(fl, cfg);
  Table all;
  for (double t : cfg.grid.t_list) {
    Table part = evaluate_grid(cfg, solver, t, workers);
    if (fl.long_format) {
      all.header = part.header;
      for (auto& r : part.rows) all.rows.push_back(std::move(r));
      for (auto& f : part.failures) all.failures.push_back(std::move(f));
    } else {
      fs::path f = dir / (name + "_t" + format_number(t) + ".csv");
      write_csv(f, part);
      std::cout << fmt::format("wrote {} ({} rows)\n", f.string(), part.rows.size());
      for (auto& e : part.failures) all.failures.push_back(std::move(e));
    }
  }
  if (fl.long_format) {
    fs::path f = dir / (name + ".csv");
    write_csv(f, all);
    std::cout << fmt::format("wrote {} ({} rows)\n", f.string(), all.rows.size());
  }
  return report(name, dir, all);
}

int run_series(const std::string& name, const RunConfig& cfg, bool velocities, const Flags& fl) {
  const int workers = resolve_workers(fl.workers);
  const fs::path dir = out_dir(fl, cfg);
  Table t = velocities ? velocity_series(cfg, workers) : peak_series(cfg, workers);
  fs::path f = dir / (name + ".csv");
  write_csv(f, t);
  std::cout << fmt::format("wrote {} ({} rows)\n", f.string(), t.rows.size());
  return report(name, dir, t);
}

int run_phaseshift(const RunConfig& cfg, const Flags& fl) {
  if (!cfg.scenario.soliton) throw ConfigError("phaseshift needs a trial soliton (kappa0)");
  const auto& gas = cfg.scenario.gas;
  const double alpha = cfg.phaseshift_alpha.value_or(gas.eta2);
  BandParams b = make_band(gas.eta1, alpha);
  PhaseShift p = phase_shift(cfg.scenario.soliton->kappa0, b, gas.r, cfg.opts.band_nodes);
  Table t;
  t.header = {"alpha", "kappa0", "closed", "via_delta"};
  t.rows = {{alpha, cfg.scenario.soliton->kappa0, p.closed, p.via_delta}};
  fs::path f = out_dir(fl, cfg) / "phaseshift.csv";
  write_csv(f, t);
  std::cout << "closed=" << format_number(p.closed) << " via_delta=" << format_number(p.via_delta) << "\n";
  return 0;
}

RunConfig need_config(const Flags& fl) {
  if (fl.config.empty()) throw ConfigError("--config <path> is required for this command");
  return load_config(fl.config);
}

Solver pick_solver(const Flags& fl, Solver fallback) {
  return fl.solver.empty() ? fallback : parse_solver(fl.solver);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soliton-gas laboratory for the mKdV equation: exact, Fredholm and asymptotic solvers"};
  app.require_subcommand(1);
  Flags fl;
  app.add_option("--config", fl.config, "key = value configuration file");
  app.add_option("--solver", fl.solver, "exact | gas | asymptotic | kdv");
  app.add_option("--out", fl.out, "output directory (default: output_path from the config)");
  app.add_option("--workers", fl.workers, "worker threads (overrides SGAS_WORKERS)");
  app.add_flag("--long-format", fl.long_format, "write every t into one CSV");
  app.fallthrough();

  auto* exact = app.add_subcommand("exact", "finite-N soliton solution over the grid");
  auto* gas = app.add_subcommand("gas", "Fredholm-determinant solution over the grid");
  auto* asym = app.add_subcommand("asymptotic", "large-time model q_bg + q_sol over the grid");
  auto* peak = app.add_subcommand("peak", "peak trajectory (t, x_peak, amplitude, velocity)");
  auto* vel = app.add_subcommand("velocities", "peak velocity against the averaged soliton velocity");
  auto* ps = app.add_subcommand("phaseshift", "gas phase shift, closed form and via Delta");
  auto* val = app.add_subcommand("validate", "run every acceptance cross-check");
  auto* fig = app.add_subcommand("figure", "emit the data of a canonical figure (1-5)");
  int figure = 0;
  fig->add_option("n", figure, "figure number")->required()->check(CLI::Range(1, 5));
  std::vector<int> only;
  val->add_option("--only", only, "run only these check numbers")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*exact) return run_grid("exact", need_config(fl), pick_solver(fl, Solver::Exact), fl);
    if (*gas) return run_grid("gas", need_config(fl), pick_solver(fl, Solver::Gas), fl);
    if (*asym) return run_grid("asymptotic", need_config(fl), pick_solver(fl, Solver::Asymptotic), fl);
    if (*peak) return run_series("peak", need_config(fl), false, fl);
    if (*vel) return run_series("velocities", need_config(fl), true, fl);
    if (*ps) return run_phaseshift(need_config(fl), fl);
    if (*val) {
      bool ok = true;
      run_suite(only, [&](const CheckResult& r) {
        std::cout << format_result(r) << std::endl;
        ok = ok && r.pass;
      });
      return ok ? 0 : 1;
    }
    if (*fig) {
      RunConfig cfg = figure_config(figure);
      const std::string name = "figure" + std::to_string(figure);
      if (figure == 3) return run_series(name, cfg, false, fl);
      if (figure == 5) return run_series(name, cfg, true, fl);
      return run_grid(name, cfg, pick_solver(fl, cfg.solver), fl);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
