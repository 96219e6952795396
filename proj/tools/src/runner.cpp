#include "sgas_tools/runner.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <thread>

#include "sgas/dynamics.hpp"
#include "sgas/fredholm.hpp"
#include "sgas/nsoliton.hpp"
#include "sgas/outer_model.hpp"

namespace sgas::tools {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Failure describe(const std::exception& e) {
  if (dynamic_cast<const GuardError*>(&e)) {
    return {kNaN, kNaN, std::string(e.what()) + " (try the asymptotic command)", true};
  }
  return {kNaN, kNaN, e.what(), false};
}

}  // namespace

int resolve_workers(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--workers must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("SGAS_WORKERS")) {
    int n = std::atoi(env);
    if (n < 1) throw ConfigError("SGAS_WORKERS must be a positive integer");
    return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

Table evaluate_grid(const RunConfig& cfg, Solver solver, double t, int workers) {
  const auto xs = cfg.grid.xs();
  const int n = static_cast<int>(xs.size());
  const bool asym = solver == Solver::Asymptotic;
  Table out;
  out.header = {"x", "t", "q"};
  if (asym) {
    out.header.push_back("q_bg");
    out.header.push_back("q_sol");
  }
  std::optional<SolitonSet> set;
  if (solver == Solver::Exact) set = exact_soliton_set(cfg);
  std::vector<std::vector<double>> rows(n);
  std::vector<std::optional<Failure>> errs(n);
  const auto& o = cfg.opts;
  parallel_for(n, workers, [&](int i) {
    const double x = xs[i];
    try {
      switch (solver) {
        case Solver::Exact:
          rows[i] = {x, t, q_exact(*set, x, t, QMethod::Sum, o.max_exponent)};
          break;
        case Solver::Gas:
          rows[i] = {x, t, q_gas(cfg.scenario, x, t, o.fredholm_nodes, o.max_exponent)};
          break;
        case Solver::Kdv:
          rows[i] = {x, t, q_kdv(cfg.scenario, x, t, o.fredholm_nodes, o.max_exponent)};
          break;
        case Solver::Asymptotic: {
          auto a = q_asymptotic_parts(cfg.scenario, x, t, o);
          rows[i] = {x, t, a.q, a.q_bg, a.q_sol};
          break;
        }
      }
    } catch (const std::exception& e) {
      errs[i] = describe(e);
    }
  });
  for (int i = 0; i < n; ++i) {
    if (errs[i]) {
      out.failures.push_back({xs[i], t, errs[i]->message, errs[i]->guard});
    } else {
      out.rows.push_back(std::move(rows[i]));
    }
  }
  return out;
}

Table peak_series(const RunConfig& cfg, int workers) {
  if (!cfg.scenario.soliton) throw ConfigError("peak needs a trial soliton (kappa0)");
  const auto& ts = cfg.grid.t_list;
  const int n = static_cast<int>(ts.size());
  const auto& sol = *cfg.scenario.soliton;
  Table out;
  out.header = {"t", "x_peak", "amplitude", "velocity", "x_free"};
  std::vector<std::vector<double>> rows(n);
  std::vector<std::optional<Failure>> errs(n);
  parallel_for(n, workers, [&](int i) {
    try {
      auto pk = solve_peak(ts[i], cfg.scenario, cfg.opts);
      double v = peak_velocity(ts[i], cfg.scenario, cfg.opts);
      rows[i] = {ts[i], pk.x_peak, pk.amplitude, v, sol.center() + 4.0 * sol.kappa0 * sol.kappa0 * ts[i]};
    } catch (const std::exception& e) {
      errs[i] = describe(e);
    }
  });
  for (int i = 0; i < n; ++i) {
    if (errs[i]) {
      out.failures.push_back({kNaN, ts[i], errs[i]->message, errs[i]->guard});
    } else {
      out.rows.push_back(std::move(rows[i]));
    }
  }
  return out;
}

Table velocity_series(const RunConfig& cfg, int workers) {
  if (!cfg.scenario.soliton) throw ConfigError("velocities needs a trial soliton (kappa0)");
  const auto& ts = cfg.grid.t_list;
  const int n = static_cast<int>(ts.size());
  const double k0 = cfg.scenario.soliton->kappa0;
  const auto& gas = cfg.scenario.gas;
  Table out;
  out.header = {"t", "xdot_peak", "v_bar_sol"};
  std::vector<std::vector<double>> rows(n);
  std::vector<std::optional<Failure>> errs(n);
  parallel_for(n, workers, [&](int i) {
    try {
      const double t = ts[i];
      auto pk = solve_peak(t, cfg.scenario, cfg.opts);
      double vbar = 4.0 * k0 * k0;
      if (pk.branch != PeakBranch::Quiescent) {
        vbar = v_bar_sol(k0, make_band(gas.eta1, solve_alpha(pk.x_peak / t, gas)));
      }
      rows[i] = {t, peak_velocity(t, cfg.scenario, cfg.opts), vbar};
    } catch (const std::exception& e) {
      errs[i] = describe(e);
    }
  });
  for (int i = 0; i < n; ++i) {
    if (errs[i]) {
      out.failures.push_back({kNaN, ts[i], errs[i]->message, errs[i]->guard});
    } else {
      out.rows.push_back(std::move(rows[i]));
    }
  }
  return out;
}

// Shortest representation that round-trips.
std::string format_number(double v) { return fmt::format("{}", v); }

void write_csv(const std::filesystem::path& path, Table& table) {
  std::vector<std::vector<double>> kept;
  for (auto& r : table.rows) {
    bool finite = true;
    for (double v : r) finite = finite && std::isfinite(v);
    if (finite) {
      kept.push_back(std::move(r));
    } else {
      table.failures.push_back({r.empty() ? kNaN : r[0], r.size() > 1 ? r[1] : kNaN,
                                "non-finite value rejected"});
    }
  }
  table.rows = std::move(kept);
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (size_t i = 0; i < table.header.size(); ++i) f << (i ? "," : "") << table.header[i];
  f << "\n";
  for (const auto& r : table.rows) {
    for (size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << format_number(r[i]);
    f << "\n";
  }
}

void write_failures(const std::filesystem::path& path, const std::vector<Failure>& failures) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << "x,t,message\n";
  for (const auto& e : failures) {
    std::string msg = e.message;
    for (char& c : msg) {
      if (c == '"') c = '\'';
    }
    f << format_number(e.x) << "," << format_number(e.t) << ",\"" << msg << "\"\n";
  }
}

}  // namespace sgas::tools
