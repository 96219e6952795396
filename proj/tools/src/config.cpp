#include "sgas_tools/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sgas::tools {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

class Doc {
 public:
  std::map<std::string, Entry> kv;

  bool has(const std::string& k) const { return kv.count(k) > 0; }

  const Entry& at(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError("missing required key '" + k + "'");
    return it->second;
  }

  double num(const std::string& k) const {
    const Entry& e = at(k);
    return to_double(k, e.value, e.line);
  }

  int integer(const std::string& k) const {
    double v = num(k);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      throw ConfigError(where(k, at(k).line) + "expected an integer, got '" + at(k).value + "'");
    }
    return static_cast<int>(v);
  }

  std::vector<double> list(const std::string& k) const {
    const Entry& e = at(k);
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(k, trim(item), e.line));
    if (out.empty()) throw ConfigError(where(k, e.line) + "empty list");
    return out;
  }

  static std::string where(const std::string& k, int line) {
    return "key '" + k + "' (line " + std::to_string(line) + "): ";
  }

  static double to_double(const std::string& k, const std::string& s, int line) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ConfigError(where(k, line) + "'" + s + "' is not a finite number");
    }
    return v;
  }
};

Doc tokenize(const std::string& text) {
  Doc d;
  std::stringstream in(text);
  std::string raw;
  int line = 0;
  const auto& keys = known_keys();
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    std::string k = trim(s.substr(0, eq));
    std::string v = trim(s.substr(eq + 1));
    if (k.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + k + "'");
    }
    auto it = d.kv.find(k);
    if (it != d.kv.end()) {
      throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + k +
                        "' (first set on line " + std::to_string(it->second.line) + ")");
    }
    d.kv[k] = {v, line};
  }
  return d;
}

Reflection read_table(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("key 'r.table_path': cannot open '" + path.string() + "'");
  std::vector<double> u, r;
  std::string raw;
  while (std::getline(f, raw)) {
    auto hash = raw.find('#');
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::stringstream ss(s);
    double a = 0.0, b = 0.0;
    if (!(ss >> a >> b)) throw ConfigError("key 'r.table_path': malformed row '" + s + "'");
    u.push_back(a);
    r.push_back(b);
  }
  try {
    return Reflection::table(u, r);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("key 'r.table_path': ") + e.what());
  }
}

}  // namespace

Solver parse_solver(const std::string& name) {
  if (name == "exact") return Solver::Exact;
  if (name == "gas") return Solver::Gas;
  if (name == "asymptotic") return Solver::Asymptotic;
  if (name == "kdv") return Solver::Kdv;
  throw ConfigError("unknown solver '" + name + "' (exact, gas, asymptotic, kdv)");
}

std::string to_string(Solver s) {
  switch (s) {
    case Solver::Exact: return "exact";
    case Solver::Gas: return "gas";
    case Solver::Asymptotic: return "asymptotic";
    case Solver::Kdv: return "kdv";
  }
  return "?";
}

std::vector<double> GridSpec::xs() const {
  std::vector<double> out(nx);
  for (int i = 0; i < nx; ++i) out[i] = x_min + (x_max - x_min) * i / (nx - 1);
  return out;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "eta1", "eta2", "r.kind", "r.value", "r.table_path", "kappa0", "x0", "sigma", "chi",
      "log_abs_chi", "chi_sign_convention", "grid.x_min", "grid.x_max", "grid.nx", "grid.t_list",
      "solver", "quad.band_nodes", "quad.fredholm_nodes", "tol.quad", "tol.root", "max_exponent",
      "output_path", "exact.n", "solitons.kappa", "solitons.chi", "phaseshift.alpha"};
  return keys;
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  Doc d = tokenize(text);
  RunConfig cfg;
  auto& gas = cfg.scenario.gas;
  gas.eta1 = d.num("eta1");
  gas.eta2 = d.num("eta2");
  if (!(gas.eta1 > 0.0)) throw ConfigError(Doc::where("eta1", d.at("eta1").line) + "must be positive");
  if (!(gas.eta2 > gas.eta1)) {
    throw ConfigError(Doc::where("eta2", d.at("eta2").line) + "must exceed eta1");
  }

  std::string kind = d.has("r.kind") ? d.at("r.kind").value : "constant";
  if (kind == "constant") {
    double v = d.has("r.value") ? d.num("r.value") : 1.0;
    if (!(v > 0.0)) throw ConfigError(Doc::where("r.value", d.at("r.value").line) + "must be positive");
    gas.r = Reflection::constant(v);
  } else if (kind == "table") {
    std::filesystem::path p = d.at("r.table_path").value;
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    gas.r = read_table(p);
  } else {
    throw ConfigError(Doc::where("r.kind", d.at("r.kind").line) + "expected constant or table");
  }
  try {
    gas.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("key 'r': ") + e.what());
  }

  if (d.has("chi_sign_convention")) {
    const auto& v = d.at("chi_sign_convention").value;
    if (v == "as-written") {
      cfg.scenario.chi_convention = ChiConvention::AsWritten;
    } else if (v == "negated-x0") {
      cfg.scenario.chi_convention = ChiConvention::NegatedX0;
    } else {
      throw ConfigError(Doc::where("chi_sign_convention", d.at("chi_sign_convention").line) +
                        "expected as-written or negated-x0");
    }
  }

  if (d.has("kappa0")) {
    const double k0 = d.num("kappa0");
    if (!(k0 > gas.eta2)) {
      throw ConfigError(Doc::where("kappa0", d.at("kappa0").line) + "kappa0 must exceed eta2");
    }
    int sigma = d.has("sigma") ? d.integer("sigma") : 0;
    if (sigma != 0 && sigma != 1 && sigma != -1) {
      throw ConfigError(Doc::where("sigma", d.at("sigma").line) + "must be +1 or -1");
    }
    int given = d.has("x0") + d.has("chi") + d.has("log_abs_chi");
    if (given != 1) {
      throw ConfigError("key 'x0': exactly one of x0, chi, log_abs_chi is required with kappa0");
    }
    TrialSolitonSpec s;
    if (d.has("x0")) {
      s = make_trial_soliton(k0, d.num("x0"), sigma == 0 ? 1 : sigma, cfg.scenario.chi_convention);
    } else if (d.has("chi")) {
      double chi = d.num("chi");
      if (chi == 0.0) throw ConfigError(Doc::where("chi", d.at("chi").line) + "must be nonzero");
      s = make_trial_soliton_from_chi(k0, chi);
      if (sigma != 0 && sigma != s.sigma) {
        throw ConfigError(Doc::where("sigma", d.at("sigma").line) + "contradicts the sign of chi");
      }
    } else {
      s.kappa0 = k0;
      s.sigma = sigma == 0 ? 1 : sigma;
      s.log_abs_chi = d.num("log_abs_chi");
    }
    cfg.scenario.soliton = s;
  } else {
    for (const char* k : {"x0", "chi", "log_abs_chi", "sigma"}) {
      if (d.has(k)) throw ConfigError(Doc::where(k, d.at(k).line) + "requires kappa0");
    }
  }

  cfg.grid.x_min = d.num("grid.x_min");
  cfg.grid.x_max = d.num("grid.x_max");
  cfg.grid.nx = d.integer("grid.nx");
  cfg.grid.t_list = d.list("grid.t_list");
  if (cfg.grid.nx < 2) throw ConfigError(Doc::where("grid.nx", d.at("grid.nx").line) + "must be >= 2");
  if (!(cfg.grid.x_max > cfg.grid.x_min)) {
    throw ConfigError(Doc::where("grid.x_max", d.at("grid.x_max").line) + "must exceed grid.x_min");
  }
  for (double t : cfg.grid.t_list) {
    if (!(t > 0.0)) throw ConfigError(Doc::where("grid.t_list", d.at("grid.t_list").line) + "times must be positive");
  }

  if (d.has("solver")) cfg.solver = parse_solver(d.at("solver").value);
  auto positive_int = [&](const char* k, int& dst) {
    if (!d.has(k)) return;
    dst = d.integer(k);
    if (dst < 1) throw ConfigError(Doc::where(k, d.at(k).line) + "must be positive");
  };
  auto positive = [&](const char* k, double& dst) {
    if (!d.has(k)) return;
    dst = d.num(k);
    if (!(dst > 0.0)) throw ConfigError(Doc::where(k, d.at(k).line) + "must be positive");
  };
  positive_int("quad.band_nodes", cfg.opts.band_nodes);
  positive_int("quad.fredholm_nodes", cfg.opts.fredholm_nodes);
  positive_int("exact.n", cfg.exact_n);
  positive("tol.quad", cfg.opts.tol_quad);
  positive("tol.root", cfg.opts.tol_root);
  positive("max_exponent", cfg.opts.max_exponent);
  if (d.has("output_path")) cfg.output_path = d.at("output_path").value;

  if (d.has("solitons.kappa") || d.has("solitons.chi")) {
    auto ks = d.list("solitons.kappa");
    auto cs = d.list("solitons.chi");
    if (ks.size() != cs.size()) {
      throw ConfigError(Doc::where("solitons.chi", d.at("solitons.chi").line) +
                        "needs one entry per solitons.kappa entry");
    }
    try {
      cfg.solitons = SolitonSet::from_chis(ks, cs);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("key 'solitons.kappa': ") + e.what());
    }
  }
  if (d.has("phaseshift.alpha")) {
    double a = d.num("phaseshift.alpha");
    if (!(a > gas.eta1 && a <= gas.eta2)) {
      throw ConfigError(Doc::where("phaseshift.alpha", d.at("phaseshift.alpha").line) +
                        "must lie in (eta1, eta2]");
    }
    cfg.phaseshift_alpha = a;
  }
  cfg.scenario.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

SolitonSet exact_soliton_set(const RunConfig& cfg) {
  if (cfg.solitons) return *cfg.solitons;
  SolitonSet s = sample_gas_solitons(cfg.exact_n, cfg.scenario.gas);
  if (cfg.scenario.soliton) {
    s.kappa.push_back(cfg.scenario.soliton->kappa0);
    s.log_abs_chi.push_back(cfg.scenario.soliton->log_abs_chi);
    s.sign.push_back(cfg.scenario.soliton->sigma);
  }
  return s;
}

RunConfig figure_config(int figure) {
  // Figures 2-5 share the gas (0.25, 1, r = 1) with kappa0 = 2 starting
  // 200 units behind the gas edge.
  const std::string gas = "eta1 = 0.25\neta2 = 1\nkappa0 = 2\nx0 = -200\n";
  auto range = [](double a, double b, double h) {
    std::string s;
    for (double t = a; t <= b + 1e-9; t += h) {
      if (!s.empty()) s += ",";
      s += std::to_string(t);
    }
    return s;
  };
  switch (figure) {
    case 1: {
      const double chi1 = 25.0 / (std::pow(2.0, 0.25) * 9.0 * std::exp(5.0));
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", chi1);
      return parse_config(std::string("eta1 = 0.25\neta2 = 1\nsolver = exact\n") +
                          "solitons.kappa = 0.25, 1\nsolitons.chi = " + buf + ", 2\n" +
                          "grid.x_min = -20\ngrid.x_max = 40\ngrid.nx = 1201\n" +
                          "grid.t_list = 2.358, 7.073\n");
    }
    case 2:
      return parse_config(gas + "solver = asymptotic\ngrid.x_min = -150\ngrid.x_max = 400\n" +
                          "grid.nx = 5501\ngrid.t_list = 5, 14, 17, 30\n");
    case 3:
      return parse_config(gas + "solver = asymptotic\ngrid.x_min = 0\ngrid.x_max = 1\ngrid.nx = 2\n" +
                          "grid.t_list = " + range(1.0, 12.4, 0.1) + "," + range(13.0, 60.0, 0.1) + "\n");
    case 4:
      return parse_config(gas + "solver = asymptotic\ngrid.x_min = -50\ngrid.x_max = 250\n" +
                          "grid.nx = 601\ngrid.t_list = " + range(1.0, 30.0, 1.0) + "\n");
    case 5:
      return parse_config(gas + "solver = asymptotic\ngrid.x_min = 0\ngrid.x_max = 1\ngrid.nx = 2\n" +
                          "grid.t_list = " + range(13.0, 60.0, 0.1) + "\n");
    default:
      throw ConfigError("figure must be 1..5");
  }
}

}  // namespace sgas::tools
