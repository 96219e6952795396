#include "sgas_tools/suite.hpp"

#include <fmt/format.h>
#include <gsl/gsl_sf_ellint.h>

#include <boost/math/tools/minima.hpp>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "sgas/dynamics.hpp"
#include "sgas/fredholm.hpp"
#include "sgas/modulation.hpp"
#include "sgas/nsoliton.hpp"
#include "sgas/outer_model.hpp"

namespace sgas::tools {

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Oracles built on GSL (modulus convention k = sqrt(m)), independent of specfun.
double K_oracle(double m) { return gsl_sf_ellint_Kcomp(std::sqrt(m), GSL_PREC_DOUBLE); }
double E_oracle(double m) { return gsl_sf_ellint_Ecomp(std::sqrt(m), GSL_PREC_DOUBLE); }
double W_oracle(double m) { return 4.0 * (1.0 - m) * K_oracle(m) / E_oracle(m) + 2.0 * (1.0 + m); }

double sech_soliton(double kappa, double x0, double x, double t) {
  return 2.0 * kappa / std::cosh(2.0 * kappa * (x - 4.0 * kappa * kappa * t - x0));
}

Scenario base_gas() {
  Scenario s;
  s.gas.eta1 = 0.25;
  s.gas.eta2 = 1.0;
  s.gas.r = Reflection::constant(1.0);
  return s;
}

Scenario with_soliton(double kappa0, double x0) {
  Scenario s = base_gas();
  s.soliton = make_trial_soliton(kappa0, x0, 1);
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome one_soliton() {
  auto t0 = std::chrono::steady_clock::now();
  const double kappa = 1.5, x0 = -1.0, t = 0.5;
  SolitonSet s;
  s.kappa = {kappa};
  s.log_abs_chi = {std::log(2.0 * kappa) - 2.0 * kappa * x0};
  s.sign = {1};
  const double xc = x0 + 4.0 * kappa * kappa * t;
  double e_gas = 0.0, e_exact = 0.0;
  for (int i = 0; i < 400; ++i) {
    double x = xc - 6.0 + 12.0 * i / 399.0;
    double ref = sech_soliton(kappa, x0, x, t);
    e_gas = std::max(e_gas, std::abs(q_from_operator(discretize_poles(s, x, t)) - ref));
    e_exact = std::max(e_exact, std::abs(q_exact(s, x, t) - ref));
  }
  double sec = seconds_since(t0);
  return {e_gas <= 1e-9 && e_exact <= 1e-9 && sec < 1.0,
          fmt::format("max err gas {:.2e}, exact {:.2e} (tol 1e-9); {:.3f} s (limit 1 s)", e_gas,
                      e_exact, sec)};
}

double peak_near(const SolitonSet& s, double guess, double halfwidth, double t) {
  const int n = 2000;
  double best = guess, bq = -1e300;
  for (int i = 0; i <= n; ++i) {
    double x = guess - halfwidth + 2.0 * halfwidth * i / n;
    double q = q_exact(s, x, t);
    if (q > bq) {
      bq = q;
      best = x;
    }
  }
  const double h = 2.0 * halfwidth / n;
  auto r = boost::math::tools::brent_find_minima([&](double x) { return -q_exact(s, x, t); },
                                                 best - h, best + h, 50);
  return r.first;
}

Outcome two_soliton_shift() {
  auto t0 = std::chrono::steady_clock::now();
  const double k1 = 0.25, k2 = 1.0;
  const double chi1 = 25.0 / (std::pow(2.0, 0.25) * 9.0 * std::exp(5.0)), chi2 = 2.0;
  SolitonSet s = SolitonSet::from_chis({k1, k2}, {chi1, chi2});
  const double x1 = std::log(2.0 * k1 / chi1) / (2.0 * k1);
  const double x2 = std::log(2.0 * k2 / chi2) / (2.0 * k2);
  const double T = 25.0;
  // Free trajectories locate each peak; the shift is far smaller than the search half-width.
  auto offset = [&](double kappa, double xfree, double t) {
    return peak_near(s, xfree + 4.0 * kappa * kappa * t, 8.0, t) - 4.0 * kappa * kappa * t;
  };
  const double d1 = offset(k1, x1, T) - offset(k1, x1, -T);
  const double d2 = offset(k2, x2, T) - offset(k2, x2, -T);
  const double L = std::log((k2 + k1) / (k2 - k1));
  const double e1 = std::abs(d1 + L / k1), e2 = std::abs(d2 - L / k2);
  double sec = seconds_since(t0);
  return {e1 <= 1e-2 && e2 <= 1e-2 && sec < 5.0,
          fmt::format("small {:.6f} (want {:.6f}), large {:.6f} (want {:.6f}); {:.2f} s", d1,
                      -L / k1, d2, L / k2, sec)};
}

Outcome determinant_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double e_ld = 0.0, e_sq = 0.0;
  for (int p = 0; p < 1000; ++p) {
    int n = 1 + static_cast<int>(U(rng) * 16.0);
    std::vector<double> ks;
    while (static_cast<int>(ks.size()) < n) {
      double k = 0.2 + 1.8 * U(rng);
      bool ok = true;
      for (double o : ks) ok = ok && std::abs(o - k) > 0.02;
      if (ok) ks.push_back(k);
    }
    SolitonSet s;
    for (double k : ks) {
      s.kappa.push_back(k);
      s.log_abs_chi.push_back(std::log(2.0 * k) - 2.0 * k * (6.0 * U(rng) - 3.0));
      s.sign.push_back(1);
    }
    double x = 8.0 * U(rng) - 4.0, t = 0.3 * U(rng);
    double qs = q_exact(s, x, t, QMethod::Sum);
    double ql = q_exact(s, x, t, QMethod::LogDet);
    double q2 = q_exact(s, x, t, QMethod::Squared);
    e_ld = std::max(e_ld, std::abs(qs - ql));
    e_sq = std::max(e_sq, std::abs(q2 - qs * qs));
  }
  double sec = seconds_since(t0);
  return {e_ld <= 1e-10 && e_sq <= 1e-9 && sec < 10.0,
          fmt::format("sum/logdet {:.2e} (tol 1e-10), squared {:.2e} (tol 1e-9); {:.2f} s", e_ld,
                      e_sq, sec)};
}

Outcome fredholm_consistency() {
  Scenario s = base_gas();
  double worst_det = 0.0, worst_cauchy = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    for (double x : {-1.0, 0.5, 1.5, 3.0, 6.0}) {
      auto op = discretize_operator(s, x, t, 150);
      worst_det = std::max(worst_det, determinant_identity(op).relative_residual);
      worst_cauchy = std::max(worst_cauchy, std::abs(q_gas(s, x, t, 150) - q_gas(s, x, t, 300)));
    }
  }
  return {worst_det <= 1e-10 && worst_cauchy <= 1e-8,
          fmt::format("det identity {:.2e} (tol 1e-10), n 150->300 {:.2e} (tol 1e-8)", worst_det,
                      worst_cauchy)};
}

template <class Q>
double pde_residual(Q&& q, double x, double t, double h, double dispersion_sign, bool cubic) {
  double qt = (q(x, t + h) - q(x, t - h)) / (2.0 * h);
  double q0 = q(x, t);
  double qp = q(x + h, t), qm = q(x - h, t), qpp = q(x + 2 * h, t), qmm = q(x - 2 * h, t);
  double qx = (qp - qm) / (2.0 * h);
  double qxxx = (qpp - 2.0 * qp + 2.0 * qm - qmm) / (2.0 * h * h * h);
  double nonlin = cubic ? 6.0 * q0 * q0 * qx : 6.0 * q0 * qx;
  return qt + nonlin + dispersion_sign * qxxx;
}

Outcome pde_residuals() {
  Scenario s = base_gas();
  const double t = 1.0, h = 1e-3;
  double rm = 0.0, qm = 0.0;
  auto qg = [&](double x, double tt) { return q_gas(s, x, tt); };
  for (double x = 0.5; x <= 5.0 + 1e-9; x += 0.5) {
    rm = std::max(rm, std::abs(pde_residual(qg, x, t, h, 1.0, true)));
    qm = std::max(qm, std::abs(qg(x, t)));
  }
  // The kdv kernel as given yields q_t + 6 q q_x - q_xxx = 0 (left-moving waves).
  double rk = 0.0, qk = 0.0;
  auto qkd = [&](double x, double tt) { return q_kdv(s, x, tt); };
  for (double x = -5.0; x <= 0.0 + 1e-9; x += 0.5) {
    rk = std::max(rk, std::abs(pde_residual(qkd, x, t, h, -1.0, false)));
    qk = std::max(qk, std::abs(qkd(x, t)));
  }
  return {rm <= 1e-3 * qm && rk <= 1e-3 * qk,
          fmt::format("mKdV {:.2e} vs 1e-3*{:.3f}; KdV {:.2e} vs 1e-3*{:.3f}", rm, qm, rk, qk)};
}

Outcome continuum_limit() {
  Scenario s = base_gas();
  std::string detail;
  bool ok = true;
  for (auto [x, t] : {std::pair{1.0, 0.1}, std::pair{3.0, 1.0}}) {
    double ref = q_gas(s, x, t);
    double prev = INFINITY;
    for (int n : {64, 128, 256, 512}) {
      double e = std::abs(q_exact(sample_gas_solitons(n, s.gas), x, t) - ref);
      ok = ok && e < prev;
      prev = e;
    }
    ok = ok && prev <= 1e-4;
    detail += fmt::format("({},{}) N=512 err {:.2e}; ", x, t, prev);
  }
  return {ok, detail + "monotone in N, tol 1e-4"};
}

Outcome whitham_layer() {
  GasSpec g = base_gas().gas;
  const double v2 = front_speed_v2(g);
  const double v2_oracle = g.eta2 * g.eta2 * W_oracle(g.eta1 * g.eta1 / (g.eta2 * g.eta2));
  const double a2 = solve_alpha(v2, g);
  const double a_edge = solve_alpha(4.0 * g.eta1 * g.eta1 + 1e-9, g);
  bool mono = true;
  double prev = g.eta1;
  for (int i = 1; i <= 100; ++i) {
    double v = 4.0 * g.eta1 * g.eta1 + (v2 - 4.0 * g.eta1 * g.eta1) * i / 101.0;
    double a = solve_alpha(v, g);
    mono = mono && a > prev;
    prev = a;
  }
  bool ok = a2 == g.eta2 && std::abs(a_edge - g.eta1) <= 1e-3 && std::abs(v2 - 5.9970) <= 1e-3 &&
            std::abs(v2 - v2_oracle) <= 1e-3 && mono;
  return {ok, fmt::format("alpha(v2)={}, alpha(edge)-eta1={:.2e}, v2={:.10f} (oracle {:.10f}), "
                          "monotone={}",
                          a2, a_edge - g.eta1, v2, v2_oracle, mono)};
}

Outcome abel_certification() {
  BandParams b = make_band(0.25, 1.0);
  const double a_inf = abel_A(cplx(0.0, 1e6), b).real();
  const cplx ap = abel_A_boundary(b.eta1, BoundarySide::Plus, b);
  const double m = b.m;
  const cplx tau(0.0, K_oracle(1.0 - m) / (2.0 * K_oracle(m)));
  const double e = std::abs(ap + 0.5 * tau);
  return {std::abs(a_inf + 0.25) <= 1e-6 && e <= 1e-8,
          fmt::format("A(i1e6)+1/4 = {:.2e} (tol 1e-6); |A+(i eta1)+tau/2| = {:.2e} (tol 1e-8)",
                      a_inf + 0.25, e)};
}

Outcome outer_identities() {
  Scenario s = with_soliton(2.0, -200.0);
  double e_det = 0.0, e_bg = 0.0, e_q = 0.0, e_dx = 0.0;
  for (auto [x, t] : {std::pair{30.0, 10.0}, std::pair{70.0, 20.0}, std::pair{50.0, 20.0}}) {
    PhaseState ps = phase_state(s, x, t);
    for (Side side : {Side::Minus, Side::Plus}) {
      for (cplx k : {cplx(0.5, 0.5), cplx(0.0, 3.0), cplx(1.5, 2.0), cplx(-0.7, 0.2), cplx(0.3, -1.4)}) {
        e_det = std::max(e_det, std::abs(outer_matrix(k, ps, side).determinant() - 1.0));
      }
      e_bg = std::max(e_bg, std::abs(q_background(ps, side) - q_background_theta(ps, side)));
    }
    Eigen::Matrix2d w = outer_matrix_pole(2.0, ps, Side::Minus);
    e_q = std::max(e_q, std::abs(w(0, 1) / w(1, 1) - Q_minus_closed(2.0, ps)));
  }
  // The residue condition is checked where the minus-side dressing is the one in
  // use, i.e. behind the soliton, across its core at t = 20.
  int used = 0;
  for (double x = 100.0; x <= 140.0 + 1e-9; x += 1.0) {
    if (classify_region(s, x, 20.0).side != Side::Minus) continue;
    e_dx = std::max(e_dx, darboux_residue_residual(s, phase_state(s, x, 20.0)));
    ++used;
  }
  return {e_det <= 1e-8 && e_bg <= 1e-10 && e_q <= 1e-9 && e_dx <= 1e-7 && used > 0,
          fmt::format("det W0 {:.1e}, theta/dn {:.1e}, Q closed {:.1e}, Darboux {:.1e} ({} points)",
                      e_det, e_bg, e_q, e_dx, used)};
}

Outcome asymptotic_vs_fredholm() {
  auto t0 = std::chrono::steady_clock::now();
  Scenario g = base_gas();
  // Gas only: worst gap over one background wavelength centred on x = 3t.
  BandParams b = make_band(g.gas.eta1, solve_alpha(3.0, g.gas));
  const double lambda = 2.0 * K_oracle(b.m1) / (b.alpha + b.eta1);
  auto gap = [&](double t) {
    double e = 0.0;
    for (int i = 0; i < 9; ++i) {
      double x = 3.0 * t - 0.5 * lambda + lambda * i / 8.0;
      e = std::max(e, std::abs(q_gas(g, x, t, 80) - q_asymptotic(g, x, t)));
    }
    return e;
  };
  const double e10 = gap(10.0), e20 = gap(20.0);
  const double ratio = e20 / e10;
  // Trial soliton kappa0 = 2 crossing x in [60, 80] at t = 20.
  Scenario s = with_soliton(2.0, -252.0);
  double e_sol = 0.0;
  int used = 0, skipped = 0;
  for (double x = 60.0; x <= 80.0 + 1e-9; x += 2.0) {
    try {
      double qf = q_gas(s, x, 20.0, 80);
      e_sol = std::max(e_sol, std::abs(qf - q_asymptotic(s, x, 20.0)));
      ++used;
    } catch (const GuardError&) {
      ++skipped;
    }
  }
  double sec = seconds_since(t0);
  bool ok = e20 < e10 && ratio >= 0.3 && ratio <= 0.7 && used > 0 && e_sol <= 0.05 && sec < 60.0;
  return {ok, fmt::format("gas gap t=10 {:.3e}, t=20 {:.3e}, ratio {:.3f} (in [0.3,0.7]); soliton "
                          "max gap {:.4f} over {} points ({} guarded) (tol 0.05); {:.1f} s",
                          e10, e20, ratio, e_sol, used, skipped, sec)};
}

Outcome phase_shift_agreement() {
  double worst = 0.0;
  bool inside = true;
  for (double a : {0.4, 0.6, 0.8, 1.0}) {
    BandParams b = make_band(0.25, a);
    const double lo = -2.0 * K_oracle(b.m1) / (a + 0.25);
    for (double k0 : {1.2, 1.5, 2.0, 3.0}) {
      PhaseShift p = phase_shift(k0, b);
      worst = std::max(worst, std::abs(p.closed - p.via_delta));
      inside = inside && p.closed > lo && p.closed < 0.0;
    }
  }
  return {worst <= 1e-8 && inside,
          fmt::format("max |closed - delta route| {:.2e} (tol 1e-8); inside (-2K(m1)/(alpha+eta1), 0): {}",
                      worst, inside)};
}

Outcome kinetic() {
  double worst_s = 0.0, worst_g = 0.0;
  bool shrinks = true;
  for (double k0 : {1.5, 2.0, 3.0}) {
    for (double a : {0.5, 0.8, 1.0}) {
      BandParams b = make_band(0.25, a);
      KineticReport r = kinetic_residuals_band(k0, b);
      worst_s = std::max(worst_s, r.residual_soliton_eq);
      worst_g = std::max(worst_g, r.residual_group_eq);
      // Coarse levels, where truncation rather than rounding dominates.
      KineticReport c2 = kinetic_residuals_band(k0, b, 2);
      KineticReport c4 = kinetic_residuals_band(k0, b, 4);
      KineticReport c8 = kinetic_residuals_band(k0, b, 8);
      shrinks = shrinks && c4.residual_soliton_eq < c2.residual_soliton_eq &&
                c8.residual_soliton_eq < c4.residual_soliton_eq &&
                c4.residual_group_eq < c2.residual_group_eq && c8.residual_group_eq < c4.residual_group_eq;
    }
  }
  return {worst_s <= 1e-6 && worst_g <= 1e-6 && shrinks,
          fmt::format("soliton eq {:.2e}, group identity {:.2e} (tol 1e-6); shrinks 2->4->8: {}",
                      worst_s, worst_g, shrinks)};
}

Outcome peak_dynamics() {
  const double x0 = -200.0, k0 = 2.0;
  Scenario s = with_soliton(k0, x0);
  const double t1_oracle = -x0 / (4.0 * (k0 * k0 - 0.0625));
  const double t1 = entry_time(s);
  const double th = 0.5 * t1_oracle;
  const double e_q = std::abs(solve_peak(th, s).x_peak - (x0 + 4.0 * k0 * k0 * th));
  const bool quiescent = e_q <= 1e-12 * std::abs(x0) && std::abs(peak_velocity(th, s) - 4.0 * k0 * k0) == 0.0;

  double bound[2];
  bool osc = true;
  std::string detail;
  int j = 0;
  for (double t : {50.0, 100.0}) {
    auto pk = solve_peak(t, s);
    BandParams b = make_band(0.25, solve_alpha(pk.x_peak / t, s.gas));
    const double vb = v_bar_sol(k0, b);
    const double T = peak_period(t, s);
    bound[j++] = std::abs(average_peak_velocity(t, s) - vb) * t;
    double vmin = INFINITY, vmax = -INFINITY;
    for (int i = 0; i < 24; ++i) {
      double v = peak_velocity(t + T * i / 24.0, s);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    osc = osc && vmax > vb && vmin < vb;
    detail += fmt::format("t={}: |avg-vbar|*t={:.2e}, v in [{:.3f},{:.3f}] vs vbar {:.4f}; ", t,
                          bound[j - 1], vmin, vmax, vb);
  }
  // Both values sit at the level of the 1e-10 peak-location tolerance amplified
  // by t / T; below 1e-6 they count as bounded.
  const bool bounded = bound[1] <= 2.0 * bound[0] || std::max(bound[0], bound[1]) <= 1e-6;

  bool increasing = true;
  double prev = -INFINITY;
  for (double t = 0.25; t <= 100.0; t += 0.25) {
    if (t >= t1 * (1.0 - kQuiescentMargin) && t <= t1 * (1.0 + kQuiescentMargin)) continue;
    double x = solve_peak(t, s).x_peak;
    increasing = increasing && x > prev;
    prev = x;
  }
  bool ok = std::abs(t1 - t1_oracle) <= 1e-12 * t1_oracle && quiescent && bounded && osc && increasing;
  return {ok, detail + fmt::format("t1={:.6f}, quiescent err {:.1e}, bounded={}, increasing={}", t1,
                                   e_q, bounded, increasing)};
}

Outcome large_kappa() {
  const double k0 = 50.0, t = 1.0;
  const double x0 = 3.0 - 4.0 * k0 * k0 * t;
  Scenario s = with_soliton(k0, x0);
  double worst = 0.0;
  for (int i = -200; i <= 200; ++i) {
    double x = 3.0 + i * 0.05 / k0;
    double qs = q_asymptotic_parts(s, x, t).q_sol;
    worst = std::max(worst, std::abs(qs - sech_soliton(k0, x0, x, t)));
  }
  return {worst <= 5.0 / k0,
          fmt::format("max |q_sol - sech| {:.4f} (tol 5/kappa0 = {:.4f})", worst, 5.0 / k0)};
}

struct Entry {
  const char* title;
  Outcome (*fn)();
};

const Entry kChecks[] = {
    {"one-soliton oracle", one_soliton},
    {"two-soliton phase shift", two_soliton_shift},
    {"determinant-formula equivalence", determinant_equivalence},
    {"Fredholm self-consistency", fredholm_consistency},
    {"PDE residual", pde_residuals},
    {"continuum limit", continuum_limit},
    {"Whitham layer", whitham_layer},
    {"branch/Abel certification", abel_certification},
    {"outer-model identities", outer_identities},
    {"asymptotic vs Fredholm", asymptotic_vs_fredholm},
    {"phase shift routes", phase_shift_agreement},
    {"kinetic equations", kinetic},
    {"peak dynamics", peak_dynamics},
    {"large-kappa0 limit", large_kappa},
};

}  // namespace

int suite_size() { return static_cast<int>(std::size(kChecks)); }

CheckResult run_check(int id) {
  if (id < 1 || id > suite_size()) throw std::out_of_range("no such check");
  const Entry& e = kChecks[id - 1];
  CheckResult r;
  r.id = id;
  r.title = e.title;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = e.fn();
    r.pass = o.pass;
    r.detail = o.detail;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CheckResult> run_suite(const std::vector<int>& only,
                                   const std::function<void(const CheckResult&)>& on_result) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int i = 1; i <= suite_size(); ++i) ids.push_back(i);
  }
  std::vector<CheckResult> out;
  for (int id : ids) {
    out.push_back(run_check(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CheckResult& r) {
  return fmt::format("[{}] {:>2} {:<32} {} ({:.2f} s)", r.pass ? "PASS" : "FAIL", r.id, r.title,
                     r.detail, r.seconds);
}

}  // namespace sgas::tools
