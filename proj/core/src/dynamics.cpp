#include "sgas/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sgas/quadrature.hpp"
#include "sgas/specfun.hpp"

namespace sgas {

namespace {

constexpr double kPi = std::numbers::pi;

double band_rho(double u, const BandParams& b) {
  return std::sqrt((u * u - b.eta1 * b.eta1) * (b.alpha * b.alpha - u * u));
}

/// Illinois variant of regula falsi on a sign-changing bracket.
template <class F>
double illinois(F&& f, double a, double b, double fa, double fb, double tol) {
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
    double fc = f(c);
    if (fc == 0.0) return c;
    if ((fc > 0.0) == (fb > 0.0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
    if (std::abs(b - a) <= tol) return 0.5 * (a + b);
  }
  throw std::runtime_error("illinois: no convergence");
}

const TrialSolitonSpec& need_soliton(const Scenario& scn) {
  if (!scn.soliton) throw std::invalid_argument("dynamics: scenario has no trial soliton");
  return *scn.soliton;
}

struct PsiParts {
  double log_psi = 0.0;  // log(sigma Psi)
  double Q = 0.0;
};

PsiParts log_psi(const Scenario& scn, const PhaseState& ps, const NumericOptions& opts) {
  const auto& sol = *scn.soliton;
  const double k0 = sol.kappa0;
  Eigen::Matrix2d w = outer_matrix_pole(k0, ps, Side::Minus);
  const double Q = w(0, 1) / w(1, 1);
  const double Qk = Q_kappa(k0, ps, Side::Minus);
  const double f = scalar_f(cplx(0.0, k0), ps, FVariant::Minus, scn, opts.band_nodes).value.real();
  // X = X1 for the soliton maximum, X = X2 for the anti-soliton minimum.
  const double Xl = sol.sigma > 0 ? (1.0 - Q) / (1.0 + Q) * (1.0 + Q * Q)
                                  : -(1.0 + Q) / (1.0 - Q) * (1.0 + Q * Q);
  const double psi = sol.sigma * f * f * w(1, 1) * w(1, 1) * (Xl - 2.0 * k0 * Qk);
  if (!(psi > 0.0)) {
    throw PeakJumpError("peak equation degenerate (Psi has the wrong sign); the peak may jump");
  }
  return {std::log(psi), Q};
}

double crit_value(const Scenario& scn, const PhaseState& ps) {
  const auto& sol = *scn.soliton;
  return sol.log_abs_chi - std::log(2.0 * sol.kappa0) +
         2.0 * phi_pole(sol.kappa0, ps.x, ps.t, ps.band).imag();
}

}  // namespace

std::string to_string(PeakBranch b) {
  switch (b) {
    case PeakBranch::Quiescent: return "quiescent";
    case PeakBranch::Modulated: return "modulated";
    case PeakBranch::FixedBand: return "fixed-band";
  }
  return "?";
}

double v_bar_sol(double kappa0, const BandParams& b) {
  if (!(kappa0 > b.alpha)) throw std::domain_error("v_bar_sol: kappa0 must exceed alpha");
  double pi3 = specfun::complete_pi(b.eta1 * b.eta1 / (kappa0 * kappa0), b.m);
  return 4.0 * kappa0 * kappa0 * b.K / pi3 + v_background(b);
}

double v_group(double u, const BandParams& b) {
  const double k2 = -u * u;
  const double den = k2 + b.c0;
  if (std::abs(den) < 1e-14 * b.alpha * b.alpha) {
    throw std::domain_error("v_group: k^2 + c0 = 0 is a pole of the group velocity");
  }
  const double half = 0.5 * (b.eta1 * b.eta1 + b.alpha * b.alpha);
  return -12.0 * (k2 * k2 + half * k2 + b.c2) / den;
}

cplx v_phase(cplx k, const BandParams& b) {
  return -phi(k, 0.0, 1.0, b) / phi(k, 1.0, 0.0, b);
}

double v_phase_edge(const BandParams& b) {
  cplx pt = phi_boundary(b.eta1, BoundarySide::Plus, 0.0, 1.0, b);
  cplx px = phi_boundary(b.eta1, BoundarySide::Plus, 1.0, 0.0, b);
  return (-pt / px).real();
}

double v_background(const BandParams& b) { return 2.0 * (b.eta1 * b.eta1 + b.alpha * b.alpha); }

KineticReport kinetic_residuals_band(double kappa0, const BandParams& b, int nodes) {
  if (!(kappa0 > b.alpha)) throw std::domain_error("kinetic_residuals: kappa0 must exceed alpha");
  auto rx = [&](double u) { return rho_derivatives(u, 0.0, 0.0, b).rho_x.real(); };
  auto rt = [&](double u) { return rho_derivatives(u, 0.0, 0.0, b).rho_t.real(); };
  KineticReport rep;
  rep.v_bar = v_bar_sol(kappa0, b);
  const double vb = rep.v_bar;
  double integral = quad::band_integral(
      [&](double u) {
        return std::log((kappa0 - u) / (kappa0 + u)) * (-rt(u) - vb * rx(u)) * band_rho(u, b);
      },
      b.eta1, b.alpha, nodes);
  double rhs = 4.0 * kappa0 * kappa0 + integral / kappa0;
  rep.residual_soliton_eq = std::abs(vb - rhs) / std::abs(vb);

  double worst = 0.0;
  for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double u0 = b.eta1 + frac * (b.alpha - b.eta1);
    const double vg0 = v_group(u0, b);
    auto g = [&](double u) -> cplx {
      return std::log(std::abs((u0 - u) / (u0 + u))) * (-rt(u) - vg0 * rx(u));
    };
    cplx in = quad::endpoint_integral(g, b.eta1, u0, nodes) +
              quad::endpoint_integral(g, u0, b.alpha, nodes);
    double rhs_g = 4.0 * u0 * u0 + in.real() / u0;
    worst = std::max(worst, std::abs(vg0 - rhs_g) / std::max(1.0, std::abs(vg0)));
  }
  rep.residual_group_eq = worst;
  return rep;
}

KineticReport kinetic_residuals(double kappa0, double x, double t, const Scenario& scn,
                                int nodes) {
  if (!(t > 0.0)) throw std::domain_error("kinetic_residuals: t must be positive");
  const double v = x / t;
  if (!(v > 4.0 * scn.gas.eta1 * scn.gas.eta1 && v < front_speed_v2(scn.gas))) {
    throw std::domain_error("kinetic_residuals: x/t must lie in the modulation sector");
  }
  return kinetic_residuals_band(kappa0, make_band(scn.gas.eta1, solve_alpha(v, scn.gas)), nodes);
}

PhaseShift phase_shift(double kappa0, const BandParams& b, const Reflection& r, int nodes) {
  PhaseShift s;
  s.closed = -(2.0 * b.K / b.alpha) * (1.0 + 4.0 * abel_A_pole(kappa0, b));
  double dp = compute_delta(b, r, &kappa0, nodes);
  double dm = compute_delta(b, r, nullptr, nodes);
  s.via_delta = (dp - dm) * b.K / (b.alpha * kPi);
  return s;
}

double kappa_crit(const BandParams& b) {
  const double m = b.m, sm = std::sqrt(m);
  return b.alpha * (1.0 + m + std::sqrt((1.0 + m) * (1.0 + m) + 4.0 * sm * (1.0 + sm) * (1.0 + sm))) /
         (2.0 * (1.0 + sm));
}

CharacteristicFrame characteristic_frame(const Scenario& scn, double x, double t,
                                         const NumericOptions& opts) {
  auto s_of = [&](double xx) {
    PhaseState ps = phase_state(scn, xx, t, opts);
    return ps.Omega + ps.Delta_minus;
  };
  CharacteristicFrame f;
  f.s = s_of(x);
  f.tau = t;
  const double h = 1e-4;
  f.ds_dx = (s_of(x + h) - s_of(x - h)) / (2.0 * h);
  return f;
}

double entry_time(const Scenario& scn) {
  const auto& sol = need_soliton(scn);
  const double x0 = sol.center();
  if (!(x0 < 0.0)) throw std::domain_error("entry_time: the soliton must start behind the gas (x0 < 0)");
  const double e1 = scn.gas.eta1;
  return -x0 / (4.0 * (sol.kappa0 * sol.kappa0 - e1 * e1));
}

double peak_function(const Scenario& scn, double x, double t, const NumericOptions& opts) {
  need_soliton(scn);
  PhaseState ps = phase_state(scn, x, t, opts);
  return crit_value(scn, ps) + log_psi(scn, ps, opts).log_psi;
}

PeakSample solve_peak(double t, const Scenario& scn, const NumericOptions& opts) {
  const auto& sol = need_soliton(scn);
  if (!(t > 0.0)) throw std::domain_error("solve_peak: t must be positive");
  const double k0 = sol.kappa0;
  const double x0 = sol.center();
  const double t1 = entry_time(scn);
  PeakSample out;
  out.t = t;
  if (t < t1 * (1.0 - kQuiescentMargin)) {
    out.branch = PeakBranch::Quiescent;
    out.x_peak = x0 + 4.0 * k0 * k0 * t;
    out.amplitude = 2.0 * k0 * sol.sigma;
    out.side = classify_region(scn, out.x_peak, t).side;
    return out;
  }
  const double e1 = scn.gas.eta1;
  const double x_edge = 4.0 * e1 * e1 * t * (1.0 + 1e-7);
  auto crit = [&](double x) { return crit_value(scn, phase_state(scn, x, t, opts)); };

  // Zero of the side criterion: the soliton centre seen through the gas.
  double xg = std::max(x0 + 4.0 * k0 * k0 * t, x_edge + 1.0);
  double cg = crit(xg);
  double step = std::max(1.0, 0.05 * std::abs(xg));
  double xa = xg, ca = cg, xb = xg, cb = cg;
  for (int it = 0; it < 200 && (ca > 0.0) == (cb > 0.0); ++it) {
    if (cg > 0.0) {
      xa = std::max(xa - step, x_edge);
      ca = crit(xa);
      if (xa == x_edge && ca > 0.0) {
        throw std::domain_error("solve_peak: peak still in the quiescent sector at this t");
      }
    } else {
      xb += step;
      cb = crit(xb);
    }
    step *= 2.0;
  }
  if ((ca > 0.0) == (cb > 0.0)) throw std::runtime_error("solve_peak: no bracket for the soliton centre");
  if (cg > 0.0) {
    xb = xg;
    cb = cg;
  } else {
    xa = xg;
    ca = cg;
  }
  const double xc = illinois(crit, xa, xb, ca, cb, 1e-8);

  // Scan P over a window around the centre and require exactly one sign change.
  PhaseState psc = phase_state(scn, xc, t, opts);
  const double slope = 2.0 * phi_pole_parts(k0, psc.band).phi0.imag();
  const double lp = log_psi(scn, psc, opts).log_psi;
  const auto& b = psc.band;
  const double period = 2.0 * specfun::complete_elliptic(b.m1).K / (b.alpha + b.eta1);
  const double half = std::max((std::abs(lp) + 8.0) / std::abs(slope), period);
  const double lo = std::max(xc - half, x_edge), hi = xc + half;
  const int ns = 48;
  auto P = [&](double x) { return peak_function(scn, x, t, opts); };
  std::vector<double> xs(ns + 1), ps(ns + 1);
  int changes = 0, idx = -1;
  for (int i = 0; i <= ns; ++i) {
    xs[i] = lo + (hi - lo) * i / ns;
    ps[i] = P(xs[i]);
    if (i > 0 && (ps[i] > 0.0) != (ps[i - 1] > 0.0)) {
      ++changes;
      idx = i;
    }
  }
  if (changes != 1 || ps[idx] < ps[idx - 1]) {
    throw PeakJumpError("solve_peak: peak equation has " + std::to_string(changes) +
                        " roots near x = " + std::to_string(xc) + "; the peak may jump");
  }
  const double xs_root = illinois(P, xs[idx - 1], xs[idx], ps[idx - 1], ps[idx], 1e-10);
  const double h = 1e-5;
  if (!(P(xs_root + h) - P(xs_root - h) > 0.0)) {
    throw PeakJumpError("solve_peak: dP/dx <= 0 at the root; the peak may jump");
  }
  out.x_peak = xs_root;
  out.side = classify_region(scn, xs_root, t).side;
  out.branch = xs_root / t < front_speed_v2(scn.gas) ? PeakBranch::Modulated : PeakBranch::FixedBand;
  PhaseState pr = phase_state(scn, xs_root, t, opts);
  const double Q = log_psi(scn, pr, opts).Q;
  const double Y = (1.0 + Q * Q) / (2.0 * k0);
  const double X = sol.sigma > 0 ? (1.0 - Q) / (1.0 + Q) * Y : -(1.0 + Q) / (1.0 - Q) * Y;
  const double qsol = (2.0 * (1.0 - Q * Q) * X + 4.0 * Q * Y) / (X * X + Y * Y);
  const Side bg_side = out.side == Side::Plus ? Side::Plus : Side::Minus;
  out.amplitude = q_background(pr, bg_side) + qsol;
  return out;
}

double peak_velocity(double t, const Scenario& scn, const NumericOptions& opts) {
  const auto& sol = need_soliton(scn);
  const double k0 = sol.kappa0;
  PeakSample pk = solve_peak(t, scn, opts);
  if (pk.branch == PeakBranch::Quiescent) return 4.0 * k0 * k0;
  const double x = pk.x_peak;
  PhaseState ps = phase_state(scn, x, t, opts);
  PhaseDerivatives d = phi_pole_parts(k0, ps.band);
  auto lpsi = [&](double xx, double tt) {
    return log_psi(scn, phase_state(scn, xx, tt, opts), opts).log_psi;
  };
  const double h = 1e-4;
  const double dx = (lpsi(x + h, t) - lpsi(x - h, t)) / (2.0 * h);
  const double dt = (lpsi(x, t + h) - lpsi(x, t - h)) / (2.0 * h);
  const double Px = 2.0 * d.phi0.imag() + dx;
  const double Pt = 2.0 * d.phi2.imag() + dt;
  return -Pt / Px;
}

double peak_period(double t, const Scenario& scn, const NumericOptions& opts) {
  const auto& sol = need_soliton(scn);
  PeakSample pk = solve_peak(t, scn, opts);
  if (pk.branch == PeakBranch::Quiescent) {
    throw std::domain_error("peak_period: the peak has not entered the gas");
  }
  BandParams b = make_band(scn.gas.eta1, solve_alpha(pk.x_peak / t, scn.gas));
  const double wavelength = 2.0 * specfun::complete_elliptic(b.m1).K / (b.alpha + b.eta1);
  return wavelength / std::abs(v_bar_sol(sol.kappa0, b) - v_background(b));
}

double average_peak_velocity(double t, const Scenario& scn, const NumericOptions& opts) {
  const double T = peak_period(t, scn, opts);
  const double x1 = solve_peak(t, scn, opts).x_peak;
  const double x2 = solve_peak(t + T, scn, opts).x_peak;
  return (x2 - x1) / T;
}

EntryExit entry_exit_times(const Scenario& scn, double horizon, const NumericOptions& opts) {
  EntryExit out;
  out.t1 = entry_time(scn);
  const double v2 = front_speed_v2(scn.gas);
  auto g = [&](double t) { return solve_peak(t, scn, opts).x_peak / t - v2; };
  double lo = out.t1 * (1.0 + kQuiescentMargin);
  if (g(lo) >= 0.0) {
    out.t2 = lo;
    return out;
  }
  double hi = 2.0 * lo;
  while (g(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > horizon) throw std::runtime_error("entry_exit_times: x_peak/t never reaches v2 within the horizon");
  }
  while (hi - lo > 1e-9 * hi) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.t2 = hi;
  return out;
}

}  // namespace sgas
