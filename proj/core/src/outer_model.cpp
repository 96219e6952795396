#include "sgas/outer_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sgas/specfun.hpp"

namespace sgas {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

bool on_band(cplx k, const BandParams& b) {
  double au = std::abs(k.imag());
  return k.real() == 0.0 && au >= b.eta1 && au <= b.alpha;
}

cplx th(cplx z, const BandParams& b) { return specfun::theta3(z, b.tau); }

template <class F>
double richardson(F&& g, double k0) {
  const double h = 1e-5 * k0;
  auto cd = [&](double s) { return (g(k0 + s) - g(k0 - s)) / (2.0 * s); };
  return (4.0 * cd(0.5 * h) - cd(h)) / 3.0;
}

Side normal_side(Side s) { return s == Side::Plus ? Side::Plus : Side::Minus; }

}  // namespace

cplx gamma_quarter(cplx k, const BandParams& b) {
  if (on_band(k, b)) throw std::domain_error("gamma_quarter: k on a band; pass a side");
  const cplx ia(0.0, b.alpha), ie(0.0, b.eta1);
  return std::exp(0.25 * (std::log((k - ia) / (k - ie)) + std::log((k + ie) / (k + ia))));
}

cplx gamma_quarter_boundary(double u, BoundarySide side, const BandParams& b) {
  const double au = std::abs(u);
  if (side == BoundarySide::Off || !(au > b.eta1 && au < b.alpha)) {
    throw std::domain_error("gamma_quarter_boundary: need a side and eta1 < |u| < alpha");
  }
  const bool left = (side == BoundarySide::Plus) == b.plus_is_left;
  double mag = std::log(std::abs((u - b.alpha) / (u - b.eta1))) +
               std::log(std::abs((u + b.eta1) / (u + b.alpha)));
  // The factor whose ratio is negative contributes +i pi from the left.
  return std::exp(0.25 * cplx(mag, left ? kPi : -kPi));
}

double theta_shift(const PhaseState& ps, Side side) {
  double delta = side == Side::Plus ? ps.Delta_plus : ps.Delta_minus;
  return (ps.Omega + delta) / (2.0 * kPi);
}

Mat2c outer_matrix_from(cplx A, cplx g, double D, const BandParams& b) {
  const cplx n = th(0.0, b) / th(D, b);
  const cplx sp = 0.5 * (g + 1.0 / g), sm = 0.5 * (g - 1.0 / g);
  const cplx d11 = th(A + 0.25, b), d12 = th(-A + 0.25, b);
  const cplx d21 = th(A - 0.25, b), d22 = th(-A - 0.25, b);
  double scale = std::abs(th(0.0, b));
  for (cplx d : {d11, d12, d21, d22}) {
    if (std::abs(d) < 1e-14 * scale) throw ThetaPoleError("outer_matrix: theta denominator vanishes");
  }
  Mat2c W;
  W(0, 0) = sp * th(A + 0.25 + D, b) / d11 * n;
  W(0, 1) = sm * th(-A + 0.25 + D, b) / d12 * n;
  W(1, 0) = sm * th(A - 0.25 + D, b) / d21 * n;
  W(1, 1) = sp * th(-A - 0.25 + D, b) / d22 * n;
  return W;
}

Mat2c outer_matrix(cplx k, const PhaseState& ps, Side side) {
  const auto& b = ps.band;
  return outer_matrix_from(abel_A(k, b), gamma_quarter(k, b), theta_shift(ps, side), b);
}

Mat2c outer_matrix_boundary(double u, BoundarySide bside, const PhaseState& ps, Side side) {
  const auto& b = ps.band;
  return outer_matrix_from(abel_A_boundary(u, bside, b), gamma_quarter_boundary(u, bside, b),
                           theta_shift(ps, side), b);
}

Eigen::Matrix2d outer_matrix_pole(double kappa, const PhaseState& ps, Side side) {
  const auto& b = ps.band;
  double g = gamma_quarter(cplx(0.0, kappa), b).real();
  return outer_matrix_from(abel_A_pole(kappa, b), g, theta_shift(ps, side), b).real();
}

BackgroundShift background_shift(const PhaseState& ps) {
  const auto& b = ps.band;
  BackgroundShift s;
  s.x_plus = -b.K * (ps.Delta_plus - kPi) / (b.alpha * kPi);
  s.x_minus = -b.K * (ps.Delta_minus - kPi) / (b.alpha * kPi);
  return s;
}

double q_background_theta(const PhaseState& ps, Side side) {
  const auto& b = ps.band;
  const double D = theta_shift(ps, side);
  cplx v = (b.alpha - b.eta1) * th(0.0, b) * th(0.5 + D, b) / (th(0.5, b) * th(D, b));
  return v.real();
}

double q_background(const PhaseState& ps, Side side) {
  const auto& b = ps.band;
  const double K1 = specfun::complete_elliptic(b.m1).K;
  const double D = theta_shift(ps, side);
  const double v = (b.alpha + b.eta1) * specfun::jacobi_elliptic(K1 * (2.0 * D + 1.0), b.m1).dn;
  const double check = q_background_theta(ps, side);
  if (std::abs(v - check) > 1e-10 * (b.alpha + b.eta1)) {
    throw AccuracyError("q_background: dn and theta forms disagree");
  }
  return v;
}

double Q_of_kappa(double kappa, const PhaseState& ps, Side side) {
  Eigen::Matrix2d w = outer_matrix_pole(kappa, ps, side);
  return side == Side::Plus ? w(0, 0) / w(1, 0) : w(0, 1) / w(1, 1);
}

double Q_kappa(double kappa0, const PhaseState& ps, Side side) {
  return richardson([&](double k) { return Q_of_kappa(k, ps, side); }, kappa0);
}

double Q_minus_closed(double kappa0, const PhaseState& ps) {
  const auto& b = ps.band;
  const double g2 = std::pow(gamma_quarter(cplx(0.0, kappa0), b).real(), 2);
  const double A = abel_A_pole(kappa0, b);
  const double D = theta_shift(ps, Side::Minus);
  const double K1 = specfun::complete_elliptic(b.m1).K;
  return (g2 - 1.0) / (g2 + 1.0) * (b.alpha + b.eta1) / (b.alpha - b.eta1) *
         specfun::jacobi_elliptic(2.0 * K1 * (A + 0.25), b.m1).dn *
         specfun::jacobi_elliptic(2.0 * K1 * (A - 0.25 - D), b.m1).dn;
}

OuterState outer_state(const Scenario& scn, const PhaseState& ps, Side side,
                       const NumericOptions& opts) {
  if (!scn.soliton) throw std::invalid_argument("outer_state: scenario has no trial soliton");
  const auto& sol = *scn.soliton;
  const auto& b = ps.band;
  const double k0 = sol.kappa0;
  OuterState st;
  st.side = normal_side(side);
  Eigen::Matrix2d w = outer_matrix_pole(k0, ps, st.side);
  st.w11 = w(0, 0);
  st.w12 = w(0, 1);
  st.w21 = w(1, 0);
  st.w22 = w(1, 1);
  st.gamma = gamma_quarter(cplx(0.0, k0), b).real();
  st.Q = st.side == Side::Plus ? st.w11 / st.w21 : st.w12 / st.w22;
  st.Q_kappa = Q_kappa(k0, ps, st.side);
  st.Y = (1.0 + st.Q * st.Q) / (2.0 * k0);
  st.log_chi_hat = sol.log_abs_chi + 2.0 * phi_pole(k0, ps.x, ps.t, b).imag();
  const cplx ik(0.0, k0);
  double log_term;
  double sign;
  if (st.side == Side::Minus) {
    st.f_sq = std::pow(scalar_f(ik, ps, FVariant::Minus, scn, opts.band_nodes).value.real(), 2);
    // 1 / (f^2 w22^2 chi e^{-2i phi})
    log_term = -st.log_chi_hat - std::log(st.f_sq * st.w22 * st.w22);
    sign = sol.sigma;
  } else {
    cplx fp = scalar_f(ik, ps, FVariant::Plus, scn, opts.band_nodes).f_prime_at_pole;
    st.f_sq = (fp * fp).real();
    // f'^2 chi e^{-2i phi} / w21^2
    log_term = st.log_chi_hat + std::log(std::abs(st.f_sq) / (st.w21 * st.w21));
    sign = sol.sigma * (st.f_sq < 0.0 ? -1.0 : 1.0);
  }
  const double term = log_term > 700.0 ? sign * std::numeric_limits<double>::infinity()
                                       : sign * std::exp(log_term);
  st.X = term + st.Q_kappa;
  if (std::isinf(st.X)) {
    st.darbouxA = 0.0;
    st.darbouxB = 0.0;
  } else {
    const double den = st.X * st.X + st.Y * st.Y;
    if (den < 1e-30) throw std::runtime_error("outer_state: X^2 + Y^2 vanishes");
    st.darbouxA = (st.Y - st.Q * st.X) / den;
    st.darbouxB = -(st.X + st.Q * st.Y) / den;
  }
  return st;
}

double q_soliton_part(const OuterState& st) {
  const double X = st.X, Y = st.Y, Q = st.Q;
  if (std::isinf(X)) return 0.0;
  if (std::abs(X) > 1e100) return 2.0 * (1.0 - Q * Q) / X + 4.0 * Q * Y / (X * X);
  return (2.0 * (1.0 - Q * Q) * X + 4.0 * Q * Y) / (X * X + Y * Y);
}

double darboux_residue_residual(const Scenario& scn, const PhaseState& ps,
                                const NumericOptions& opts) {
  const auto& sol = *scn.soliton;
  const double k0 = sol.kappa0;
  OuterState st = outer_state(scn, ps, Side::Minus, opts);
  if (std::isinf(st.X)) throw std::domain_error("darboux_residue_residual: X is not finite here");
  const double a = st.darbouxA, b = st.darbouxB, Q = st.Q;
  Mat2c M1, M2;
  M1 << a, -Q * a, b, -Q * b;
  M2 << Q * b, b, -Q * a, -a;
  Mat2c W0 = outer_matrix_pole(k0, ps, Side::Minus).cast<cplx>();
  Eigen::Matrix2d dW;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      dW(i, j) = richardson([&](double k) { return outer_matrix_pole(k, ps, Side::Minus)(i, j); },
                            k0);
    }
  }
  Mat2c W0p = -kI * dW.cast<cplx>();
  const cplx c = -kI * static_cast<double>(sol.sigma) * st.f_sq * std::exp(st.log_chi_hat);
  Eigen::Vector2cd e1(1.0, 0.0), e2(0.0, 1.0);
  Eigen::Vector2cd lhs = kI * M1 * W0 * e1;
  Eigen::Vector2cd rhs =
      c * ((Mat2c::Identity() + M2 / (2.0 * k0)) * W0 * e2 + kI * M1 * W0p * e2);
  Eigen::Vector2cd pole_part = M1 * W0 * e2;
  return std::max((lhs - rhs).cwiseAbs().maxCoeff(), pole_part.cwiseAbs().maxCoeff());
}

AsymptoticValue q_asymptotic_parts(const Scenario& scn, double x, double t,
                                   const NumericOptions& opts) {
  scn.validate();
  AsymptoticValue out;
  out.tag = classify_region(scn, x, t);
  if (out.tag.sector == Sector::Transition) {
    throw std::domain_error("q_asymptotic: (x, t) lies in a transition band; unsupported region");
  }
  if (out.tag.sector == Sector::Left) {
    if (scn.soliton) {
      const auto& s = *scn.soliton;
      const double k = s.kappa0;
      double L = s.log_abs_chi - std::log(2.0 * k) + 2.0 * (x * k - 4.0 * t * k * k * k);
      out.q_sol = std::abs(L) > 700.0 ? 0.0 : 2.0 * k * s.sigma / std::cosh(L);
    }
    out.q = out.q_sol;
    return out;
  }
  PhaseState ps = phase_state(scn, x, t, opts);
  const Side side = normal_side(out.tag.side);
  out.q_bg = q_background(ps, side);
  if (scn.soliton) out.q_sol = q_soliton_part(outer_state(scn, ps, side, opts));
  out.q = out.q_bg + out.q_sol;
  return out;
}

double q_asymptotic(const Scenario& scn, double x, double t, const NumericOptions& opts) {
  return q_asymptotic_parts(scn, x, t, opts).q;
}

}  // namespace sgas
