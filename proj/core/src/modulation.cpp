#include "sgas/modulation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sgas/quadrature.hpp"
#include "sgas/specfun.hpp"

namespace sgas {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// int_0^W dw / sqrt(alpha^2 cosh^2 w - eta1^2) with y = exp(-w).
double cosh_integral(double alpha, double eta1, double wmax) {
  double ylo = std::isinf(wmax) ? 0.0 : std::exp(-wmax);
  // Near-logarithmic peak at y = 1 when alpha -> eta1, so integrate adaptively.
  auto g = [&](double y) -> cplx {
    double a = alpha * (1.0 + y * y);
    return 2.0 / std::sqrt(a * a - 4.0 * eta1 * eta1 * y * y);
  };
  return quad::adaptive(g, ylo, 1.0, 1e-13).real();
}

double band_rho(double u, const BandParams& b) {
  return std::sqrt((u * u - b.eta1 * b.eta1) * (b.alpha * b.alpha - u * u));
}

cplx left_value(double u, const BandParams& b) {
  double sg = u > 0.0 ? 1.0 : -1.0;
  return static_cast<double>(b.r_sign) * kI * sg * std::sqrt(u * u - b.eta1 * b.eta1) *
         (-std::sqrt(b.alpha * b.alpha - u * u));
}

bool is_left(BoundarySide side, const BandParams& b) {
  return (side == BoundarySide::Plus) == b.plus_is_left;
}

}  // namespace

double whitham_W(double m) {
  if (!(m >= 0.0 && m <= 1.0)) throw std::domain_error("whitham_W: m must lie in [0, 1]");
  if (m == 1.0) return 4.0;
  auto ke = specfun::complete_elliptic(m);
  return 4.0 * (1.0 - m) * ke.K / ke.E + 2.0 * (1.0 + m);
}

double front_speed_v2(const GasSpec& gas) {
  double m = gas.eta1 * gas.eta1 / (gas.eta2 * gas.eta2);
  return gas.eta2 * gas.eta2 * whitham_W(m);
}

double solve_alpha(double v, const GasSpec& gas, double tol) {
  const double e1 = gas.eta1;
  if (!(v > 4.0 * e1 * e1)) {
    throw std::domain_error("solve_alpha: x/t must exceed 4 eta1^2 (no band on the quiescent side)");
  }
  if (v >= front_speed_v2(gas)) return gas.eta2;
  double lo = e1, hi = gas.eta2;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double f = mid * mid * whitham_W(e1 * e1 / (mid * mid)) - v;
    if (f > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BandParams make_band(double eta1, double alpha) {
  if (!(eta1 > 0.0) || !(alpha > eta1)) {
    throw std::domain_error("make_band: need 0 < eta1 < alpha");
  }
  BandParams b;
  b.eta1 = eta1;
  b.alpha = alpha;
  b.m = eta1 * eta1 / (alpha * alpha);
  b.m1 = 4.0 * alpha * eta1 / ((alpha + eta1) * (alpha + eta1));
  auto ke = specfun::complete_elliptic(b.m);
  b.K = ke.K;
  b.E = ke.E;
  b.Kc = specfun::complete_elliptic(1.0 - b.m).K;
  b.tau = cplx(0.0, b.Kc / (2.0 * b.K));
  b.c0 = alpha * alpha * (1.0 - b.E / b.K);
  b.c2 = std::pow(alpha, 4) / 6.0 * ((1.0 + b.m) * b.E / b.K - (1.0 - b.m));

  // A(inf): along iL, L > alpha, where R(iL) = -r_sign sqrt(...).
  const double pref = alpha / (4.0 * b.K);
  const double axis = cosh_integral(alpha, eta1, INFINITY);
  bool fixed_sign = false;
  for (int s : {1, -1}) {
    if (std::abs(-s * pref * axis + 0.25) < 1e-8) {
      b.r_sign = s;
      fixed_sign = true;
      break;
    }
  }
  if (!fixed_sign) throw std::runtime_error("make_band: no R branch gives A(inf) = -1/4");

  // A_+(i eta1) = -(alpha/4K) int du / R_side(iu) over the band.
  bool fixed_side = false;
  for (bool left : {true, false}) {
    b.plus_is_left = left;
    cplx c = R_eval(cplx(0.0, 0.5 * (eta1 + alpha)), b, BoundarySide::Plus) /
             band_rho(0.5 * (eta1 + alpha), b);
    // int_{eta1}^{alpha} du / sqrt((u^2 - eta1^2)(alpha^2 - u^2)) = K(1 - m) / alpha.
    const double band_int = b.Kc / alpha;
    cplx a_plus = -pref * band_int / c;
    if (std::abs(a_plus + 0.5 * b.tau) < 1e-8) {
      fixed_side = true;
      break;
    }
  }
  if (!fixed_side) throw std::runtime_error("make_band: no boundary side gives A_+(i eta1) = -tau/2");
  return b;
}

cplx R_eval(cplx k, const BandParams& b, BoundarySide side) {
  const double e1 = b.eta1, a = b.alpha;
  if (side != BoundarySide::Off) {
    double u = k.imag();
    double au = std::abs(u);
    if (au < e1) {
      return static_cast<double>(b.r_sign) * std::sqrt((e1 - au) * (e1 + au)) *
             std::sqrt((a - au) * (a + au));
    }
    if (!(au > e1 && au < a)) {
      throw std::domain_error("R_eval: boundary value requested off the open bands");
    }
    cplx l = left_value(u, b);
    return is_left(side, b) ? l : -l;
  }
  if (k.real() == 0.0) {
    double u = k.imag();
    double au = std::abs(u);
    if (au < e1) {
      return static_cast<double>(b.r_sign) * std::sqrt((e1 - au) * (e1 + au)) *
             std::sqrt((a - au) * (a + au));
    }
    if (au > a) {
      return -static_cast<double>(b.r_sign) * std::sqrt((au - e1) * (au + e1)) *
             std::sqrt((au - a) * (au + a));
    }
    throw std::domain_error("R_eval: k lies on a band cut; pass a side");
  }
  cplx k2 = k * k;
  return static_cast<double>(b.r_sign) * (k * std::sqrt(1.0 + e1 * e1 / k2)) *
         (k * std::sqrt(1.0 + a * a / k2));
}

cplx cut_integral(cplx k, const BandParams& b, const std::function<cplx(cplx)>& P, double tol) {
  const cplx ia(0.0, b.alpha);
  if (k == ia) return 0.0;
  if (k.real() == 0.0 && std::abs(k.imag()) <= b.alpha) {
    throw std::domain_error("cut_integral: endpoint on the cut; use cut_integral_boundary");
  }
  auto checked = [&](const std::function<cplx(double)>& g, double lo, double hi) {
    double err = 0.0;
    cplx v = quad::adaptive(g, lo, hi, tol, &err);
    if (!(err <= 1e-8 * std::max(1.0, std::abs(v)))) {
      throw AccuracyError("cut_integral: adaptive quadrature did not converge");
    }
    return v;
  };
  // Near the edge R is rebuilt from the exact offset z - i alpha = d s^2; the
  // branch comes from a well-conditioned reference point, R ~ s there.
  auto from_edge = [&](cplx end) {
    cplx d = end - ia;
    const double s_ref = std::min(1.0, std::sqrt(1e-3 * b.alpha / std::abs(d)));
    const cplx r_ref = R_eval(ia + d * s_ref * s_ref, b);
    const double e1sq = b.eta1 * b.eta1;
    return checked([&, d, s_ref, r_ref, e1sq](double s) {
      cplx delta = d * s * s;
      cplx z = ia + delta;
      cplx root = std::sqrt((z * z + e1sq) * delta * (z + ia));
      cplx guess = s < s_ref ? r_ref * (s / s_ref) : R_eval(z, b);
      cplx r = std::abs(root - guess) <= std::abs(root + guess) ? root : -root;
      return P(z) / r * (2.0 * d * s);
    }, 0.0, 1.0);
  };
  auto segment = [&](cplx z0, cplx z1) {
    cplx d = z1 - z0;
    return checked([&, d, z0](double s) {
      cplx z = z0 + d * s;
      return P(z) / R_eval(z, b) * d;
    }, 0.0, 1.0);
  };
  // Far tail along the ray through z1, in the inverted variable mu = |z1|/|z|.
  auto radial = [&](cplx z1, cplx end) {
    double big = std::abs(end) / std::abs(z1);
    return checked([&, z1](double mu) {
      cplx z = z1 / mu;
      return P(z) / R_eval(z, b) * z1 / (mu * mu);
    }, 1.0 / big, 1.0);
  };
  const double rmax = 4.0 * b.alpha;
  const bool far = std::abs(k) > rmax;
  const cplx z1 = far ? k * (rmax / std::abs(k)) : k;
  cplx total;
  if (k.real() == 0.0 && k.imag() < 0.0) {
    // The straight path would cross the cut; go round through a real waypoint.
    const cplx w(2.0 * b.alpha, 0.0);
    total = from_edge(w) + segment(w, z1);
  } else {
    total = from_edge(z1);
  }
  if (far) total += radial(z1, k);
  return total;
}

cplx cut_integral_boundary(double u, BoundarySide side, const BandParams& b,
                           const std::function<cplx(cplx)>& P, int nodes) {
  if (side == BoundarySide::Off) throw std::invalid_argument("cut_integral_boundary: side required");
  const double e1 = b.eta1, a = b.alpha;
  if (!(u >= -a && u <= a)) throw std::domain_error("cut_integral_boundary: |u| must not exceed alpha");
  auto piece = [&](double lo, double hi) -> cplx {
    if (!(hi > lo)) return 0.0;
    auto g = [&](double v) -> cplx {
      cplx z(0.0, v);
      return P(z) / R_eval(z, b, side);
    };
    // Path runs downwards: int_{hi}^{lo} ... i dv.
    return -kI * quad::endpoint_integral(g, lo, hi, nodes);
  };
  cplx total = piece(std::max(u, e1), a);
  if (u < e1) total += piece(std::max(u, -e1), e1);
  if (u < -e1) total += piece(u, -e1);
  return total;
}

cplx abel_A(cplx k, const BandParams& b) {
  const cplx c = b.alpha / (4.0 * kI * b.K);
  return cut_integral(k, b, [c](cplx) { return c; });
}

cplx abel_A_boundary(double u, BoundarySide side, const BandParams& b) {
  const cplx c = b.alpha / (4.0 * kI * b.K);
  return cut_integral_boundary(u, side, b, [c](cplx) { return c; });
}

double abel_A_pole(double kappa, const BandParams& b) {
  if (!(kappa > b.alpha)) throw std::domain_error("abel_A_pole: kappa must exceed alpha");
  double w = std::acosh(kappa / b.alpha);
  return -b.r_sign * b.alpha / (4.0 * b.K) * cosh_integral(b.alpha, b.eta1, w);
}

cplx phi_numerator(cplx z, double x, double t, const BandParams& b) {
  cplx z2 = z * z;
  double s = 0.5 * (b.eta1 * b.eta1 + b.alpha * b.alpha);
  return 12.0 * t * (z2 * z2 + s * z2 + b.c2) + x * (z2 + b.c0);
}

cplx phi(cplx k, double x, double t, const BandParams& b) {
  return cut_integral(k, b, [&](cplx z) { return phi_numerator(z, x, t, b); });
}

cplx phi_boundary(double u, BoundarySide side, double x, double t, const BandParams& b) {
  return cut_integral_boundary(u, side, b, [&](cplx z) { return phi_numerator(z, x, t, b); });
}

PhaseDerivatives phi_pole_parts(double kappa0, const BandParams& b) {
  if (!(kappa0 > b.alpha)) throw std::domain_error("phi_pole: kappa0 must exceed alpha");
  const cplx ik(0.0, kappa0);
  const cplx Rk = R_eval(ik, b);
  double ratio = specfun::complete_pi(b.eta1 * b.eta1 / (kappa0 * kappa0), b.m) / b.K;
  PhaseDerivatives d;
  d.phi0 = Rk * ratio / ik;
  d.phi2 = Rk * (4.0 * ik - 2.0 * (b.eta1 * b.eta1 + b.alpha * b.alpha) * ratio / ik);
  return d;
}

cplx phi_pole(double kappa0, double x, double t, const BandParams& b) {
  auto d = phi_pole_parts(kappa0, b);
  return x * d.phi0 + t * d.phi2;
}

double compute_delta(const BandParams& b, const Reflection& r, const double* kappa0, int nodes) {
  const double e1 = b.eta1, a = b.alpha;
  const double um = 0.5 * (e1 + a);
  const cplx c = R_eval(cplx(0.0, um), b, BoundarySide::Plus) / band_rho(um, b);
  const bool trivial_r = r.is_constant() && r.constant_value() == 1.0;
  if (trivial_r && !kappa0) return 0.0;
  auto L = [&](double u) {
    double v = r.log(u);
    if (kappa0) v += 2.0 * std::log((*kappa0 - u) / (*kappa0 + u));
    return v;
  };
  // J = int_0^{i eta1} ds / R(s) = i r_sign K / alpha.
  const cplx J = kI * static_cast<double>(b.r_sign) * b.K / a;
  auto eval = [&](int n) {
    cplx integral = quad::band_integral([&](double u) { return cplx(L(u)) * kI / c; }, e1, a, n);
    return (-kI / J * integral).real();
  };
  // A tabulated r is only C^1, so convergence can be algebraic; keep doubling.
  double d1 = eval(nodes);
  double d2 = eval(2 * nodes);
  for (int n = 2 * nodes; n < 32 * nodes && std::abs(d1 - d2) > 1e-10 * std::max(1.0, std::abs(d2));) {
    n *= 2;
    d1 = d2;
    d2 = eval(n);
  }
  if (std::abs(d1 - d2) > 1e-10 * std::max(1.0, std::abs(d2))) {
    throw AccuracyError("compute_delta: band quadrature not converged (" + std::to_string(d1) +
                        " vs " + std::to_string(d2) + ")");
  }
  return d2;
}

PhaseState phase_state(const Scenario& scn, double x, double t, const NumericOptions& opts) {
  if (!(t > 0.0)) throw std::domain_error("phase_state: t must be positive");
  const auto& gas = scn.gas;
  PhaseState ps;
  ps.x = x;
  ps.t = t;
  double alpha = solve_alpha(x / t, gas, opts.tol_root);
  ps.band = make_band(gas.eta1, alpha);
  const auto& b = ps.band;
  ps.Omega = kPi * alpha / b.K * (x - 2.0 * (gas.eta1 * gas.eta1 + alpha * alpha) * t);
  ps.Delta_minus = compute_delta(b, gas.r, nullptr, opts.band_nodes);
  if (scn.soliton) {
    ps.has_soliton = true;
    double k0 = scn.soliton->kappa0;
    ps.Delta_plus = compute_delta(b, gas.r, &k0, opts.band_nodes);
  } else {
    ps.Delta_plus = ps.Delta_minus;
  }
  return ps;
}

namespace {

struct FPieces {
  const PhaseState& ps;
  const Scenario& scn;
  FVariant variant;
  double kappa0 = 0.0;
  double delta = 0.0;
  cplx c_plus;  // R_+(iu) / rho(u), constant on the upper band

  FPieces(const PhaseState& p, const Scenario& s, FVariant v) : ps(p), scn(s), variant(v) {
    if (variant == FVariant::Plus) {
      if (!scn.soliton) throw std::invalid_argument("scalar_f: plus variant needs a trial soliton");
      kappa0 = scn.soliton->kappa0;
      delta = ps.Delta_plus;
    } else {
      delta = ps.Delta_minus;
    }
    const auto& b = ps.band;
    double um = 0.5 * (b.eta1 + b.alpha);
    c_plus = R_eval(cplx(0.0, um), b, BoundarySide::Plus) / band_rho(um, b);
  }

  cplx ell(cplx s) const {
    const cplx ik(0.0, kappa0);
    return std::log((ik - s) / (ik + s));
  }
  cplx h1(double u) const {
    cplx v = -scn.gas.r.log(u);
    if (variant == FVariant::Plus) v -= 2.0 * ell(cplx(0.0, u));
    return v;
  }
  cplx h2(double u) const {
    cplx v = scn.gas.r.log(u);
    if (variant == FVariant::Plus) v -= 2.0 * ell(cplx(0.0, -u));
    return v;
  }
  // R_+ on the lower band at -iu, relative to rho(u).
  cplx c_lower() const {
    const auto& b = ps.band;
    double um = 0.5 * (b.eta1 + b.alpha);
    return R_eval(cplx(0.0, -um), b, BoundarySide::Plus) / band_rho(um, b);
  }
  cplx I2(cplx k, int n) const {
    const auto& b = ps.band;
    const cplx cl = c_lower();
    return quad::band_integral(
        [&](double u) { return h2(u) * kI / (cl * (cplx(0.0, -u) - k)); }, b.eta1, b.alpha, n);
  }
  cplx I3(cplx k, int n) const {
    const auto& b = ps.band;
    if (delta == 0.0) return 0.0;
    return quad::gap_integral(
        [&](double v) { return -delta / (static_cast<double>(b.r_sign) * (cplx(0.0, v) - k)); },
        b.eta1, b.alpha, n);
  }
  cplx I1(cplx k, int n) const {
    const auto& b = ps.band;
    return quad::band_integral(
        [&](double u) { return h1(u) * kI / (c_plus * (cplx(0.0, u) - k)); }, b.eta1, b.alpha, n);
  }
  cplx prefactor(cplx k) const {
    if (variant == FVariant::Minus) return 1.0;
    const cplx ik(0.0, kappa0);
    return (k - ik) / (k + ik);
  }
};

}  // namespace

ScalarF scalar_f(cplx k, const PhaseState& ps, FVariant variant, const Scenario& scn, int nodes) {
  FPieces fp(ps, scn, variant);
  const auto& b = ps.band;
  auto exponent = [&](cplx kk) {
    cplx sum = fp.I1(kk, nodes) + fp.I2(kk, nodes) + fp.I3(kk, nodes);
    return R_eval(kk, b) / (2.0 * kPi * kI) * sum;
  };
  ScalarF out;
  out.value = fp.prefactor(k) * std::exp(exponent(k));
  if (variant == FVariant::Plus) {
    const cplx ik(0.0, fp.kappa0);
    out.f_prime_at_pole = std::exp(exponent(ik)) / (2.0 * ik);
  }
  return out;
}

cplx scalar_f_boundary(double u0, BoundarySide side, const PhaseState& ps, FVariant variant,
                       const Scenario& scn, int nodes) {
  const auto& b = ps.band;
  if (!(u0 > b.eta1 && u0 < b.alpha)) {
    throw std::domain_error("scalar_f_boundary: u must lie inside (eta1, alpha)");
  }
  FPieces fp(ps, scn, variant);
  const cplx k(0.0, u0);
  auto sigma = [&](double u) { return std::sqrt((u + b.eta1) * (b.alpha + u)); };
  const cplx h0 = fp.h1(u0);
  const double s0 = sigma(u0);
  cplx pv = quad::band_integral(
                [&](double u) { return (fp.h1(u) - h0 * sigma(u) / s0) / (u - u0); }, b.eta1,
                b.alpha, nodes) /
            fp.c_plus;
  // Plemelj: the left side of the upward band picks up +i pi H(k).
  const cplx H = h0 / R_eval(k, b, BoundarySide::Plus);
  const bool left = is_left(side, b);
  cplx c1 = pv + (left ? 1.0 : -1.0) * kPi * kI * H;
  cplx sum = c1 + fp.I2(k, nodes) + fp.I3(k, nodes);
  cplx E = R_eval(k, b, side) / (2.0 * kPi * kI) * sum;
  return fp.prefactor(k) * std::exp(E);
}

RhoValues rho_derivatives(double u, double x, double t, const BandParams& b, RhoPrefactor pref) {
  if (!(u > b.eta1 && u < b.alpha)) {
    throw std::domain_error("rho_derivatives: u must lie strictly inside (eta1, alpha)");
  }
  const cplx s(0.0, u);
  const cplx Rp = R_eval(s, b, BoundarySide::Plus);
  const cplx C = pref == RhoPrefactor::MinusOneOverPiI ? -1.0 / (kPi * kI) : 1.0 / (2.0 * kPi * kI);
  const cplx s2 = s * s;
  const double half = 0.5 * (b.eta1 * b.eta1 + b.alpha * b.alpha);
  RhoValues out;
  out.rho_x = C * (s2 + b.c0) / Rp;
  out.rho_t = C * 12.0 * (s2 * s2 + half * s2 + b.c2) / Rp;
  out.rho = x * out.rho_x + t * out.rho_t;
  return out;
}

}  // namespace sgas
