#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "sgas/modulation.hpp"
#include "sgas/specfun.hpp"

using namespace sgas;

namespace {
const cplx I(0.0, 1.0);

GasSpec gas() { return GasSpec{}; }

Scenario gas_scn() { return Scenario{}; }

Reflection bumpy() {
  std::vector<double> u, r;
  for (int i = 0; i <= 150; ++i) {
    double v = 0.25 + 0.75 * i / 150.0;
    u.push_back(v);
    r.push_back(1.0 + 0.5 * std::sin(4.0 * v));
  }
  return Reflection::table(u, r);
}
}  // namespace

TEST_CASE("Whitham velocity") {
  CHECK(std::abs(whitham_W(1e-12) - 6.0) < 1e-9);
  CHECK(std::abs(whitham_W(1.0 - 1e-12) - 4.0) < 1e-6);
  CHECK(std::abs(whitham_W(0.0625) - 5.99698) < 1e-5);
  CHECK(std::abs(front_speed_v2(gas()) - 5.99698) < 1e-5);
  GasSpec thin;
  thin.eta1 = 1e-7;
  thin.eta2 = 1.0;
  CHECK(std::abs(front_speed_v2(thin) - 6.0) < 1e-9);
  GasSpec narrow;
  narrow.eta1 = 1.0 - 1e-9;
  narrow.eta2 = 1.0;
  CHECK(std::abs(front_speed_v2(narrow) - 4.0) < 1e-5);
}

TEST_CASE("band edge alpha(x/t)") {
  GasSpec g = gas();
  CHECK(std::abs(solve_alpha(0.25 + 1e-9, g) - 0.25) < 1e-3);
  CHECK(solve_alpha(front_speed_v2(g), g) == g.eta2);
  CHECK(solve_alpha(9.0, g) == g.eta2);
  double a = solve_alpha(3.0, g);
  CHECK(a > g.eta1);
  CHECK(a < g.eta2);
  CHECK(std::abs(a * a * whitham_W(g.eta1 * g.eta1 / (a * a)) - 3.0) < 1e-10);
  CHECK_THROWS_AS(solve_alpha(0.2, g), std::domain_error);
}

TEST_CASE("band parameters and R") {
  BandParams b = make_band(0.25, 0.8);
  CHECK(std::abs(b.m - 0.25 * 0.25 / 0.64) < 1e-15);
  CHECK(std::abs(b.K - specfun::complete_elliptic(b.m).K) < 1e-14);
  CHECK(std::abs(b.m1 - 4.0 * 0.8 * 0.25 / (1.05 * 1.05)) < 1e-14);

  const double L = 1e4;
  CHECK(std::abs(R_eval(I * L, b) / (-L * L) - 1.0) < 1e-6);
  CHECK(std::abs(std::pow(R_eval(0.0, b), 2) - 0.04) < 1e-14);
  cplx rk = R_eval(I * 2.0, b);
  CHECK(std::abs(rk.imag()) < 1e-14);
  CHECK(std::abs(rk.real() * rk.real() - (4.0 - 0.64) * (4.0 - 0.0625)) < 1e-12);
  cplx z(0.3, 0.5);
  CHECK(std::abs(R_eval(z, b) * R_eval(z, b) - (z * z + 0.0625) * (z * z + 0.64)) < 1e-13);
  CHECK_THROWS_AS(R_eval(I * 0.5, b), std::domain_error);
  CHECK_THROWS_AS(make_band(0.5, 0.4), std::domain_error);
}

TEST_CASE("Abel map") {
  BandParams b = make_band(0.25, 0.8);
  CHECK(std::abs(abel_A(I * 1e6, b) + 0.25) < 1e-6);
  CHECK(std::abs(abel_A_boundary(0.25, BoundarySide::Plus, b) + b.tau / 2.0) < 1e-8);
  CHECK(std::abs(abel_A_boundary(0.8, BoundarySide::Plus, b)) < 1e-12);
  for (double k : {0.9, 1.5, 4.0}) {
    CHECK(std::abs(abel_A_pole(k, b) - abel_A(I * k, b).real()) < 1e-10);
  }
}

TEST_CASE("phase function") {
  Scenario s = gas_scn();
  PhaseState ps = phase_state(s, 3.0, 1.0);
  const BandParams& b = ps.band;
  CHECK(std::abs(phi_boundary(b.alpha, BoundarySide::Plus, 3.0, 1.0, b)) < 1e-12);
  double worst_band = 0.0, worst_gap = 0.0;
  for (int i = 1; i < 10; ++i) {
    double u = b.eta1 + (b.alpha - b.eta1) * i / 10.0;
    worst_band = std::max(worst_band, std::abs(phi_boundary(u, BoundarySide::Plus, 3.0, 1.0, b) +
                                               phi_boundary(u, BoundarySide::Minus, 3.0, 1.0, b)));
    double v = b.eta1 * i / 10.0;
    worst_gap = std::max(worst_gap, std::abs(phi_boundary(v, BoundarySide::Plus, 3.0, 1.0, b) -
                                             phi_boundary(v, BoundarySide::Minus, 3.0, 1.0, b) +
                                             ps.Omega));
  }
  CHECK(worst_band <= 1e-9);
  CHECK(worst_gap <= 1e-9);

  for (double k0 : {1.2, 2.0}) {
    cplx closed = phi_pole(k0, 3.0, 1.0, b);
    CHECK(std::abs(closed.real()) < 1e-14);
    CHECK(std::abs(closed - phi(I * k0, 3.0, 1.0, b)) < 1e-9);
    auto parts = phi_pole_parts(k0, b);
    CHECK(std::abs(3.0 * parts.phi0 + parts.phi2 - closed) < 1e-10);
  }
  // phi - x k - 4 t k^3 = O(1/k) at infinity.
  auto g = [&](double L) {
    cplx k = I * L;
    return std::abs(phi(k, 3.0, 1.0, b) - 3.0 * k - 4.0 * k * k * k);
  };
  const double g20 = g(20.0), g40 = g(40.0);
  CHECK(g40 < 0.6 * g20);
  CHECK(g40 * 40.0 < 1.2 * g20 * 20.0);
}

TEST_CASE("Delta") {
  BandParams b = make_band(0.25, 0.7);
  CHECK(std::abs(compute_delta(b, Reflection::constant(1.0), nullptr, 256)) < 1e-14);
  const double k0 = 2.0;
  double d1 = compute_delta(b, Reflection::constant(1.0), &k0, 256) -
              compute_delta(b, Reflection::constant(1.0), nullptr, 256);
  double d2 = compute_delta(b, Reflection::constant(3.0), &k0, 256) -
              compute_delta(b, Reflection::constant(3.0), nullptr, 256);
  double d3 = compute_delta(b, bumpy(), &k0, 256) - compute_delta(b, bumpy(), nullptr, 256);
  CHECK(std::abs(d1 - d2) < 1e-10);
  CHECK(std::abs(d1 - d3) < 1e-10);
}

TEST_CASE("scalar function f") {
  Scenario s = gas_scn();
  PhaseState ps = phase_state(s, 3.0, 1.0);
  for (cplx k : {cplx(0.2, 0.9), I * 1.5, cplx(-0.4, 0.1)}) {
    CHECK(std::abs(scalar_f(k, ps, FVariant::Minus, s).value - 1.0) < 1e-14);
  }

  Scenario sb;
  sb.gas.r = bumpy();
  PhaseState pb = phase_state(sb, 3.0, 1.0);
  const BandParams& b = pb.band;
  for (int i = 1; i < 6; ++i) {
    double u = b.eta1 + (b.alpha - b.eta1) * i / 6.0;
    cplx fp = scalar_f_boundary(u, BoundarySide::Plus, pb, FVariant::Minus, sb);
    cplx fm = scalar_f_boundary(u, BoundarySide::Minus, pb, FVariant::Minus, sb);
    CHECK(std::abs(fp * fm - 1.0 / sb.gas.r(u)) <= 1e-8);
  }
  for (cplx k : {cplx(0.2, 0.9), cplx(0.5, -0.3)}) {
    cplx a = scalar_f(k, pb, FVariant::Minus, sb).value;
    cplx c = scalar_f(-k, pb, FVariant::Minus, sb).value;
    CHECK(std::abs(a * c - 1.0) < 1e-10);
  }
  cplx onaxis = scalar_f(I * 1.5, pb, FVariant::Minus, sb).value;
  CHECK(std::abs(onaxis.imag()) < 1e-12);
}

TEST_CASE("density rho") {
  BandParams b = make_band(0.25, 0.8);
  const double e = b.eta1, a = b.alpha;
  // Gap normalizations fixing c0 and c2, by an independent quadrature.
  boost::math::quadrature::tanh_sinh<double> ts;
  auto R = [&](double v) { return std::sqrt((e * e - v * v) * (a * a - v * v)); };
  double n0 = ts.integrate([&](double v) { return (b.c0 - v * v) / R(v); }, -e, e);
  double n2 = ts.integrate(
      [&](double v) { return (v * v * v * v - 0.5 * (e * e + a * a) * v * v + b.c2) / R(v); }, -e, e);
  CHECK(std::abs(n0) < 1e-9);
  CHECK(std::abs(n2) < 1e-9);

  for (int i = 1; i < 8; ++i) {
    double u = e + (a - e) * i / 8.0;
    RhoValues r = rho_derivatives(u, 2.0, 0.5, b);
    // rho_x comes out real with this prefactor.
    CHECK(std::abs(r.rho_x.imag()) < 1e-15);
    CHECK(std::abs(r.rho - (2.0 * r.rho_x + 0.5 * r.rho_t)) < 1e-14);
    double u2 = -u * u;
    double vg = -12.0 * (u2 * u2 + 0.5 * (e * e + a * a) * u2 + b.c2) / (u2 + b.c0);
    CHECK(std::abs(-r.rho_t.real() / r.rho_x.real() - vg) < 1e-9 * std::max(1.0, std::abs(vg)));
  }
  CHECK_THROWS_AS(rho_derivatives(0.1, 0.0, 0.0, b), std::domain_error);
}
