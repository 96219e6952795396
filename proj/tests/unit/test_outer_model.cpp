#include <doctest.h>

#include <cmath>

#include "sgas/dynamics.hpp"
#include "sgas/fredholm.hpp"
#include "sgas/outer_model.hpp"
#include "sgas/specfun.hpp"

using namespace sgas;

namespace {
const cplx I(0.0, 1.0);

Scenario with_soliton() {
  Scenario s;
  s.soliton = make_trial_soliton(2.0, -200.0, 1);
  return s;
}
}  // namespace

TEST_CASE("gamma") {
  BandParams b = make_band(0.25, 0.8);
  CHECK(std::abs(gamma_quarter(I * 1e8, b) - 1.0) < 1e-8);
  CHECK(std::abs(std::pow(gamma_quarter(0.0, b), 4) - 1.0) < 1e-14);
  for (double k : {0.81, 1.5, 10.0}) {
    cplx g = gamma_quarter(I * k, b);
    CHECK(std::abs(g.imag()) < 1e-14);
    CHECK(g.real() > 0.0);
    CHECK(g.real() < 1.0);
  }
}

TEST_CASE("outer matrix") {
  Scenario s;
  PhaseState ps = phase_state(s, 3.0, 1.0);
  auto dev = [&](double L) { return (outer_matrix(I * L, ps, Side::None) - Mat2c::Identity()).norm(); };
  // W0 - I decays like 1/k.
  double e4 = dev(1e4), e6 = dev(1e6);
  CHECK(e6 < 1e-6);
  CHECK(e6 / e4 < 2e-2);
  for (cplx k : {cplx(0.3, 0.2), cplx(-1.0, 0.5), I * 1.7, cplx(0.05, 0.1)}) {
    CHECK(std::abs(outer_matrix(k, ps, Side::None).determinant() - 1.0) < 1e-10);
  }
  Mat2c J;
  J << 0.0, I, I, 0.0;
  const BandParams& b = ps.band;
  for (int i = 1; i < 6; ++i) {
    double u = b.eta1 + (b.alpha - b.eta1) * i / 6.0;
    Mat2c wp = outer_matrix_boundary(u, BoundarySide::Plus, ps, Side::None);
    Mat2c wm = outer_matrix_boundary(u, BoundarySide::Minus, ps, Side::None);
    CHECK((wp - wm * J).cwiseAbs().maxCoeff() <= 1e-7);
  }
  Eigen::Matrix2d wr = outer_matrix_pole(2.0, ps, Side::None);
  CHECK((wr.cast<cplx>() - outer_matrix(I * 2.0, ps, Side::None)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("elliptic background") {
  Scenario s;
  const double t = 10.0;
  // Fixed band alpha = eta2 beyond the front.
  PhaseState p0 = phase_state(s, 80.0, t);
  CHECK(p0.band.alpha == s.gas.eta2);
  const double a = p0.band.alpha, e = p0.band.eta1;
  const double period = 2.0 * specfun::complete_elliptic(p0.band.m1).K / (a + e);
  double hi = -1e9, lo = 1e9;
  for (int i = 0; i < 4000; ++i) {
    double x = 80.0 + period * i / 4000.0;
    PhaseState ps = phase_state(s, x, t);
    double q = q_background(ps, Side::None);
    CHECK(std::abs(q - q_background_theta(ps, Side::None)) < 1e-10);
    CHECK(std::abs(q_asymptotic(s, x, t) - q) < 1e-12);
    hi = std::max(hi, q);
    lo = std::min(lo, q);
  }
  CHECK(std::abs(hi - (a + e)) < 1e-5);
  CHECK(std::abs(lo - (a - e)) < 1e-5);

  // Near the quiescent edge the crest tends to 2 eta1.
  const double v = 4.0 * e * e + 1e-6;
  PhaseState pe = phase_state(s, v * t, t);
  CHECK(std::abs(pe.band.alpha + pe.band.eta1 - 2.0 * e) < 1e-2);
}

TEST_CASE("soliton dressing") {
  Scenario s = with_soliton();
  const double t = 20.0;
  for (double x : {70.0, 100.0}) {
    PhaseState ps = phase_state(s, x, t);
    OuterState st = outer_state(s, ps, Side::Minus);
    CHECK(st.Q < 0.0);
    CHECK(std::abs(st.Q - Q_minus_closed(s.soliton->kappa0, ps)) < 1e-9);
    CHECK(std::abs(q_soliton_part(st)) < 1e-6);  // far from the peak
    CHECK(darboux_residue_residual(s, ps) < 1e-8);
  }
  // Deep on the quiescent side, far from the soliton.
  CHECK(std::abs(q_asymptotic(s, -20.0, 10.0)) < 1e-8);
  // Inside the transition band.
  CHECK_THROWS_AS(q_asymptotic(s, 0.25 * 10.0, 10.0), std::domain_error);
}

TEST_CASE("peak value of the dressed soliton") {
  Scenario s = with_soliton();
  const double t = 16.0;
  PeakSample p = solve_peak(t, s);
  REQUIRE(p.branch == PeakBranch::Modulated);
  PhaseState ps = phase_state(s, p.x_peak, t);
  OuterState st = outer_state(s, ps, p.side);
  AsymptoticValue v = q_asymptotic_parts(s, p.x_peak, t);
  const double k0 = s.soliton->kappa0;
  CHECK(std::abs(v.q_sol - 2.0 * k0 * (1.0 + 2.0 * st.Q / (1.0 + st.Q * st.Q))) < 1e-6);
}

TEST_CASE("asymptotic against Fredholm") {
  Scenario s = with_soliton();
  const double t = 20.0, x = 60.0;
  CHECK(std::abs(q_asymptotic(s, x, t) - q_gas(s, x, t, 200)) <= 0.05);
}
