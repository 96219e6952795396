#include <doctest.h>

#include <cmath>

#include "sgas/dynamics.hpp"
#include "sgas/specfun.hpp"

using namespace sgas;

namespace {
const cplx I(0.0, 1.0);

Scenario standard() {
  Scenario s;
  s.soliton = make_trial_soliton(2.0, -200.0, 1);
  return s;
}
}  // namespace

TEST_CASE("velocities") {
  BandParams b = make_band(0.25, 1.0);
  CHECK(std::abs(v_background(b) - 2.0 * (0.0625 + 1.0)) < 1e-15);
  CHECK(std::abs(v_phase_edge(b) - v_background(b)) < 1e-8);

  double vq = (-phi(I * 2.0, 0.0, 1.0, b) / phi(I * 2.0, 1.0, 0.0, b)).real();
  CHECK(std::abs(v_bar_sol(2.0, b) - vq) < 1e-8);
  CHECK(std::abs(v_phase(I * 2.0, b).real() - vq) < 1e-8);

  const double k0 = 1e3;
  double ratio = (v_bar_sol(k0, b) - v_background(b)) / (4.0 * k0 * k0);
  CHECK(std::abs(ratio - 1.0) < 1e-4);

  BandParams thin = make_band(0.25, 0.25 * (1.0 + 1e-7));
  CHECK(std::isfinite(v_bar_sol(2.0, thin)));
  KineticReport kr = kinetic_residuals_band(2.0, thin, 64);
  CHECK(std::isfinite(kr.residual_soliton_eq));
  CHECK(std::isfinite(kr.residual_group_eq));
}

TEST_CASE("kinetic equation residuals") {
  for (double k0 : {1.5, 2.0, 3.0}) {
    for (double a : {0.5, 0.8, 1.0}) {
      KineticReport r = kinetic_residuals_band(k0, make_band(0.25, a));
      CHECK(r.residual_soliton_eq <= 1e-6 * std::abs(r.v_bar));
      CHECK(r.residual_group_eq <= 1e-6);
    }
  }
}

TEST_CASE("phase shift") {
  for (double a : {0.4, 0.8}) {
    BandParams b = make_band(0.25, a);
    for (double k0 : {1.2, 2.0}) {
      PhaseShift ps = phase_shift(k0, b);
      CHECK(std::abs(ps.closed - ps.via_delta) <= 1e-8);
      double width = 2.0 * specfun::complete_elliptic(b.m1).K / (a + 0.25);
      CHECK(ps.closed < 0.0);
      CHECK(ps.closed > -width);
    }
    CHECK(std::abs(phase_shift(1e4, b).closed) < 1e-3);
  }
}

TEST_CASE("critical kappa") {
  const double a = 0.9;
  CHECK(std::abs(kappa_crit(make_band(a * 1e-4, a)) - a) < 1e-6);
  CHECK(std::abs(kappa_crit(make_band(a * (1.0 - 1e-7), a)) - a * (1.0 + std::sqrt(5.0)) / 2.0) < 1e-4);
  for (double e : {0.1, 0.3, 0.6, 0.85}) CHECK(kappa_crit(make_band(e, a)) > a);
}

TEST_CASE("entry time and the quiescent branch") {
  Scenario s = standard();
  const double t1 = entry_time(s);
  CHECK(std::abs(t1 - 200.0 / 15.75) < 1e-12);

  Scenario fast;
  fast.soliton = make_trial_soliton(1e3, -200.0, 1);
  CHECK(entry_time(fast) > 0.0);
  CHECK(entry_time(fast) < 1e-3);

  PeakSample p = solve_peak(t1 / 2.0, s);
  CHECK(p.branch == PeakBranch::Quiescent);
  CHECK(p.x_peak == doctest::Approx(-200.0 + 16.0 * t1 / 2.0).epsilon(1e-14));
  CHECK(std::abs(p.amplitude - 4.0) < 1e-9);
  CHECK(peak_velocity(t1 / 2.0, s) == doctest::Approx(16.0));
}

TEST_CASE("modulated branch") {
  Scenario s = standard();
  double prev = -1e9;
  for (double t : {13.5, 15.0, 16.5, 18.0}) {
    PeakSample p = solve_peak(t, s);
    CHECK(p.branch == PeakBranch::Modulated);
    CHECK(p.x_peak > prev);
    prev = p.x_peak;
    AsymptoticValue v = q_asymptotic_parts(s, p.x_peak, t);
    CHECK(p.amplitude >= v.q_bg - 1e-9);
    CHECK(p.amplitude <= v.q_bg + 4.0 * s.soliton->kappa0);
    PhaseState ps = phase_state(s, p.x_peak, t);
    CHECK(p.amplitude >= ps.band.alpha - ps.band.eta1);
    CHECK(std::abs(peak_function(s, p.x_peak, t)) < 1e-6);
  }
}

TEST_CASE("fixed-band branch and averages") {
  Scenario s = standard();
  auto ee = entry_exit_times(s);
  CHECK(std::abs(ee.t1 - 200.0 / 15.75) < 1e-9);
  CHECK(ee.t2 > ee.t1);
  CHECK(std::abs(ee.t2 - 19.2527) < 1e-3);

  const double t = 50.0;
  CHECK(solve_peak(t, s).branch == PeakBranch::FixedBand);
  BandParams b = make_band(0.25, 1.0);
  const double vbar = v_bar_sol(2.0, b);
  CHECK(std::abs(vbar - 17.9985) < 1e-3);
  const double T = peak_period(t, s);
  CHECK(std::abs(T - 0.20112) < 1e-4);
  CHECK(std::abs(average_peak_velocity(t, s) - vbar) < 0.05);

  double hi = -1e9, lo = 1e9;
  for (int i = 0; i < 16; ++i) {
    double v = peak_velocity(t + T * i / 16.0, s);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  CHECK(hi > vbar);
  CHECK(lo < vbar);
}

TEST_CASE("characteristic frame") {
  Scenario s = standard();
  CharacteristicFrame f = characteristic_frame(s, 60.0, 20.0);
  CHECK(f.tau == 20.0);
  PhaseState ps = phase_state(s, 60.0, 20.0);
  CHECK(std::abs(f.s - (ps.Omega + ps.Delta_minus)) < 1e-12);
  CHECK(std::isfinite(f.ds_dx));
}
