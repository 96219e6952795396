#include <doctest.h>

#include <cmath>

#include "sgas/scenario.hpp"

using namespace sgas;

namespace {
Scenario gas_only() {
  Scenario s;
  s.gas.eta1 = 0.25;
  s.gas.eta2 = 1.0;
  return s;
}
}  // namespace

TEST_CASE("norming constant") {
  CHECK(norming_constant(1.0, 0.0, 1) == 2.0);
  CHECK(std::abs(norming_constant(0.5, -1.0, -1) + std::exp(1.0)) < 1e-15);
  CHECK_THROWS_AS(norming_constant(2.0, 200.0, 1), std::range_error);
  // 4 e^{-800} only fits in log form.
  auto s = make_trial_soliton(2.0, 200.0, 1);
  CHECK(std::abs(s.log_abs_chi - (std::log(4.0) - 800.0)) < 1e-12);
  CHECK_THROWS_AS(s.chi(), std::range_error);
  CHECK(std::abs(s.center() - 200.0) < 1e-12);
  auto n = make_trial_soliton(2.0, -200.0, 1, ChiConvention::NegatedX0);
  CHECK(std::abs(n.log_abs_chi - (std::log(4.0) - 800.0)) < 1e-12);
  for (double chi : {3.5, -0.02, 1e-30}) {
    double k = 0.8;
    CHECK(std::abs(norming_constant(k, x0_of_chi(k, chi), chi > 0 ? 1 : -1) / chi - 1.0) < 1e-13);
  }
}

TEST_CASE("bare phase") {
  CHECK(bare_phase({0.0, 0.0}, 5.0, 3.0) == std::complex<double>(0.0, 0.0));
  auto v = bare_phase({0.0, 1.0}, 1.0, 1.0);
  CHECK(std::abs(v - std::complex<double>(0.0, -3.0)) < 1e-15);
  auto w = bare_phase({0.0, 0.7}, 2.0, 0.4);
  CHECK(w.real() == 0.0);
  CHECK(std::abs(w.imag() - (2.0 * 0.7 - 4.0 * 0.4 * 0.343)) < 1e-15);
  std::complex<double> k(0.3, -1.2);
  CHECK(std::abs(bare_phase(-k, 1.5, 0.2) + bare_phase(k, 1.5, 0.2)) < 1e-15);
}

TEST_CASE("region classification") {
  Scenario s = gas_only();
  CHECK(classify_region(s, 0.1, 1.0).sector == Sector::Left);
  CHECK(classify_region(s, 7.0, 1.0).sector == Sector::Right);
  CHECK(classify_region(s, 3.0, 1.0).sector == Sector::Middle);
  CHECK(classify_region(s, 3.0, 1.0).side == Side::None);
  CHECK(classify_region(s, 0.25, 1.0).sector == Sector::Transition);
  for (double t : {1.0, 10.0, 1000.0}) CHECK(classify_region(s, 3.0 * t, t).sector == Sector::Middle);
  CHECK_THROWS(classify_region(s, 1.0, 0.0));

  s.soliton = make_trial_soliton(2.0, -200.0, 1);
  // Free soliton centre at t = 5 is -200 + 16 * 5 = -120.
  CHECK(classify_region(s, -110.0, 5.0).side == Side::Plus);
  CHECK(classify_region(s, -130.0, 5.0).side == Side::Minus);
}

TEST_CASE("reflection amplitude") {
  auto r = Reflection::table({0.25, 0.5, 0.75, 1.0}, {1.0, 2.0, 1.5, 1.0});
  CHECK(r(0.5) == doctest::Approx(2.0));
  CHECK(r(0.6) > 1.5);
  CHECK_THROWS(r(1.2));
  CHECK_THROWS(Reflection::constant(0.0));
  CHECK_THROWS(Reflection::table({0.2, 0.1, 0.3, 0.4}, {1, 1, 1, 1}));
  GasSpec g;
  g.eta1 = 0.2;
  g.eta2 = 1.0;
  g.r = r;
  CHECK_THROWS(g.validate());  // table starts above eta1
}
