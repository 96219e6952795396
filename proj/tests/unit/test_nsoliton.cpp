#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sgas/nsoliton.hpp"

using namespace sgas;

namespace {
double sech(double z) { return 1.0 / std::cosh(z); }

// Golden-section maximum of f on [a, b].
template <class F>
double argmax(F f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d, d = c, fd = fc, c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd, d = a + g * (b - a), fd = f(d);
    }
  }
  return 0.5 * (a + b);
}
}  // namespace

TEST_CASE("soliton matrix entries") {
  auto s = SolitonSet::from_chis({1.0}, {2.0});
  auto m = soliton_matrix(s, 0.0, 0.0);
  CHECK(std::abs(m.A(0, 0) - 1.0) < 1e-15);

  auto two = SolitonSet::from_chis({0.4, 0.9}, {0.7, 1.3});
  auto a = soliton_matrix(two, 0.3, 0.1).A;
  CHECK(a(0, 1) == a(1, 0));
  CHECK(soliton_matrix(two, -1000.0, 0.0).A.cwiseAbs().maxCoeff() < 1e-150);

  CHECK_THROWS_AS(SolitonSet::from_chis({0.5, 0.5}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SolitonSet::from_chis({0.5}, {0.0}), std::invalid_argument);
}

TEST_CASE("exponent guard") {
  auto s = SolitonSet::from_chis({0.5, 1.0}, {1.0, 1.0});
  try {
    soliton_matrix(s, 300.0, 0.0, 250.0);
    FAIL("guard did not fire");
  } catch (const GuardError& e) {
    CHECK(e.index() == 1);
    CHECK(e.exponent() == doctest::Approx(300.0));
  }
  CHECK_NOTHROW(soliton_matrix(s, 300.0, 0.0, 400.0));
}

TEST_CASE("one soliton, all methods") {
  const double k = 1.3, chi = 0.6;
  const double x0 = std::log(2.0 * k / chi) / (2.0 * k);
  auto s = SolitonSet::from_chis({k}, {chi});
  for (double t : {0.0, 0.4}) {
    for (double x = -3.0; x <= 6.0; x += 0.37) {
      double ref = 2.0 * k * sech(2.0 * k * (x - 4.0 * k * k * t - x0));
      CHECK(std::abs(q_exact(s, x, t, QMethod::Sum) - ref) < 1e-12);
      CHECK(std::abs(q_exact(s, x, t, QMethod::LogDet) - ref) < 1e-10);
      CHECK(std::abs(q_exact(s, x, t, QMethod::Squared) - ref * ref) < 1e-9);
    }
  }
  double xp = argmax([&](double x) { return q_exact(s, x, 0.25); }, -2.0, 5.0);
  CHECK(std::abs(xp - (x0 + 4.0 * k * k * 0.25)) < 1e-6);
  CHECK(std::abs(q_exact(s, xp, 0.25) - 2.0 * k) < 1e-12);
}

TEST_CASE("anti-soliton") {
  auto s = SolitonSet::from_chis({0.8}, {-1.1});
  double xm = argmax([&](double x) { return -q_exact(s, x, 0.0); }, -5.0, 5.0);
  CHECK(std::abs(q_exact(s, xm, 0.0) + 1.6) < 1e-12);
  CHECK_THROWS_AS(q_exact(s, 0.0, 0.0, QMethod::LogDet), std::invalid_argument);
}

TEST_CASE("two-soliton phase shift of the small soliton") {
  const double k1 = 0.25, k2 = 1.0;
  const double chi1 = 25.0 / (std::pow(2.0, 0.25) * 9.0 * std::exp(5.0));
  auto s = SolitonSet::from_chis({k1, k2}, {chi1, 2.0});
  const double shift = std::log((k2 + k1) / (k2 - k1)) / k1;
  // Before the collision the fast soliton sits to the left and the small one
  // moves on the centre of the reduced constant chi1 ((k2 - k1)/(k2 + k1))^2.
  const double red = (k2 - k1) / (k2 + k1);
  const double x_in = std::log(2.0 * k1 / (chi1 * red * red)) / (2.0 * k1);
  for (double t : {-12.0, 7.073}) {
    const double expect = 4.0 * k1 * k1 * t + x_in - (t > 0 ? shift : 0.0);
    double xp = argmax([&](double x) { return q_exact(s, x, t); }, expect - 1.5, expect + 1.5);
    CHECK(std::abs(xp - expect) < 1e-2);
    CHECK(std::abs(q_exact(s, xp, t) - 2.0 * k1) < 1e-2);
  }
}

TEST_CASE("mKdV residual of a three-soliton solution") {
  auto s = SolitonSet::from_chis({0.5, 0.9, 1.4}, {0.8, 1.5, 3.0});
  const double h = 1e-2, k = 1e-3, t = 0.05;
  auto q = [&](double x, double tt) { return q_exact(s, x, tt); };
  // Fourth-order central differences.
  for (double x : {-1.0, 0.2, 1.1}) {
    double qt = (-q(x, t + 2 * k) + 8 * q(x, t + k) - 8 * q(x, t - k) + q(x, t - 2 * k)) / (12 * k);
    double qx = (-q(x + 2 * h, t) + 8 * q(x + h, t) - 8 * q(x - h, t) + q(x - 2 * h, t)) / (12 * h);
    double qxxx = (-q(x + 3 * h, t) + 8 * q(x + 2 * h, t) - 13 * q(x + h, t) + 13 * q(x - h, t) -
                   8 * q(x - 2 * h, t) + q(x - 3 * h, t)) / (8 * h * h * h);
    double v = q(x, t);
    CHECK(std::abs(qt + 6 * v * v * qx + qxxx) < 1e-4);
  }
}

TEST_CASE("determinant of I + A^2") {
  auto s = SolitonSet::from_chis({0.3, 0.7}, {0.5, 0.9});
  auto a = soliton_matrix(s, 0.4, 0.0).A;
  double direct = (1 + a(0, 0) * a(0, 0) + a(0, 1) * a(1, 0)) * (1 + a(1, 1) * a(1, 1) + a(1, 0) * a(0, 1)) -
                  (a(0, 0) * a(0, 1) + a(0, 1) * a(1, 1)) * (a(1, 0) * a(0, 0) + a(1, 1) * a(1, 0));
  CHECK(std::abs(det_I_plus_A2(s, 0.4, 0.0) - direct) < 1e-13);
}

TEST_CASE("deterministic gas sampling") {
  GasSpec g;
  auto one = sample_gas_solitons(1, g);
  CHECK(one.kappa[0] == doctest::Approx(0.625));
  CHECK(std::abs(std::exp(one.log_abs_chi[0]) - 0.75 / (2.0 * std::numbers::pi)) < 1e-15);
  auto four = sample_gas_solitons(4, g);
  const double expect[] = {0.34375, 0.53125, 0.71875, 0.90625};
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(four.kappa[j] - expect[j]) < 1e-15);
    CHECK(four.sign[j] == 1);
  }
  CHECK(four.all_positive());
  CHECK_THROWS(sample_gas_solitons(0, g));
}
