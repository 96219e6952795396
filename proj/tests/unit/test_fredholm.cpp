#include <doctest.h>

#include <cmath>

#include "sgas/fredholm.hpp"

using namespace sgas;

namespace {
double sech(double z) { return 1.0 / std::cosh(z); }

Scenario gas_scn(bool with_soliton) {
  Scenario s;
  if (with_soliton) s.soliton = make_trial_soliton(2.0, -200.0, 1);
  return s;
}
}  // namespace

TEST_CASE("pole-only operator matches the soliton matrix") {
  auto s = SolitonSet::from_chis({0.6, 1.1}, {0.9, 2.5});
  auto op = discretize_poles(s, 0.7, 0.05);
  auto a = soliton_matrix(s, 0.7, 0.05).A;
  CHECK((op.B() - a).cwiseAbs().maxCoeff() < 1e-14);
  for (double x : {-2.0, 0.0, 1.5}) {
    CHECK(std::abs(q_from_operator(discretize_poles(s, x, 0.05)) - q_exact(s, x, 0.05)) < 1e-10);
  }
}

TEST_CASE("soliton-only operator reproduces sech") {
  const double k = 2.0, chi = 1.7;
  const double x0 = std::log(2.0 * k / chi) / (2.0 * k);
  auto s = SolitonSet::from_chis({k}, {chi});
  for (double x = -1.0; x <= 2.0; x += 0.25) {
    double ref = 2.0 * k * sech(2.0 * k * (x - 4.0 * k * k * 0.01 - x0));
    auto op = discretize_poles(s, x, 0.01);
    CHECK(op.size() == 1);
    CHECK(std::abs(q_from_operator(op) - ref) < 1e-9);
    double sq = q_squared_from_operator(op);
    CHECK(std::abs(sq - ref * ref) < 1e-8);
    CHECK(sq >= 0.0);
    CHECK(std::abs(q_eigen_from_operator(op) - ref) < 1e-9);
  }
}

TEST_CASE("gas operator structure") {
  auto op = discretize_operator(gas_scn(false), 3.0, 1.0, 64);
  auto b = op.B();
  CHECK((b - b.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(!op.pole_index);
  Scenario near;
  near.soliton = make_trial_soliton(2.0, 0.0, 1);
  auto with = discretize_operator(near, 3.0, 1.0, 64);
  CHECK(with.size() == 65);
  CHECK(with.pole_index.has_value());
  auto id = determinant_identity(op);
  CHECK(id.relative_residual < 1e-12);
  CHECK(fredholm_precision_bits(op) == 53);
}

TEST_CASE("gas potential: self-convergence and square") {
  Scenario s = gas_scn(false);
  double q150 = q_gas(s, 3.0, 1.0, 150);
  double q300 = q_gas(s, 3.0, 1.0, 300);
  CHECK(std::abs(q150 - q300) <= 1e-8);
  for (double x : {1.0, 3.0, 5.0}) {
    double q = q_gas(s, x, 1.0, 120);
    CHECK(std::isfinite(q));
    CHECK(std::abs(q_gas_squared(s, x, 1.0, 120) - q * q) < 1e-9);
  }
  auto op = discretize_operator(s, 3.0, 1.0, 120);
  CHECK(std::abs(q_eigen_from_operator(op) - q_from_operator(op)) < 1e-9);
}

TEST_CASE("gas potential decays on the quiescent side") {
  Scenario s = gas_scn(false);
  const double t = 1.0, eta1 = s.gas.eta1;
  double prev = 0.0;
  for (double x : {-10.0, -20.0, -30.0}) {
    double scaled = std::abs(q_gas(s, x, t, 80)) / std::exp(2.0 * eta1 * (x - 4.0 * eta1 * eta1 * t));
    CHECK(scaled < 10.0);
    if (prev > 0.0) CHECK(scaled <= prev * 1.01);
    prev = scaled;
  }
}

TEST_CASE("KdV one soliton") {
  const double k = 0.8, chi = 1.2;
  auto op = discretize_poles(SolitonSet::from_chis({k}, {chi}), 0.0, 0.0);
  op.kdv = true;
  auto at = [&](double x) {
    op.x = x;
    op.log_e[0] = std::log(chi) - 2.0 * x * k;
    return q_kdv_from_operator(op);
  };
  // The pole weight equals 2k at the crest.
  const double xc = std::log(chi / (2.0 * k)) / (2.0 * k);
  CHECK(std::abs(std::abs(at(xc)) - 2.0 * k * k) < 1e-8);
  CHECK(std::abs(at(xc - 0.3)) < std::abs(at(xc)));
  CHECK(std::abs(at(xc - 30.0)) < 1e-15);

  Scenario s = gas_scn(false);
  CHECK(std::abs(q_kdv(s, 40.0, 0.0, 64)) < 1e-6);
}

TEST_CASE("exponent guard on the gas operator") {
  Scenario s = gas_scn(false);
  CHECK_THROWS_AS(discretize_operator(s, 400.0, 0.0, 32, 250.0), GuardError);
  CHECK_THROWS_AS(q_gas(s, 20.0, 0.0, 32, 5.0), GuardError);
}
