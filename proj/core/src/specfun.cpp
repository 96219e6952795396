#include "sgas/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sgas::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

void check_parameter(double m, const char* who) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw std::domain_error(std::string(who) + ": parameter m must lie in [0, 1)");
  }
}

// Carlson symmetric integrals by duplication.
double carlson_rf(double x, double y, double z) {
  for (int it = 0; it < 100; ++it) {
    double mu = (x + y + z) / 3.0;
    double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu;
    double err = std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
    if (err < 1e-4) {
      double e2 = dx * dy - dz * dz;
      double e3 = dx * dy * dz;
      return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(mu);
    }
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * sy + sx * sz + sy * sz;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
    z = (z + lam) / 4.0;
  }
  throw std::runtime_error("carlson_rf: no convergence");
}

double carlson_rc(double x, double y) {
  // y > 0 branch only; that is all the RJ recursion needs here.
  for (int it = 0; it < 100; ++it) {
    double mu = (x + 2.0 * y) / 3.0;
    double s = (y - mu) / mu;
    if (std::abs(s) < 1e-4) {
      return (1.0 + s * s * (3.0 / 10.0 + s * (1.0 / 7.0 + s * (3.0 / 8.0 + s * 9.0 / 22.0)))) /
             std::sqrt(mu);
    }
    double lam = 2.0 * std::sqrt(x) * std::sqrt(y) + y;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
  }
  throw std::runtime_error("carlson_rc: no convergence");
}

double carlson_rj(double x, double y, double z, double p) {
  double sum = 0.0;
  double fac = 1.0;
  for (int it = 0; it < 100; ++it) {
    double mu = (x + y + z + 2.0 * p) / 5.0;
    double dx = 1.0 - x / mu, dy = 1.0 - y / mu, dz = 1.0 - z / mu, dp = 1.0 - p / mu;
    double err = std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(dp)});
    if (err < 1e-4) {
      double ea = dx * (dy + dz) + dy * dz;
      double eb = dx * dy * dz;
      double ec = dp * dp;
      double e2 = ea - 3.0 * ec;
      double e3 = eb + 2.0 * dp * (ea - ec);
      double e4 = (2.0 * eb + dp * (ea - 3.0 * ec)) * dp;
      double e5 = eb * dp * dp;
      double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                      9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
      return 3.0 * sum + fac * series / (mu * std::sqrt(mu));
    }
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * sy + sx * sz + sy * sz;
    double alfa = p * (sx + sy + sz) + sx * sy * sz;
    alfa *= alfa;
    double beta = p * (p + lam) * (p + lam);
    sum += fac * carlson_rc(alfa, beta);
    fac /= 4.0;
    x = (x + lam) / 4.0;
    y = (y + lam) / 4.0;
    z = (z + lam) / 4.0;
    p = (p + lam) / 4.0;
  }
  throw std::runtime_error("carlson_rj: no convergence");
}

}  // namespace

KE complete_elliptic(double m) {
  check_parameter(m, "complete_elliptic");
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  double c2 = m;  // c_0^2
  double pow2 = 0.5;
  double sum = pow2 * c2;
  for (int it = 0; it < 64; ++it) {
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    double cn = 0.5 * (a - b);
    a = an;
    b = bn;
    pow2 *= 2.0;
    sum += pow2 * cn * cn;
    // Rounding leaves a - b at about eps; stop before 2^n amplifies it.
    if (std::abs(cn) <= 1e-15 * a) break;
  }
  double K = kPi / (2.0 * a);
  return {K, K * (1.0 - sum)};
}

double complete_pi(double n, double m) {
  check_parameter(m, "complete_pi");
  if (!(n < 1.0)) throw std::domain_error("complete_pi: characteristic n must be < 1");
  double y = 1.0 - m;
  double rf = carlson_rf(0.0, y, 1.0);
  if (n == 0.0) return rf;
  return rf + n / 3.0 * carlson_rj(0.0, y, 1.0, 1.0 - n);
}

SnCnDn jacobi_elliptic(double z, double m) {
  check_parameter(m, "jacobi_elliptic");
  if (!std::isfinite(z)) throw std::domain_error("jacobi_elliptic: non-finite argument");
  if (m == 0.0) return {std::sin(z), std::cos(z), 1.0};
  constexpr int kMax = 32;
  std::array<double, kMax + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int N = 0;
  while (N < kMax && std::abs(c[N]) > 1e-15 * a[N]) {
    a[N + 1] = 0.5 * (a[N] + b);
    c[N + 1] = 0.5 * (a[N] - b);
    b = std::sqrt(a[N] * b);
    ++N;
  }
  double phi = std::ldexp(a[N] * z, N);
  for (int n = N; n >= 1; --n) {
    phi = 0.5 * (phi + std::asin(c[n] * std::sin(phi) / a[n]));
  }
  double sn = std::sin(phi);
  double cn = std::cos(phi);
  // 1 - m sn^2 written without cancellation.
  double dn = std::sqrt((1.0 - m) + m * cn * cn);
  return {sn, cn, dn};
}

int theta3_terms(std::complex<double> tau) {
  double it = tau.imag();
  if (!(it > 0.0)) throw std::domain_error("theta3: Im tau must be positive");
  return static_cast<int>(std::ceil(std::sqrt(40.0 / (kPi * it)))) + 2;
}

std::complex<double> theta3(std::complex<double> z, std::complex<double> tau) {
  const int nbound = theta3_terms(tau);
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  // Move z into the strip |Im z| <= Im tau / 2 with the quasi-periodicity.
  double k = std::round(z.imag() / tau.imag());
  cd prefactor(1.0, 0.0);
  if (k != 0.0) {
    z -= k * tau;
    prefactor = std::exp(-I * kPi * k * k * tau - 2.0 * I * kPi * k * z);
  }
  cd sum(1.0, 0.0);
  for (int n = 1;; ++n) {
    double dn = static_cast<double>(n);
    cd term = 2.0 * std::exp(I * kPi * dn * dn * tau) * std::cos(2.0 * kPi * dn * z);
    sum += term;
    bool small = std::abs(term) < 1e-16 * std::abs(sum);
    if (n >= nbound && small) break;
    if (n > 4 * nbound + 50) break;
  }
  return prefactor * sum;
}

}  // namespace sgas::specfun
