/** @file quadrature.hpp
 *  Quadrature rules shared by the band, gap and Nystrom integrals.
 */
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace sgas::quad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule with n points mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

/// int_{lo}^{hi} F(u) du / sqrt((u^2 - lo^2)(hi^2 - u^2)) with Gauss-Chebyshev
/// nodes on u = lo + (hi - lo)(1 + cos psi)/2. Exact for the inverse square
/// root endpoint behaviour; spectral for smooth F.
template <class F>
auto band_integral(F&& f, double lo, double hi, int n) -> decltype(f(0.0)) {
  using T = decltype(f(0.0));
  T sum{};
  const double h = std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    double psi = (j + 0.5) * h;
    double u = lo + 0.5 * (hi - lo) * (1.0 + std::cos(psi));
    double sigma = std::sqrt((u + lo) * (hi + u));
    sum += f(u) / sigma;
  }
  return sum * h;
}

/// int_{-e}^{e} F(v) dv / sqrt((e^2 - v^2)(a^2 - v^2)) with v = e cos psi.
template <class F>
auto gap_integral(F&& f, double e, double a, int n) -> decltype(f(0.0)) {
  using T = decltype(f(0.0));
  T sum{};
  const double h = std::numbers::pi / n;
  for (int j = 0; j < n; ++j) {
    double psi = (j + 0.5) * h;
    double v = e * std::cos(psi);
    sum += f(v) / std::sqrt(a * a - v * v);
  }
  return sum * h;
}

/// int_a^b g(v) dv for g with possible inverse square root singularities at
/// either endpoint; v = mid + half sin(theta) absorbs them.
std::complex<double> endpoint_integral(const std::function<std::complex<double>(double)>& g,
                                       double a, double b, int n);

/// Adaptive Gauss-Kronrod integral of a complex function on [a, b].
std::complex<double> adaptive(const std::function<std::complex<double>(double)>& g, double a,
                              double b, double tol, double* error = nullptr);

}  // namespace sgas::quad
