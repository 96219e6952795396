#include "sgas/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <memory>
#include <stdexcept>

namespace sgas::quad {

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
      table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
            &gsl_integration_glfixed_table_free);
  if (!table) throw std::runtime_error("gauss_legendre: table allocation failed");
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double xi = 0.0, wi = 0.0;
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &xi, &wi, table.get());
    r.x[i] = xi;
    r.w[i] = wi;
  }
  return r;
}

std::complex<double> endpoint_integral(const std::function<std::complex<double>(double)>& g,
                                       double a, double b, int n) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Rule r = gauss_legendre(n, -0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
  std::complex<double> sum{};
  for (int i = 0; i < n; ++i) {
    double th = r.x[i];
    sum += r.w[i] * g(mid + half * std::sin(th)) * (half * std::cos(th));
  }
  return sum;
}

std::complex<double> adaptive(const std::function<std::complex<double>(double)>& g, double a,
                              double b, double tol, double* error) {
  double err = 0.0;
  auto val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, a, b, 25, tol, &err);
  if (error) *error = err;
  return val;
}

}  // namespace sgas::quad
