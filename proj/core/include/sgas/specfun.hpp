/** @file specfun.hpp
 *  Complete elliptic integrals (parameter convention), Jacobi elliptic
 *  functions and the third Jacobi theta function.
 */
#pragma once

#include <complex>

namespace sgas::specfun {

struct KE {
  double K;
  double E;
};

struct SnCnDn {
  double sn;
  double cn;
  double dn;
};

/// K(m) and E(m) for 0 <= m < 1 by the arithmetic-geometric mean.
KE complete_elliptic(double m);

/// Pi(n, m) = int_0^{pi/2} dtheta / ((1 - n sin^2) sqrt(1 - m sin^2)), n < 1.
double complete_pi(double n, double m);

/// sn, cn, dn of real argument by descending Landen transformation.
SnCnDn jacobi_elliptic(double z, double m);

/// theta_3(z; tau) = sum_n exp(2 pi i n z + pi i n^2 tau), Im tau > 0.
std::complex<double> theta3(std::complex<double> z, std::complex<double> tau);

/// Symmetric truncation bound used by theta3 before any argument shift.
int theta3_terms(std::complex<double> tau);

}  // namespace sgas::specfun
