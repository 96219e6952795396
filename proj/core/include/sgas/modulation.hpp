/** @file modulation.hpp
 *  Whitham modulation of the band edge, the genus-one data built on it
 *  (R, Abel map, phase phi, scalar f, Delta) and the density rho.
 */
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include "sgas/scenario.hpp"

namespace sgas {

using cplx = std::complex<double>;

/// Numerical knobs shared by the solvers.
struct NumericOptions {
  int band_nodes = 256;
  int fredholm_nodes = 200;
  double tol_quad = 1e-10;
  double tol_root = 1e-12;
  double max_exponent = 250.0;
};

/// Raised when a quadrature fails its own refinement check.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double whitham_W(double m);
double front_speed_v2(const GasSpec& gas);
/// Root alpha in (eta1, eta2) of v = alpha^2 W(eta1^2/alpha^2); eta2 for v >= v2.
double solve_alpha(double v, const GasSpec& gas, double tol = 1e-12);

enum class BoundarySide { Off, Plus, Minus };

struct BandParams {
  double eta1 = 0.0;
  double alpha = 0.0;
  double m = 0.0;
  double m1 = 0.0;
  double K = 0.0;
  double E = 0.0;
  double Kc = 0.0;  // K(1 - m)
  double c0 = 0.0;
  double c2 = 0.0;
  cplx tau;
  int r_sign = 1;             // overall sign of R, fixed by A(inf) = -1/4
  bool plus_is_left = true;   // which geometric side of the upward band is "+"
};

/// Builds the band and fixes the R branch from the two Abel-map values.
BandParams make_band(double eta1, double alpha);

/// R(k) = sqrt((k^2 + eta1^2)(k^2 + alpha^2)) with R ~ k^2 at infinity. With a
/// side, k must be iu on either band and the boundary value is returned.
cplx R_eval(cplx k, const BandParams& band, BoundarySide side = BoundarySide::Off);

/// int_{i alpha}^{k} P(z) dz / R(z) along a path that avoids [-i alpha, i alpha].
cplx cut_integral(cplx k, const BandParams& band, const std::function<cplx(cplx)>& P,
                  double tol = 1e-13);
/// Same integral to the boundary point iu (|u| < alpha) from the given side.
cplx cut_integral_boundary(double u, BoundarySide side, const BandParams& band,
                           const std::function<cplx(cplx)>& P, int nodes = 160);

cplx abel_A(cplx k, const BandParams& band);
cplx abel_A_boundary(double u, BoundarySide side, const BandParams& band);
/// A(i kappa) for kappa > alpha (real), by a smooth substitution.
double abel_A_pole(double kappa, const BandParams& band);

/// N(z) with phi'(z) = N(z)/R(z).
cplx phi_numerator(cplx z, double x, double t, const BandParams& band);
cplx phi(cplx k, double x, double t, const BandParams& band);
cplx phi_boundary(double u, BoundarySide side, double x, double t, const BandParams& band);
/// Closed elliptic form at k = i kappa0 (purely imaginary).
cplx phi_pole(double kappa0, double x, double t, const BandParams& band);

struct PhaseDerivatives {
  cplx phi0;  // d phi / dx
  cplx phi2;  // d phi / dt
};
/// phi = x phi0 + t phi2 at i kappa0, closed form.
PhaseDerivatives phi_pole_parts(double kappa0, const BandParams& band);

struct PhaseState {
  BandParams band;
  double x = 0.0;
  double t = 0.0;
  double Omega = 0.0;
  double Delta_minus = 0.0;
  double Delta_plus = 0.0;
  bool has_soliton = false;
};

/// Delta^- (no kappa0 term) or Delta^+ (with it); checked by node doubling.
double compute_delta(const BandParams& band, const Reflection& r, const double* kappa0,
                     int nodes);
PhaseState phase_state(const Scenario& scn, double x, double t,
                       const NumericOptions& opts = {});

enum class FVariant { Minus, Plus };

struct ScalarF {
  cplx value;
  cplx f_prime_at_pole;  // plus variant only
};

ScalarF scalar_f(cplx k, const PhaseState& ps, FVariant variant, const Scenario& scn,
                 int nodes = 256);
/// Boundary value of f at k = iu, eta1 < u < alpha, via the Plemelj formula.
cplx scalar_f_boundary(double u, BoundarySide side, const PhaseState& ps, FVariant variant,
                       const Scenario& scn, int nodes = 256);

/// Prefactor conventions for rho. MinusOneOverPiI reproduces g = phi - x k - 4tk^3.
enum class RhoPrefactor { MinusOneOverPiI, OneOverTwoPiI };

struct RhoValues {
  cplx rho;
  cplx rho_x;
  cplx rho_t;
};

RhoValues rho_derivatives(double u, double x, double t, const BandParams& band,
                          RhoPrefactor pref = RhoPrefactor::MinusOneOverPiI);

}  // namespace sgas
