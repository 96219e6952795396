/** @file outer_model.hpp
 *  Leading-order asymptotics: theta-function outer matrix W0, elliptic
 *  background, Darboux dressing by the trial soliton.
 */
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "sgas/modulation.hpp"
#include "sgas/scenario.hpp"

namespace sgas {

using Mat2c = Eigen::Matrix2cd;

/// A denominator theta_3(A(k) +- 1/4) of W0 vanished: k sits on a model pole.
class ThetaPoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ((k - i alpha)/(k - i eta1))^{1/4} ((k + i eta1)/(k + i alpha))^{1/4}, -> 1 at infinity.
cplx gamma_quarter(cplx k, const BandParams& band);
/// Boundary value at iu on either band.
cplx gamma_quarter_boundary(double u, BoundarySide side, const BandParams& band);

/// (Omega + Delta^side) / (2 pi). Side::Plus uses Delta^+, anything else Delta^-.
double theta_shift(const PhaseState& ps, Side side);

/// W0 built from the Abel value, gamma and the shift D = (Omega + Delta)/(2 pi).
Mat2c outer_matrix_from(cplx abel, cplx gamma, double D, const BandParams& band);
Mat2c outer_matrix(cplx k, const PhaseState& ps, Side side);
/// W0 at iu (eta1 < |u| < alpha) from the given side of the band.
Mat2c outer_matrix_boundary(double u, BoundarySide bside, const PhaseState& ps, Side side);
/// W0(i kappa) for kappa > alpha, real valued.
Eigen::Matrix2d outer_matrix_pole(double kappa, const PhaseState& ps, Side side);

struct BackgroundShift {
  double x_plus = 0.0;
  double x_minus = 0.0;
};
/// x^(+-) = -K(m)(Delta^(+-) - pi)/(alpha pi), the offsets that put the dn
/// form below in phase with the theta ratio.
BackgroundShift background_shift(const PhaseState& ps);

/// (alpha + eta1) dn((alpha + eta1)(x - 2(eta1^2 + alpha^2)t - x^(side)), m1).
/// Checks agreement with the theta ratio form to 1e-10.
double q_background(const PhaseState& ps, Side side);
/// (alpha - eta1) theta3(0) theta3(1/2 + D) / (theta3(1/2) theta3(D)).
double q_background_theta(const PhaseState& ps, Side side);

struct OuterState {
  Side side = Side::Minus;
  double w11 = 0.0, w12 = 0.0, w21 = 0.0, w22 = 0.0;
  double Q = 0.0;
  double Q_kappa = 0.0;
  double X = 0.0;
  double Y = 0.0;
  double darbouxA = 0.0;
  double darbouxB = 0.0;
  double gamma = 0.0;     // gamma(i kappa0)
  double f_sq = 1.0;         // f(i kappa0)^2 (minus) or f'(i kappa0)^2 (plus)
  double log_chi_hat = 0.0;  // log|chi| + 2 Im phi(i kappa0)
};

/// Q^(side) as a function of kappa with the shift D held fixed.
double Q_of_kappa(double kappa, const PhaseState& ps, Side side);
/// d Q / d kappa0: central differences, step 1e-5 kappa0, one Richardson step.
double Q_kappa(double kappa0, const PhaseState& ps, Side side);
/// The product-of-dn closed form of Q^(-).
double Q_minus_closed(double kappa0, const PhaseState& ps);

OuterState outer_state(const Scenario& scn, const PhaseState& ps, Side side,
                       const NumericOptions& opts = {});

/// (2(1 - Q^2) X + 4 Q Y) / (X^2 + Y^2), robust for |X| -> infinity.
double q_soliton_part(const OuterState& st);

/// Max-norm residual of the residue condition at i kappa0 satisfied by the
/// Darboux-dressed W (minus side).
double darboux_residue_residual(const Scenario& scn, const PhaseState& ps,
                                const NumericOptions& opts = {});

struct AsymptoticValue {
  RegionTag tag;
  double q_bg = 0.0;
  double q_sol = 0.0;
  double q = 0.0;
};

/// q_bg + q_sol in S_M and S_R, the free soliton (or 0) in S_L. Throws
/// std::domain_error inside the transition bands.
AsymptoticValue q_asymptotic_parts(const Scenario& scn, double x, double t,
                                   const NumericOptions& opts = {});
double q_asymptotic(const Scenario& scn, double x, double t, const NumericOptions& opts = {});

}  // namespace sgas
