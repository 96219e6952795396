/** @file fredholm.hpp
 *  Nystrom discretization of the gas operator (band nodes plus an optional
 *  trial-soliton pole node) and the potentials read off its determinants.
 */
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "sgas/modulation.hpp"
#include "sgas/nsoliton.hpp"
#include "sgas/scenario.hpp"

namespace sgas {

/// Nodes u_j with log weights le_j; B_{jl} = s_j sqrt(e_j e_l) / (u_j + u_l).
/// For mKdV e_j = w_j r(u_j) e^{2(x u_j - 4t u_j^3)} / (2 pi) on the band and
/// |chi| e^{2(x k0 - 4t k0^3)} on the pole node.
struct DiscretizedOperator {
  std::vector<double> nodes;
  std::vector<double> weights;  // quadrature weights; 1 on pole nodes
  /// log of the x,t independent factor: w_j r(u_j) / (2 pi), or |chi| on a pole.
  std::vector<double> log_pref;
  std::vector<double> log_e;
  std::vector<int> sign;
  std::optional<int> pole_index;
  bool kdv = false;  // weights e^{-2(x u + 4t u^3)} instead of e^{2(x u - 4t u^3)}
  double x = 0.0;
  double t = 0.0;

  int size() const { return static_cast<int>(nodes.size()); }
  /// max_j le_j / 2, the quantity checked by the exponent guard.
  double max_log_entry() const;
  /// Dense B in double precision; entries below the double range are zero.
  Eigen::MatrixXd B() const;
  /// d/dx B = U B + B U for the mKdV weights.
  Eigen::MatrixXd dB() const;
};

/// Band nodes by Gauss-Legendre (n >= 8), plus the pole node when the scenario
/// carries a trial soliton. Throws GuardError if max le_j/2 > max_exponent.
DiscretizedOperator discretize_operator(const Scenario& scn, double x, double t, int n,
                                        double max_exponent = 250.0);
/// Pole nodes only; the matrix coincides with soliton_matrix.
DiscretizedOperator discretize_poles(const SolitonSet& s, double x, double t,
                                     double max_exponent = 250.0);
/// Same nodes with the KdV weights e^{-2(x u + 4t u^3)}.
DiscretizedOperator discretize_operator_kdv(const Scenario& scn, double x, double t, int n,
                                            double max_exponent = 250.0);

/// Working precision in bits picked for a potential evaluation; 53 means double.
int fredholm_precision_bits(const DiscretizedOperator& op);

/// q = 2 d/dx Im log det(I + iB), evaluated on a rescaled matrix that keeps
/// large weights bounded; switches to MPFR when the weights are large.
double q_from_operator(const DiscretizedOperator& op);
/// q^2 = d^2/dx^2 log det(I + B^2).
double q_squared_from_operator(const DiscretizedOperator& op);
/// -2 d^2/dx^2 log det(I + B) for the KdV weights.
double q_kdv_from_operator(const DiscretizedOperator& op);
/// 2 sum_n lambda_n' / (1 + lambda_n^2) over the eigenpairs of symmetric B.
double q_eigen_from_operator(const DiscretizedOperator& op);

double q_gas(const Scenario& scn, double x, double t, int n = 200, double max_exponent = 250.0);
double q_gas_squared(const Scenario& scn, double x, double t, int n = 200,
                     double max_exponent = 250.0);
double q_kdv(const Scenario& scn, double x, double t, int n = 200, double max_exponent = 250.0);

struct DeterminantIdentity {
  std::complex<double> det_plus;   // det(I + iB)
  std::complex<double> det_minus;  // det(I - iB)
  double det_square = 0.0;         // det(I + B^2)
  double relative_residual = 0.0;
};
DeterminantIdentity determinant_identity(const DiscretizedOperator& op);

}  // namespace sgas
