/** @file nsoliton.hpp
 *  Exact reflectionless N-soliton solutions of mKdV and the deterministic
 *  sampling of a gas band into finitely many solitons.
 */
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgas/scenario.hpp"

namespace sgas {

/// Overflow guard violation; carries the offending index and exponent.
class GuardError : public std::range_error {
 public:
  GuardError(const std::string& what, int index, double exponent)
      : std::range_error(what), index_(index), exponent_(exponent) {}
  int index() const { return index_; }
  double exponent() const { return exponent_; }

 private:
  int index_;
  double exponent_;
};

/// Poles i kappa_j with norming constants chi_j = sign_j exp(log_abs_chi_j).
struct SolitonSet {
  std::vector<double> kappa;
  std::vector<double> log_abs_chi;
  std::vector<int> sign;

  static SolitonSet from_chis(const std::vector<double>& kappas, const std::vector<double>& chis);
  int size() const { return static_cast<int>(kappa.size()); }
  bool all_positive() const;
  void validate() const;
};

struct SolitonMatrix {
  Eigen::MatrixXd A;
  double x = 0.0;
  double t = 0.0;
};

/// Log of the diagonal weight D_j^2 = |chi_j| e^{2(x kappa_j - 4 t kappa_j^3)}.
std::vector<double> soliton_log_weights(const SolitonSet& s, double x, double t);

/// A_{jl} = sgn_j D_j D_l / (kappa_j + kappa_l). Throws GuardError when some
/// x kappa_j - 4t kappa_j^3 + log|chi_j|/2 exceeds max_exponent.
SolitonMatrix soliton_matrix(const SolitonSet& s, double x, double t,
                             double max_exponent = 250.0);

enum class QMethod { Sum, LogDet, Squared };

/// q (Sum, LogDet) or q^2 (Squared). LogDet and Squared need all chi_j > 0.
double q_exact(const SolitonSet& s, double x, double t, QMethod method = QMethod::Sum,
               double max_exponent = 250.0);

/// det(I + A^2), used for the positivity check.
double det_I_plus_A2(const SolitonSet& s, double x, double t, double max_exponent = 250.0);

/// Quantile map [0, 1] -> [eta1, eta2] of the sampling density.
using Quantile = std::function<double(double)>;

/// kappa_j = Q((j - 1/2)/N), chi_j = Q'((j - 1/2)/N) r(kappa_j) / (2 pi N).
/// Without Q the uniform midpoint rule is used.
SolitonSet sample_gas_solitons(int n, const GasSpec& gas, const Quantile& quantile = {});

}  // namespace sgas
