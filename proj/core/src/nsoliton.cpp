#include "sgas/nsoliton.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

namespace sgas {


SolitonSet SolitonSet::from_chis(const std::vector<double>& kappas,
                                 const std::vector<double>& chis) {
  if (kappas.size() != chis.size()) {
    throw std::invalid_argument("SolitonSet: kappas and chis differ in length");
  }
  SolitonSet s;
  for (size_t j = 0; j < kappas.size(); ++j) {
    if (chis[j] == 0.0 || !std::isfinite(chis[j])) {
      throw std::invalid_argument("SolitonSet: chi must be nonzero and finite");
    }
    s.kappa.push_back(kappas[j]);
    s.log_abs_chi.push_back(std::log(std::abs(chis[j])));
    s.sign.push_back(chis[j] > 0.0 ? 1 : -1);
  }
  s.validate();
  return s;
}

bool SolitonSet::all_positive() const {
  for (int sg : sign) {
    if (sg < 0) return false;
  }
  return true;
}

void SolitonSet::validate() const {
  if (kappa.size() != log_abs_chi.size() || kappa.size() != sign.size()) {
    throw std::invalid_argument("SolitonSet: field lengths differ");
  }
  std::set<double> seen;
  for (size_t j = 0; j < kappa.size(); ++j) {
    if (!(kappa[j] > 0.0)) throw std::invalid_argument("SolitonSet: kappa must be positive");
    if (!seen.insert(kappa[j]).second) {
      throw std::invalid_argument("SolitonSet: kappa values must be distinct");
    }
    if (sign[j] != 1 && sign[j] != -1) throw std::invalid_argument("SolitonSet: bad sign");
    if (!std::isfinite(log_abs_chi[j])) throw std::invalid_argument("SolitonSet: bad chi");
  }
}

std::vector<double> soliton_log_weights(const SolitonSet& s, double x, double t) {
  std::vector<double> le(s.size());
  for (int j = 0; j < s.size(); ++j) {
    double k = s.kappa[j];
    le[j] = s.log_abs_chi[j] + 2.0 * (x * k - 4.0 * t * k * k * k);
  }
  return le;
}

SolitonMatrix soliton_matrix(const SolitonSet& s, double x, double t, double max_exponent) {
  s.validate();
  const int n = s.size();
  std::vector<double> le = soliton_log_weights(s, x, t);
  for (int j = 0; j < n; ++j) {
    // Large negative exponents underflow harmlessly to zero entries.
    if (0.5 * le[j] > max_exponent) {
      throw GuardError("soliton_matrix: exponent guard exceeded at index " + std::to_string(j) +
                           " (exponent " + std::to_string(0.5 * le[j]) + ")",
                       j, 0.5 * le[j]);
    }
  }
  SolitonMatrix m;
  m.x = x;
  m.t = t;
  m.A.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      double lg = 0.5 * (le[j] + le[l]) - std::log(s.kappa[j] + s.kappa[l]);
      m.A(j, l) = s.sign[j] * std::exp(lg);
    }
  }
  return m;
}

namespace {

// Rescaled data: with d_j = exp(le_j / 2), E_j = max(1, d_j) and F_j = d_j / E_j,
// E^{-1}(I + iA)E^{-1} = diag(E^{-2}) + i S F C F where C_jl = 1/(kappa_j + kappa_l).
// Every entry is O(1) however large the weights get. The Cauchy block is still
// badly conditioned for close kappas, so the solves run in long double.
using Real = long double;
using VecR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using CplxR = std::complex<Real>;
using MatC = Eigen::Matrix<CplxR, Eigen::Dynamic, Eigen::Dynamic>;

struct Scaled {
  VecR inv_e2;   // E^{-2}
  VecR dinv_e2;  // d/dx log E^{-2}
  VecR f;        // F
  VecR df;       // d/dx log F
  MatR B;        // S F C F
};

Scaled rescale(const SolitonSet& s, double x, double t) {
  const int n = s.size();
  Scaled sc;
  sc.inv_e2.resize(n);
  sc.dinv_e2.resize(n);
  sc.f.resize(n);
  sc.df.resize(n);
  for (int j = 0; j < n; ++j) {
    const Real k = s.kappa[j];
    const Real le = Real(s.log_abs_chi[j]) + 2 * (Real(x) * k - 4 * Real(t) * k * k * k);
    if (le > 0) {
      sc.inv_e2(j) = std::exp(-le);
      sc.dinv_e2(j) = -2 * k;
      sc.f(j) = 1;
      sc.df(j) = 0;
    } else {
      sc.inv_e2(j) = 1;
      sc.dinv_e2(j) = 0;
      sc.f(j) = std::exp(le / 2);
      sc.df(j) = k;
    }
  }
  sc.B.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      sc.B(j, l) = s.sign[j] * sc.f(j) * sc.f(l) / (Real(s.kappa[j]) + Real(s.kappa[l]));
    }
  }
  return sc;
}

double q_sum(const SolitonSet& s, const Scaled& sc) {
  const int n = s.size();
  MatR big = MatR::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n).diagonal() = sc.inv_e2;
  big.bottomRightCorner(n, n).diagonal() = sc.inv_e2;
  big.topRightCorner(n, n) = sc.B;
  big.bottomLeftCorner(n, n) = -sc.B;
  VecR rhs = VecR::Zero(2 * n);
  for (int j = 0; j < n; ++j) rhs(n + j) = -s.sign[j] * sc.f(j);
  VecR sol = big.partialPivLu().solve(rhs);
  return static_cast<double>(-2 * sol.tail(n).dot(sc.f));
}

}  // namespace

double q_exact(const SolitonSet& s, double x, double t, QMethod method, double max_exponent) {
  soliton_matrix(s, x, t, max_exponent);  // validation and exponent guard
  const int n = s.size();
  if (n == 0) return 0.0;
  Scaled sc = rescale(s, x, t);
  if (method == QMethod::Sum) return q_sum(s, sc);
  if (!s.all_positive()) {
    throw std::invalid_argument("q_exact: logdet and squared methods need all chi_j > 0");
  }
  const CplxR I(0, 1);
  MatR B1(n, n), B2(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      Real g = sc.df(j) + sc.df(l);
      B1(j, l) = g * sc.B(j, l);
      B2(j, l) = g * g * sc.B(j, l);
    }
  }
  MatC N = I * sc.B.cast<CplxR>();
  MatC N1 = I * B1.cast<CplxR>();
  MatC N2 = I * B2.cast<CplxR>();
  for (int j = 0; j < n; ++j) {
    N(j, j) += sc.inv_e2(j);
    N1(j, j) += sc.dinv_e2(j) * sc.inv_e2(j);
    N2(j, j) += sc.dinv_e2(j) * sc.dinv_e2(j) * sc.inv_e2(j);
  }
  auto lu = N.partialPivLu();
  MatC X = lu.solve(N1);
  // log det(I + A^2) = 2 Re log det(I + iA); q = 2 d/dx arg det(I + iA).
  if (method == QMethod::LogDet) return static_cast<double>(2 * X.trace().imag());
  return static_cast<double>(2 * (lu.solve(N2).trace() - (X * X).trace()).real());
}

double det_I_plus_A2(const SolitonSet& s, double x, double t, double max_exponent) {
  SolitonMatrix sm = soliton_matrix(s, x, t, max_exponent);
  const int n = s.size();
  return (Eigen::MatrixXd::Identity(n, n) + sm.A * sm.A).determinant();
}

SolitonSet sample_gas_solitons(int n, const GasSpec& gas, const Quantile& quantile) {
  if (n < 1) throw std::invalid_argument("sample_gas_solitons: N must be positive");
  gas.validate();
  SolitonSet s;
  const double width = gas.eta2 - gas.eta1;
  for (int j = 1; j <= n; ++j) {
    double p = (j - 0.5) / n;
    double k, dk;
    if (quantile) {
      k = quantile(p);
      double h = std::min(1e-6, 0.25 / n);
      dk = (quantile(p + h) - quantile(p - h)) / (2.0 * h);
      if (!(k > gas.eta1 && k < gas.eta2) || !(dk > 0.0)) {
        throw std::invalid_argument("sample_gas_solitons: quantile must be increasing into the band");
      }
    } else {
      k = gas.eta1 + p * width;
      dk = width;
    }
    s.kappa.push_back(k);
    s.log_abs_chi.push_back(std::log(dk * gas.r(k) / (2.0 * std::numbers::pi * n)));
    s.sign.push_back(1);
  }
  return s;
}

}  // namespace sgas
