#include "sgas/fredholm.hpp"

#include <algorithm>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "sgas/quadrature.hpp"

namespace sgas {

namespace {

namespace bmp = boost::multiprecision;
using Mp = bmp::number<bmp::mpfr_float_backend<0>, bmp::et_off>;

template <class R>
using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;

/// Sets the default MPFR precision for the current thread, restoring it on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits) : saved_(Mp::default_precision()) {
    Mp::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
  }
  ~PrecisionScope() { Mp::default_precision(saved_); }

 private:
  unsigned saved_;
};

template <class R>
double to_double(const R& v) {
  return static_cast<double>(v);
}

/// le_j in working precision; the band phase must not carry double rounding
/// noise, since q is extremely sensitive to node-to-node perturbations.
template <class R>
std::vector<R> log_weights(const DiscretizedOperator& op) {
  std::vector<R> le(op.size());
  const R x(op.x), t(op.t);
  for (int j = 0; j < op.size(); ++j) {
    const R u(op.nodes[j]);
    R ph = op.kdv ? R(-2) * (x * u + R(4) * t * u * u * u) : R(2) * (x * u - R(4) * t * u * u * u);
    le[j] = R(op.log_pref[j]) + ph;
  }
  return le;
}

void fill_log_e(DiscretizedOperator& op) {
  std::vector<double> le = log_weights<double>(op);
  op.log_e = le;
}

void check_guard(const DiscretizedOperator& op, double max_exponent) {
  for (int j = 0; j < op.size(); ++j) {
    double ex = 0.5 * op.log_e[j];
    if (ex > max_exponent) {
      throw GuardError("fredholm: exponent guard exceeded, max exponent " + std::to_string(ex) +
                           " at node " + std::to_string(j) +
                           "; the asymptotic solver covers this point",
                       j, ex);
    }
  }
}

double max_positive_le(const DiscretizedOperator& op) {
  double lp = 0.0;
  for (double v : op.log_e) lp = std::max(lp, v);
  return lp;
}

/// 2 Im tr(M^{-1} dM) with M = P + i S C E', big nodes (le > 0) divided by e.
template <class R>
double q_scaled(const DiscretizedOperator& op) {
  using std::exp;
  const int n = op.size();
  std::vector<R> le = log_weights<R>(op);
  std::vector<R> P(n), Ep(n), dP(n), dEp(n);
  for (int j = 0; j < n; ++j) {
    const double u = op.nodes[j];
    if (le[j] > R(0)) {
      P[j] = exp(-le[j]);
      dP[j] = R(-2.0 * u) * P[j];
      Ep[j] = R(1);
      dEp[j] = R(0);
    } else {
      P[j] = R(1);
      dP[j] = R(0);
      Ep[j] = exp(le[j]);
      dEp[j] = R(2.0 * u) * Ep[j];
    }
  }
  Mat<R> blk(2 * n, 2 * n);
  Mat<R> rhs(2 * n, n);
  blk.setZero();
  rhs.setZero();
  for (int j = 0; j < n; ++j) {
    blk(j, j) = P[j];
    blk(n + j, n + j) = P[j];
    rhs(j, j) = dP[j];
    for (int l = 0; l < n; ++l) {
      R c = R(op.sign[j]) / (R(op.nodes[j]) + R(op.nodes[l]));
      R q = c * Ep[l];
      blk(j, n + l) = -q;
      blk(n + j, l) = q;
      rhs(n + j, l) = c * dEp[l];
    }
  }
  Mat<R> X = blk.partialPivLu().solve(rhs);
  R tr(0);
  for (int j = 0; j < n; ++j) tr += X(n + j, j);
  return 2.0 * to_double(tr);
}

template <class R>
void assemble(const DiscretizedOperator& op, const std::vector<double>& du, Mat<R>& B,
              Mat<R>& Bp, Mat<R>& Bpp) {
  using std::exp;
  const int n = op.size();
  std::vector<R> le = log_weights<R>(op);
  std::vector<R> d(n);
  for (int j = 0; j < n; ++j) d[j] = exp(le[j] / R(2));
  B.resize(n, n);
  Bp.resize(n, n);
  Bpp.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      R b = R(op.sign[j]) * d[j] * d[l] / (R(op.nodes[j]) + R(op.nodes[l]));
      R s = R(du[j]) + R(du[l]);
      B(j, l) = b;
      Bp(j, l) = s * b;
      Bpp(j, l) = s * s * b;
    }
  }
}

/// d^2 log det(I + B^2) with dB = (du_j + du_l) B.
template <class R>
double q_squared_naive(const DiscretizedOperator& op) {
  const int n = op.size();
  std::vector<double> du(n);
  for (int j = 0; j < n; ++j) du[j] = op.nodes[j];
  Mat<R> B, Bp, Bpp;
  assemble(op, du, B, Bp, Bpp);
  Mat<R> G = Mat<R>::Identity(n, n) + B * B;
  Mat<R> Gp = B * Bp + Bp * B;
  Mat<R> Gpp = Bpp * B + R(2) * Bp * Bp + B * Bpp;
  auto lu = G.partialPivLu();
  Mat<R> X = lu.solve(Gp);
  Mat<R> Y = lu.solve(Gpp);
  return to_double(R(Y.trace() - (X * X).trace()));
}

/// -2 d^2 log det(I + B) for KdV weights, where dB = -(u_j + u_l) B.
template <class R>
double q_kdv_naive(const DiscretizedOperator& op) {
  const int n = op.size();
  std::vector<double> du(n);
  for (int j = 0; j < n; ++j) du[j] = -op.nodes[j];
  Mat<R> B, Bp, Bpp;
  assemble(op, du, B, Bp, Bpp);
  Mat<R> G = Mat<R>::Identity(n, n) + B;
  auto lu = G.partialPivLu();
  Mat<R> X = lu.solve(Bp);
  Mat<R> Y = lu.solve(Bpp);
  return -2.0 * to_double(R(Y.trace() - (X * X).trace()));
}

DiscretizedOperator band_operator(const Scenario& scn, double x, double t, int n, bool kdv) {
  scn.validate();
  if (n < 8) throw std::invalid_argument("discretize_operator: need at least 8 nodes");
  DiscretizedOperator op;
  op.x = x;
  op.t = t;
  quad::Rule rule = quad::gauss_legendre(n, scn.gas.eta1, scn.gas.eta2);
  op.kdv = kdv;
  for (int j = 0; j < n; ++j) {
    const double u = rule.x[j];
    op.nodes.push_back(u);
    op.weights.push_back(rule.w[j]);
    op.log_pref.push_back(std::log(rule.w[j] * scn.gas.r(u) / (2.0 * std::numbers::pi)));
    op.sign.push_back(1);
  }
  if (scn.soliton) {
    op.pole_index = n;
    op.nodes.push_back(scn.soliton->kappa0);
    op.weights.push_back(1.0);
    op.log_pref.push_back(scn.soliton->log_abs_chi);
    op.sign.push_back(scn.soliton->sigma);
  }
  fill_log_e(op);
  return op;
}

}  // namespace

double DiscretizedOperator::max_log_entry() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : log_e) m = std::max(m, 0.5 * v);
  return m;
}

Eigen::MatrixXd DiscretizedOperator::B() const {
  const int n = size();
  Eigen::MatrixXd b(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) {
      b(j, l) = sign[j] * std::exp(0.5 * (log_e[j] + log_e[l]) - std::log(nodes[j] + nodes[l]));
    }
  }
  return b;
}

Eigen::MatrixXd DiscretizedOperator::dB() const {
  Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(nodes.data(), size());
  Eigen::MatrixXd b = B();
  return u.asDiagonal() * b + b * u.asDiagonal();
}

DiscretizedOperator discretize_operator(const Scenario& scn, double x, double t, int n,
                                        double max_exponent) {
  DiscretizedOperator op = band_operator(scn, x, t, n, false);
  check_guard(op, max_exponent);
  return op;
}

DiscretizedOperator discretize_operator_kdv(const Scenario& scn, double x, double t, int n,
                                            double max_exponent) {
  DiscretizedOperator op = band_operator(scn, x, t, n, true);
  check_guard(op, max_exponent);
  return op;
}

DiscretizedOperator discretize_poles(const SolitonSet& s, double x, double t,
                                     double max_exponent) {
  s.validate();
  DiscretizedOperator op;
  op.x = x;
  op.t = t;
  op.nodes = s.kappa;
  op.weights.assign(s.size(), 1.0);
  op.log_pref = s.log_abs_chi;
  op.sign = s.sign;
  fill_log_e(op);
  check_guard(op, max_exponent);
  return op;
}

int fredholm_precision_bits(const DiscretizedOperator& op) {
  const double lp = max_positive_le(op);
  if (lp <= 8.0) return 53;
  double extra = 0.0;
  if (op.pole_index) extra = std::min(200.0, std::max(0.0, -op.log_e[*op.pole_index]));
  return static_cast<int>(60.0 + (2.0 * lp + extra) / std::numbers::ln2);
}

double q_from_operator(const DiscretizedOperator& op) {
  if (op.size() == 0) return 0.0;
  const int bits = fredholm_precision_bits(op);
  if (bits == 53) return q_scaled<double>(op);
  PrecisionScope scope(bits);
  return q_scaled<Mp>(op);
}

double q_squared_from_operator(const DiscretizedOperator& op) {
  if (op.size() == 0) return 0.0;
  for (int s : op.sign) {
    if (s < 0) throw std::invalid_argument("q_squared: needs positive signs on every node");
  }
  const double lp = max_positive_le(op);
  if (lp <= 4.0) return q_squared_naive<double>(op);
  PrecisionScope scope(static_cast<int>(60.0 + 4.0 * lp / std::numbers::ln2));
  return q_squared_naive<Mp>(op);
}

double q_kdv_from_operator(const DiscretizedOperator& op) {
  if (op.size() == 0) return 0.0;
  const double lp = max_positive_le(op);
  if (lp <= 8.0) return q_kdv_naive<double>(op);
  PrecisionScope scope(static_cast<int>(60.0 + 2.0 * lp / std::numbers::ln2));
  return q_kdv_naive<Mp>(op);
}

double q_eigen_from_operator(const DiscretizedOperator& op) {
  for (int s : op.sign) {
    if (s < 0) throw std::invalid_argument("q_eigen: needs a symmetric operator");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.B());
  if (es.info() != Eigen::Success) throw std::runtime_error("q_eigen: eigensolver failed");
  Eigen::MatrixXd dv = op.dB() * es.eigenvectors();
  double q = 0.0;
  for (int k = 0; k < op.size(); ++k) {
    double lam = es.eigenvalues()(k);
    double dlam = es.eigenvectors().col(k).dot(dv.col(k));
    q += dlam / (1.0 + lam * lam);
  }
  return 2.0 * q;
}

double q_gas(const Scenario& scn, double x, double t, int n, double max_exponent) {
  return q_from_operator(discretize_operator(scn, x, t, n, max_exponent));
}

double q_gas_squared(const Scenario& scn, double x, double t, int n, double max_exponent) {
  return q_squared_from_operator(discretize_operator(scn, x, t, n, max_exponent));
}

double q_kdv(const Scenario& scn, double x, double t, int n, double max_exponent) {
  return q_kdv_from_operator(discretize_operator_kdv(scn, x, t, n, max_exponent));
}

DeterminantIdentity determinant_identity(const DiscretizedOperator& op) {
  using CMat = Eigen::MatrixXcd;
  const int n = op.size();
  Eigen::MatrixXd b = op.B();
  const std::complex<double> I(0.0, 1.0);
  CMat id = CMat::Identity(n, n);
  DeterminantIdentity out;
  out.det_plus = (id + I * b.cast<std::complex<double>>()).partialPivLu().determinant();
  out.det_minus = (id - I * b.cast<std::complex<double>>()).partialPivLu().determinant();
  out.det_square = (Eigen::MatrixXd::Identity(n, n) + b * b).partialPivLu().determinant();
  out.relative_residual = std::abs(out.det_plus * out.det_minus - out.det_square) /
                          std::max(std::abs(out.det_square), 1e-300);
  return out;
}

}  // namespace sgas
