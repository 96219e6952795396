#include "sgas/scenario.hpp"

#include <algorithm>
#include <cmath>
// pchip.hpp in Boost 1.74 calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <functional>
#include <stdexcept>

#include "sgas/modulation.hpp"

namespace sgas {

struct Reflection::Table {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> interp;
};

Reflection Reflection::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument("reflection: constant value must be positive and finite");
  }
  Reflection r;
  r.value_ = value;
  return r;
}

Reflection Reflection::table(std::vector<double> u, std::vector<double> r) {
  if (u.size() != r.size() || u.size() < 4) {
    throw std::invalid_argument("reflection: table needs at least 4 (u, r) pairs");
  }
  for (size_t i = 0; i < u.size(); ++i) {
    if (i > 0 && !(u[i] > u[i - 1])) {
      throw std::invalid_argument("reflection: table abscissae must be strictly increasing");
    }
    if (!(r[i] > 0.0) || !std::isfinite(r[i])) {
      throw std::invalid_argument("reflection: table values must be positive and finite");
    }
  }
  auto tab = std::make_shared<Table>();
  tab->lo = u.front();
  tab->hi = u.back();
  auto spline =
      std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(u),
                                                                               std::move(r));
  tab->interp = [spline](double x) { return (*spline)(x); };
  Reflection out;
  out.table_ = std::move(tab);
  return out;
}

double Reflection::operator()(double u) const {
  if (!table_) return value_;
  if (u < table_->lo - 1e-12 || u > table_->hi + 1e-12) {
    throw std::domain_error("reflection: evaluation outside the tabulated range");
  }
  return table_->interp(std::clamp(u, table_->lo, table_->hi));
}

double Reflection::log(double u) const { return std::log((*this)(u)); }

void Reflection::validate(double lo, double hi) const {
  if (!table_) return;
  if (table_->lo > lo + 1e-12 || table_->hi < hi - 1e-12) {
    throw std::invalid_argument("reflection: table does not cover [eta1, eta2]");
  }
  for (int i = 0; i <= 200; ++i) {
    double u = lo + (hi - lo) * i / 200.0;
    double v = (*this)(u);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("reflection: interpolant is not positive on the band");
    }
  }
}

void GasSpec::validate() const {
  if (!(eta1 > 0.0) || !(eta2 > eta1) || !std::isfinite(eta2)) {
    throw std::invalid_argument("gas: need 0 < eta1 < eta2");
  }
  r.validate(eta1, eta2);
}

double TrialSolitonSpec::center() const {
  return (std::log(2.0 * kappa0) - log_abs_chi) / (2.0 * kappa0);
}

double TrialSolitonSpec::chi() const {
  if (std::abs(log_abs_chi) > 700.0) {
    throw std::range_error("chi does not fit in double precision; use log_abs_chi");
  }
  return sigma * std::exp(log_abs_chi);
}

TrialSolitonSpec make_trial_soliton(double kappa0, double x0, int sigma, ChiConvention conv) {
  if (!(kappa0 > 0.0)) throw std::invalid_argument("soliton: kappa0 must be positive");
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("soliton: sigma must be +1 or -1");
  TrialSolitonSpec s;
  s.kappa0 = kappa0;
  s.sigma = sigma;
  double expo = (conv == ChiConvention::AsWritten) ? -2.0 * kappa0 * x0 : 2.0 * kappa0 * x0;
  s.log_abs_chi = std::log(2.0 * kappa0) + expo;
  return s;
}

TrialSolitonSpec make_trial_soliton_from_chi(double kappa0, double chi) {
  if (!(kappa0 > 0.0)) throw std::invalid_argument("soliton: kappa0 must be positive");
  if (chi == 0.0 || !std::isfinite(chi)) throw std::invalid_argument("soliton: chi must be nonzero");
  TrialSolitonSpec s;
  s.kappa0 = kappa0;
  s.sigma = chi > 0.0 ? 1 : -1;
  s.log_abs_chi = std::log(std::abs(chi));
  return s;
}

void Scenario::validate() const {
  gas.validate();
  if (soliton) {
    if (!(soliton->kappa0 > gas.eta2)) {
      throw std::invalid_argument("scenario: kappa0 must exceed eta2");
    }
    if (!std::isfinite(soliton->log_abs_chi)) {
      throw std::invalid_argument("scenario: norming constant is not finite");
    }
  }
}

double norming_constant(double kappa0, double x0, int sigma) {
  if (!(kappa0 > 0.0)) throw std::domain_error("norming_constant: kappa0 must be positive");
  double expo = -2.0 * kappa0 * x0;
  if (std::abs(expo) > 700.0) {
    throw std::range_error("norming_constant: |2 kappa0 x0| > 700 overflows double precision");
  }
  return 2.0 * kappa0 * sigma * std::exp(expo);
}

double x0_of_chi(double kappa0, double chi) {
  if (chi == 0.0) throw std::domain_error("x0_of_chi: chi must be nonzero");
  return std::log(2.0 * kappa0 / std::abs(chi)) / (2.0 * kappa0);
}

std::complex<double> bare_phase(std::complex<double> k, double x, double t) {
  return 4.0 * t * k * k * k + x * k;
}

std::string to_string(Sector s) {
  switch (s) {
    case Sector::Left: return "S_L";
    case Sector::Middle: return "S_M";
    case Sector::Right: return "S_R";
    case Sector::Transition: return "transition";
  }
  return "?";
}

std::string to_string(Side s) {
  switch (s) {
    case Side::Plus: return "plus";
    case Side::Minus: return "minus";
    case Side::None: return "none";
    case Side::Transition: return "transition";
  }
  return "?";
}

RegionTag classify_region(const Scenario& scn, double x, double t) {
  if (!(t > 0.0)) throw std::domain_error("classify_region: t must be positive");
  const double eta1 = scn.gas.eta1;
  const double v = x / t;
  const double vl = 4.0 * eta1 * eta1;
  const double v2 = front_speed_v2(scn.gas);
  RegionTag tag;
  if (std::abs(v - vl) <= kTransitionHalfWidth || std::abs(v - v2) <= kTransitionHalfWidth) {
    tag.sector = Sector::Transition;
  } else if (v < vl) {
    tag.sector = Sector::Left;
  } else if (v < v2) {
    tag.sector = Sector::Middle;
  } else {
    tag.sector = Sector::Right;
  }
  if (!scn.soliton) {
    tag.side = Side::None;
    return tag;
  }
  if (tag.sector == Sector::Transition) {
    tag.side = Side::Transition;
    return tag;
  }
  const auto& sol = *scn.soliton;
  const double k0 = sol.kappa0;
  double im_phi;
  if (tag.sector == Sector::Left) {
    im_phi = bare_phase({0.0, k0}, x, t).imag();
  } else {
    BandParams band = make_band(eta1, solve_alpha(v, scn.gas));
    im_phi = phi_pole(k0, x, t, band).imag();
  }
  double crit = sol.log_abs_chi - std::log(2.0 * k0) + 2.0 * im_phi;
  double scale = std::abs(sol.log_abs_chi) + 2.0 * std::abs(im_phi) + 1.0;
  if (std::abs(crit) <= 1e-14 * scale) {
    tag.side = Side::Transition;
  } else {
    tag.side = crit > 0.0 ? Side::Plus : Side::Minus;
  }
  return tag;
}

}  // namespace sgas
