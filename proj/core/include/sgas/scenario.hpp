/** @file scenario.hpp
 *  Problem instances: gas band, reflection amplitude, optional trial soliton,
 *  and the classification of space-time points into sectors and sides.
 */
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sgas {

/// Positive reflection amplitude on the band, constant or tabulated
/// (monotone cubic interpolation between samples).
class Reflection {
 public:
  Reflection() = default;
  static Reflection constant(double value);
  static Reflection table(std::vector<double> u, std::vector<double> r);

  double operator()(double u) const;
  double log(double u) const;
  bool is_constant() const { return !table_; }
  double constant_value() const { return value_; }
  /// Throws unless r is positive and finite on [lo, hi].
  void validate(double lo, double hi) const;

 private:
  struct Table;
  double value_ = 1.0;
  std::shared_ptr<const Table> table_;
};

struct GasSpec {
  double eta1 = 0.25;
  double eta2 = 1.0;
  Reflection r;

  void validate() const;
};

enum class ChiConvention { AsWritten, NegatedX0 };

/// Trial soliton data. The norming constant is kept in log form so that
/// |2 kappa0 x0| far beyond the double exponent range stays representable.
struct TrialSolitonSpec {
  double kappa0 = 2.0;
  int sigma = 1;
  double log_abs_chi = 0.0;

  /// Physical centre of the free soliton at t = 0: (1/2k) log(2k/|chi|).
  double center() const;
  /// chi itself; throws std::range_error when it does not fit in a double.
  double chi() const;
};

TrialSolitonSpec make_trial_soliton(double kappa0, double x0, int sigma,
                                    ChiConvention conv = ChiConvention::AsWritten);
TrialSolitonSpec make_trial_soliton_from_chi(double kappa0, double chi);

struct Scenario {
  GasSpec gas;
  std::optional<TrialSolitonSpec> soliton;
  ChiConvention chi_convention = ChiConvention::AsWritten;

  void validate() const;
};

/// 2 kappa0 sigma exp(-2 kappa0 x0); rejects |2 kappa0 x0| > 700.
double norming_constant(double kappa0, double x0, int sigma);
/// Inverse map: x0 = (1/2k) log(2k/|chi|).
double x0_of_chi(double kappa0, double chi);

std::complex<double> bare_phase(std::complex<double> k, double x, double t);

enum class Sector { Left, Middle, Right, Transition };
enum class Side { Plus, Minus, None, Transition };

struct RegionTag {
  Sector sector = Sector::Left;
  Side side = Side::None;
};

std::string to_string(Sector s);
std::string to_string(Side s);

RegionTag classify_region(const Scenario& scn, double x, double t);

/// Half-width in x/t of the excluded bands around 4 eta1^2 and v2.
inline constexpr double kTransitionHalfWidth = 1e-8;

}  // namespace sgas
