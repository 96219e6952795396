/** @file dynamics.hpp
 *  Interaction observables: phase shift, velocities, kinetic-equation
 *  residuals, critical parameters and the soliton-peak trajectory.
 */
#pragma once

#include <stdexcept>

#include "sgas/modulation.hpp"
#include "sgas/outer_model.hpp"
#include "sgas/scenario.hpp"

namespace sgas {

/// Raised when the peak equation has several roots or a non-positive slope.
class PeakJumpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PeakBranch { Quiescent, Modulated, FixedBand };
std::string to_string(PeakBranch b);

struct PeakSample {
  double t = 0.0;
  double x_peak = 0.0;
  double amplitude = 0.0;
  Side side = Side::None;
  PeakBranch branch = PeakBranch::Quiescent;
};

struct CharacteristicFrame {
  double s = 0.0;    // Omega + Delta^-
  double tau = 0.0;  // t
  double ds_dx = 0.0;
};

struct KineticReport {
  double v_bar = 0.0;
  double residual_soliton_eq = 0.0;
  double residual_group_eq = 0.0;
};

struct PhaseShift {
  double closed = 0.0;     // -(2K/alpha)(1 + 4 A(i kappa0))
  double via_delta = 0.0;  // (Delta^+ - Delta^-) K / (alpha pi)
};

struct EntryExit {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// 4 kappa0^2 K(m) / Pi(eta1^2/kappa0^2, m) + 2(eta1^2 + alpha^2).
double v_bar_sol(double kappa0, const BandParams& band);
/// -12 (k^4 + (eta1^2 + alpha^2) k^2 / 2 + c2) / (k^2 + c0) at k = iu.
double v_group(double u, const BandParams& band);
/// -phi_t(k)/phi_x(k) off the cut.
cplx v_phase(cplx k, const BandParams& band);
/// Phase velocity at the band end i eta1 (boundary value).
double v_phase_edge(const BandParams& band);
/// 2(eta1^2 + alpha^2).
double v_background(const BandParams& band);

KineticReport kinetic_residuals(double kappa0, double x, double t, const Scenario& scn,
                                int nodes = 256);
/// The two residuals for a given band, without reference to (x, t).
KineticReport kinetic_residuals_band(double kappa0, const BandParams& band, int nodes = 256);

PhaseShift phase_shift(double kappa0, const BandParams& band,
                       const Reflection& r = Reflection::constant(1.0), int nodes = 256);

double kappa_crit(const BandParams& band);

CharacteristicFrame characteristic_frame(const Scenario& scn, double x, double t,
                                         const NumericOptions& opts = {});

/// t1 = -x0 / (4 (kappa0^2 - eta1^2)) with x0 the physical centre.
double entry_time(const Scenario& scn);

/// Peak-equation residual P(x, t); its root in x is the peak position.
double peak_function(const Scenario& scn, double x, double t, const NumericOptions& opts = {});

inline constexpr double kQuiescentMargin = 0.02;

PeakSample solve_peak(double t, const Scenario& scn, const NumericOptions& opts = {});
double peak_velocity(double t, const Scenario& scn, const NumericOptions& opts = {});
/// Background period seen by the peak: (2K(m1)/(alpha + eta1)) / |v_bar - v_bg|.
double peak_period(double t, const Scenario& scn, const NumericOptions& opts = {});
double average_peak_velocity(double t, const Scenario& scn, const NumericOptions& opts = {});

/// t2 is the first t with x_peak(t)/t >= v2, by bisection; throws
/// std::runtime_error if the horizon is reached first.
EntryExit entry_exit_times(const Scenario& scn, double horizon = 1e5,
                           const NumericOptions& opts = {});

}  // namespace sgas
