#pragma once
//
// Inverse-engineered robust pulses. The mixing angle follows the prescribed
// profile theta(t) = (pi/2)(1 - eps)[1 + erf(t/T)], the bookkeeping phase is
// expanded as gamma(theta) = theta + sum_j C_j sin(j theta), and the relative
// phase alpha(theta) solves
//
//   d alpha / d theta = 1 / (tan(alpha) sin(theta)) - 3 d gamma / d theta,
//   alpha(0) = +-pi/2.
//
// The fields then follow from the theta and gamma equations of motion.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nlrc/model.hpp"
#include "nlrc/pulse.hpp"

namespace nlrc {

struct RobustDesign {
  double epsilon = 0.03;
  std::vector<double> coefficients;  // C_1 .. C_n
  double T = 1.0;
  /// Sign of alpha(0) = sign * pi/2.
  int alpha_sign = +1;

  void validate() const;
};

struct ThetaSample {
  double theta = 0.0;
  double theta_dot = 0.0;
};

struct GammaSample {
  double gamma = 0.0;
  double dgamma = 0.0;  // d gamma / d theta
};

ThetaSample theta_profile(const RobustDesign& design, double t);

GammaSample gamma_expansion(const RobustDesign& design, double theta);

/// Final mixing angle pi (1 - eps).
double theta_max(const RobustDesign& design);

struct SolveOptions {
  /// Start of numerical integration; below it the regular series
  /// alpha = sign pi/2 - (3/2)(1 + sum_j j C_j) theta is used.
  double theta_min = 1e-6;
  std::size_t grid_points = 4001;
  double rel_tol = 1e-12;
  double abs_tol = 1e-13;
  /// alpha must stay inside (margin, pi - margin) (shifted by -pi for the
  /// negative branch).
  double bound_margin = 1e-6;
  /// Step cap for the alpha(theta) integration; hitting it (or a step-size
  /// underflow) marks the design invalid.
  std::size_t max_steps = 200'000;
};

/// alpha(theta) on a grid, with cubic Hermite interpolation in between.
class DesignSolution {
 public:
  std::vector<double> theta_grid;
  std::vector<double> alpha_of_theta;
  std::vector<double> dalpha_of_theta;
  std::vector<double> gamma_of_theta;
  bool valid = false;
  std::string diagnostic;
  /// Mixing angle at which alpha left its admissible band (NaN when valid).
  double failure_theta = 0.0;

  /// Interpolated alpha and d alpha / d theta.
  std::pair<double, double> alpha_at(double theta) const;

 private:
  friend DesignSolution solve_alpha(const RobustDesign&, const SolveOptions&);
  double series_slope_ = 0.0;
  double alpha0_ = 0.0;
  double theta_min_ = 0.0;
  double grid_step_ = 0.0;
};

DesignSolution solve_alpha(const RobustDesign& design, const SolveOptions& options = {});

/// Angles the shaped fields are designed to produce at time t.
AngleState prescribed_angles(const RobustDesign& design, const DesignSolution& solution,
                             double t);

/// Omega = theta_dot / (sin(alpha) cos(theta/2));
/// Delta = 3[(Omega/2) cos(alpha) sin(theta/2) - gamma_dot] + La - Ls sin^2(theta/2).
/// Throws InvalidDesign for an invalid solution. A negative alpha branch is
/// reported in the equivalent positive-Omega gauge (alpha -> alpha + pi).
ControlSample shape_fields(const RobustDesign& design, const DesignSolution& solution,
                           const SystemParams& params, double t);

struct FieldDiagnostics {
  ControlSample control;
  /// Detuning from the printed closed form (3/2) cot(alpha) tan(theta/2)
  /// - 3 gamma_dot + La - Ls sin^2(theta/2), which lacks the theta_dot factor
  /// on its first term.
  double delta_printed = 0.0;
  double discrepancy() const { return control.delta - delta_printed; }
};

FieldDiagnostics shape_fields_diagnostic(const RobustDesign& design,
                                         const DesignSolution& solution,
                                         const SystemParams& params, double t);

/// Shaped pulse over [-4T, 4T]. Throws InvalidDesign for an invalid solution.
Pulse make_robust_pulse(const RobustDesign& design, std::shared_ptr<const DesignSolution> solution,
                        const SystemParams& params = {});

/// Solves the design and builds its pulse in one call.
Pulse make_robust_pulse(const RobustDesign& design, const SystemParams& params = {},
                        const SolveOptions& options = {});

/// Full-pulse area computed in the theta domain,
/// integral of d theta / (sin(alpha) cos(theta/2)) over [0, theta_max].
double design_area(const RobustDesign& design, const DesignSolution& solution);

}  // namespace nlrc
