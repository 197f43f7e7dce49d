#pragma once

#include "nlrc/model.hpp"
#include "nlrc/pulse.hpp"

namespace nlrc {

/// Which interior fixed-point branch the detuning is inverted on.
enum class TrackingBranch { alpha_zero, alpha_pi };

/// Omega(t) = omega0 sech(t/T) with the population tracked along
/// p_track(t) = sin^2[arctan(sinh(t/T))/2 + pi/4].
struct TrackingDesign {
  double omega0 = 10.0;
  double T = 1.0;
  TrackingBranch branch = TrackingBranch::alpha_zero;

  void validate() const;
};

struct TrackingSample {
  ControlSample control;
  double p_track = 0.0;
};

/// Field values and tracked population at time t. Delta is obtained by
/// inverting the fixed-point condition on the chosen branch.
TrackingSample tracking_controls(const TrackingDesign& design, double t);

/// Tracking pulse integrated over [-16T, 16T] by default.
Pulse make_tracking_pulse(const TrackingDesign& design);

/// Analytic area pi * omega0 * T of the full sech pulse.
double tracking_area(const TrackingDesign& design);

}  // namespace nlrc
