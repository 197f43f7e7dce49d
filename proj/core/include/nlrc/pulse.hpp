#pragma once

#include <functional>
#include <string>

#include "nlrc/model.hpp"

namespace nlrc {

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
};

/// Systematic deviations: Omega -> (1 + beta) Omega, Delta -> Delta + delta0.
struct Perturbation {
  double delta0 = 0.0;
  double beta = 0.0;
};

/// A control field (Omega(t), Delta(t)) together with a systematic
/// perturbation and the time window over which it is normally integrated.
/// Copies share the underlying shape, which must be safe to call
/// concurrently.
class Pulse {
 public:
  using Shape = std::function<ControlSample(double)>;

  Pulse(std::string name, Shape shape, TimeSpan default_span);

  /// Perturbed control at time t.
  ControlSample operator()(double t) const {
    ControlSample c = shape_(t);
    c.omega *= scale_;
    c.delta += pert_.delta0;
    return c;
  }

  /// Unperturbed control at time t.
  ControlSample nominal(double t) const { return shape_(t); }

  const std::string& name() const { return name_; }
  const TimeSpan& default_span() const { return span_; }
  const Perturbation& perturbation() const { return pert_; }

  /// Composes a further perturbation on top of the current one.
  Pulse perturbed(const Perturbation& extra) const;

 private:
  std::string name_;
  Shape shape_;
  TimeSpan span_;
  Perturbation pert_{};
  double scale_ = 1.0;
};

/// Applies (delta0, beta) pointwise. Throws std::invalid_argument when
/// 1 + beta <= 0, which would flip the sign of Omega.
Pulse perturb(const Pulse& pulse, const Perturbation& pert);

Pulse zero_pulse(TimeSpan span = {0.0, 1.0});

/// Constant Omega with Delta = lambda_a (alpha stays at pi/2 when
/// lambda_s = 0), switched on over [0, area / omega].
Pulse rabi_pulse(double omega, double area, double lambda_a = 0.0);

/// Integral of the perturbed Omega over the span (adaptive Simpson).
double pulse_area(const Pulse& pulse, TimeSpan span, double tol = 1e-10);
inline double pulse_area(const Pulse& pulse) { return pulse_area(pulse, pulse.default_span()); }

}  // namespace nlrc
