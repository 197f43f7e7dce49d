#include "nlrc/adiabatic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlrc {

void TrackingDesign::validate() const {
  if (!(omega0 > 0.0)) throw std::invalid_argument("tracking omega0 must be positive");
  if (!(T > 0.0)) throw std::invalid_argument("tracking T must be positive");
}

TrackingSample tracking_controls(const TrackingDesign& design, double t) {
  const double x = t / design.T;
  // sin^2[arctan(sinh x)/2 + pi/4] = (1 + tanh x)/2 = 1/(1 + e^{-2x})
  const double p = 1.0 / (1.0 + std::exp(-2.0 * x));
  const double omega = design.omega0 / std::cosh(x);
  // Omega / (2 sqrt(p)) = omega0 / sqrt(1 + e^{2x}): finite for all t, no 0/0.
  const double half_ratio = design.omega0 / std::sqrt(1.0 + std::exp(2.0 * x));
  const double sign = design.branch == TrackingBranch::alpha_zero ? -1.0 : 1.0;
  return {{omega, sign * half_ratio * (1.0 - 3.0 * p)}, p};
}

Pulse make_tracking_pulse(const TrackingDesign& design) {
  design.validate();
  std::ostringstream name;
  name << "tracking(omega0=" << design.omega0 << ",T=" << design.T << ",branch="
       << (design.branch == TrackingBranch::alpha_zero ? "0" : "pi") << ")";
  return Pulse(name.str(),
               [design](double t) { return tracking_controls(design, t).control; },
               {-16.0 * design.T, 16.0 * design.T});
}

double tracking_area(const TrackingDesign& design) {
  return std::numbers::pi * design.omega0 * design.T;
}

}  // namespace nlrc
