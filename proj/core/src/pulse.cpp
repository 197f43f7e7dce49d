#include "nlrc/pulse.hpp"

#include "nlrc/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace nlrc {

Pulse::Pulse(std::string name, Shape shape, TimeSpan default_span)
    : name_(std::move(name)), shape_(std::move(shape)), span_(default_span) {
  if (!shape_) throw std::invalid_argument("pulse shape is empty");
  if (!(span_.start < span_.end)) throw std::invalid_argument("pulse span must be increasing");
}

Pulse Pulse::perturbed(const Perturbation& extra) const {
  Pulse out = *this;
  const double scale = out.scale_ * (1.0 + extra.beta);
  if (!(scale > 0.0)) {
    throw std::invalid_argument("amplitude factor 1 + beta must be positive");
  }
  out.scale_ = scale;
  out.pert_.delta0 += extra.delta0;
  out.pert_.beta = scale - 1.0;
  return out;
}

Pulse perturb(const Pulse& pulse, const Perturbation& pert) {
  if (!std::isfinite(pert.delta0) || !std::isfinite(pert.beta)) {
    throw std::invalid_argument("perturbation must be finite");
  }
  return pulse.perturbed(pert);
}

Pulse zero_pulse(TimeSpan span) {
  return Pulse("zero", [](double) { return ControlSample{0.0, 0.0}; }, span);
}

Pulse rabi_pulse(double omega, double area, double lambda_a) {
  if (!(omega > 0.0) || !(area > 0.0)) {
    throw std::invalid_argument("rabi pulse needs positive omega and area");
  }
  std::ostringstream name;
  name << "rabi(omega=" << omega << ",area=" << area << ")";
  return Pulse(name.str(), [omega, lambda_a](double) { return ControlSample{omega, lambda_a}; },
               {0.0, area / omega});
}

double pulse_area(const Pulse& pulse, TimeSpan span, double tol) {
  return adaptive_simpson([&pulse](double t) { return pulse(t).omega; }, span.start, span.end,
                          tol, 64);
}

}  // namespace nlrc
