#pragma once

#include <span>
#include <vector>

#include "nlrc/integrator.hpp"
#include "nlrc/model.hpp"
#include "nlrc/pulse.hpp"

namespace nlrc {

/// Sampled solution: states and the controls that drove them, on a strictly
/// increasing time grid.
template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<ControlSample> controls;

  std::size_t size() const { return times.size(); }
};

using AmplitudeTrajectory = Trajectory<AmplitudeState>;
using AngleTrajectory = Trajectory<AngleState>;

/// Integrates the amplitude equations. With empty `samples` every accepted
/// step is returned; otherwise the dense output is evaluated at `samples`.
AmplitudeTrajectory simulate_amplitudes(const Pulse& pulse, const SystemParams& params,
                                        const AmplitudeState& initial, TimeSpan span,
                                        const IntegratorConfig& cfg,
                                        std::span<const double> samples = {});

/// Integrates the angle equations. Propagates ChartSingularity if the
/// trajectory approaches theta = 0.
AngleTrajectory simulate_angles(const Pulse& pulse, const SystemParams& params,
                                const AngleState& initial, TimeSpan span,
                                const IntegratorConfig& cfg,
                                std::span<const double> samples = {});

/// Final amplitudes only.
AmplitudeState propagate_amplitudes(const Pulse& pulse, const SystemParams& params,
                                    const AmplitudeState& initial, TimeSpan span,
                                    const IntegratorConfig& cfg);

/// n equally spaced times covering [span.start, span.end] inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace nlrc
