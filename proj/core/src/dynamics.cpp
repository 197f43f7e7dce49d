#include "nlrc/dynamics.hpp"

#include <stdexcept>

namespace nlrc {

namespace {

template <class State, std::size_t N, class Rhs>
Trajectory<State> run(Rhs&& rhs, const Pulse& pulse, const Vec<N>& y0, TimeSpan span,
                      const IntegratorConfig& cfg, std::span<const double> samples) {
  OdeOutput out;
  out.sample_times = samples;
  auto sol = solve_ode<N>(rhs, y0, span.start, span.end, cfg, out);

  Trajectory<State> traj;
  traj.times = std::move(sol.times);
  traj.states.reserve(sol.states.size());
  traj.controls.reserve(sol.states.size());
  for (std::size_t i = 0; i < sol.states.size(); ++i) {
    traj.states.push_back(State::from_array(sol.states[i]));
    traj.controls.push_back(pulse(traj.times[i]));
  }
  return traj;
}

}  // namespace

AmplitudeTrajectory simulate_amplitudes(const Pulse& pulse, const SystemParams& params,
                                        const AmplitudeState& initial, TimeSpan span,
                                        const IntegratorConfig& cfg,
                                        std::span<const double> samples) {
  auto rhs = [&](double t, const Vec<4>& y) {
    return amplitude_rhs(AmplitudeState::from_array(y), pulse(t), params).to_array();
  };
  return run<AmplitudeState, 4>(rhs, pulse, initial.to_array(), span, cfg, samples);
}

AngleTrajectory simulate_angles(const Pulse& pulse, const SystemParams& params,
                                const AngleState& initial, TimeSpan span,
                                const IntegratorConfig& cfg, std::span<const double> samples) {
  auto rhs = [&](double t, const Vec<3>& y) {
    return angle_rhs(AngleState::from_array(y), pulse(t), params).to_array();
  };
  return run<AngleState, 3>(rhs, pulse, initial.to_array(), span, cfg, samples);
}

AmplitudeState propagate_amplitudes(const Pulse& pulse, const SystemParams& params,
                                    const AmplitudeState& initial, TimeSpan span,
                                    const IntegratorConfig& cfg) {
  auto rhs = [&](double t, const Vec<4>& y) {
    return amplitude_rhs(AmplitudeState::from_array(y), pulse(t), params).to_array();
  };
  OdeOutput out;
  out.final_only = true;
  const auto sol = solve_ode<4>(rhs, initial.to_array(), span.start, span.end, cfg, out);
  return AmplitudeState::from_array(sol.final_state);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> v(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
  v.back() = hi;
  return v;
}

}  // namespace nlrc
