#pragma once
//
// Dormand-Prince 5(4) embedded Runge-Kutta pair with PI step-size control and
// the standard fourth-order continuous extension for dense output.
//
// The solver is a template over the state dimension; states are fixed-size
// std::array<double, N>. The right-hand side is any callable
// `Vec<N>(double t, const Vec<N>& y)`.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlrc/errors.hpp"

namespace nlrc {

template <std::size_t N>
using Vec = std::array<double, N>;

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double max_step = 0.1;
  /// Zero selects the starting step automatically.
  double initial_step = 0.0;
  std::size_t max_steps = 50'000'000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw std::invalid_argument("integrator tolerances must be positive");
    }
    if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
    if (initial_step < 0.0) throw std::invalid_argument("initial_step must be >= 0");
  }
};

/// p(t) = tanh^2 of the integral of (Omega/2) sin(alpha) from a start at p = 0.
inline double closed_form_population(double area_integral) {
  const double th = std::tanh(area_integral);
  return th * th;
}

namespace detail {

// Butcher tableau.
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// Error weights (fifth minus fourth order).
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense output.
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI controller constants.
inline constexpr double kSafety = 0.9;
inline constexpr double kBeta = 0.04;
inline constexpr double kExpo = 0.2 - kBeta * 0.75;
inline constexpr double kMinFactor = 0.2;  // hnew >= 0.2 h
inline constexpr double kMaxFactor = 10.0;

}  // namespace detail

/// Dense-output polynomial valid on one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<Vec<N>, 5> r{};

  Vec<N> operator()(double t) const {
    const double s = (t - t0) / h;
    const double s1 = 1.0 - s;
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i])));
    }
    return y;
  }
};

template <std::size_t N>
struct OdeSolution {
  std::vector<double> times;
  std::vector<Vec<N>> states;
  std::vector<DenseSegment<N>> segments;  // empty unless dense output was requested
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t rhs_evaluations = 0;
  bool stopped_early = false;
  double final_time = 0.0;
  Vec<N> final_state{};

  /// Evaluates the dense interpolant. Requires dense output.
  Vec<N> at(double t) const {
    if (segments.empty()) throw std::logic_error("no dense output stored");
    auto it = std::upper_bound(segments.begin(), segments.end(), t,
                               [](double v, const DenseSegment<N>& s) { return v < s.t0; });
    if (it != segments.begin()) --it;
    return (*it)(t);
  }
};

struct OdeOutput {
  /// Sorted times inside [t0, t1] at which to record the state. Empty means
  /// record every accepted step (plus the start).
  std::span<const double> sample_times{};
  bool final_only = false;
  bool dense = false;
};

struct ContinueAlways {
  template <std::size_t N>
  bool operator()(double, const Vec<N>&) const noexcept {
    return true;
  }
};

template <std::size_t N, class Rhs>
double initial_step_size(Rhs& rhs, double t0, const Vec<N>& y0, const Vec<N>& f0,
                         double direction_span, const IntegratorConfig& cfg) {
  // Hairer-Norsett-Wanner starting step heuristic.
  double dnf = 0.0, dny = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sk = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    dnf += (f0[i] / sk) * (f0[i] / sk);
    dny += (y0[i] / sk) * (y0[i] / sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
  h = std::min({h, cfg.max_step, direction_span});
  Vec<N> y1;
  for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + h * f0[i];
  const Vec<N> f1 = rhs(t0 + h, y1);
  double der2 = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sk = cfg.abs_tol + cfg.rel_tol * std::abs(y0[i]);
    der2 += ((f1[i] - f0[i]) / sk) * ((f1[i] - f0[i]) / sk);
  }
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
  return std::min({100.0 * h, h1, cfg.max_step, direction_span});
}

/// Integrates dy/dt = rhs(t, y) on [t0, t1] (t0 < t1).
///
/// The observer is called after every accepted step with the new (t, y) and
/// may return false to stop the integration early. Throws StepSizeUnderflow
/// when the controller cannot satisfy the tolerances; exceptions raised by
/// rhs propagate unchanged.
template <std::size_t N, class Rhs, class Observer = ContinueAlways>
OdeSolution<N> solve_ode(Rhs&& rhs, const Vec<N>& y0, double t0, double t1,
                         const IntegratorConfig& cfg, const OdeOutput& out = {},
                         Observer&& observer = {}) {
  using namespace detail;
  cfg.validate();
  if (!(t0 < t1)) throw std::invalid_argument("solve_ode requires t0 < t1");

  OdeSolution<N> sol;
  const auto samples = out.sample_times;
  std::size_t next_sample = 0;
  const bool every_step = samples.empty() && !out.final_only;

  auto record = [&](double t, const Vec<N>& y) {
    sol.times.push_back(t);
    sol.states.push_back(y);
  };
  if (!samples.empty() && samples.front() < t0) {
    throw std::invalid_argument("sample time before integration start");
  }
  while (next_sample < samples.size() && samples[next_sample] == t0) {
    record(t0, y0);
    ++next_sample;
  }
  if (every_step) record(t0, y0);

  double t = t0;
  Vec<N> y = y0;
  Vec<N> k1 = rhs(t, y);
  Vec<N> k2, k3, k4, k5, k6, k7, ytmp, ynew;
  sol.rhs_evaluations = 1;

  double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, cfg.max_step)
                                    : initial_step_size(rhs, t0, y0, k1, t1 - t0, cfg);
  if (cfg.initial_step == 0.0) ++sol.rhs_evaluations;
  double err_old = 1e-4;
  bool last_rejected = false;
  std::size_t steps = 0;

  while (t < t1) {
    if (++steps > cfg.max_steps) {
      throw StepSizeUnderflow("maximum number of steps exceeded at t = " + std::to_string(t), t);
    }
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(std::abs(t), std::abs(t1 - t0));
    if (h < min_step || !std::isfinite(h)) {
      throw StepSizeUnderflow("step size underflow at t = " + std::to_string(t), t);
    }
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(t + c2 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(t + c3 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(t + c4 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(t + c5 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double t_new = last ? t1 : t + h;
    k6 = rhs(t + h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = rhs(t_new, ynew);
    sol.rhs_evaluations += 6;

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]) / sk;
      err += ei * ei;
    }
    err = std::sqrt(err / static_cast<double>(N));
    if (!std::isfinite(err)) err = 1e10;

    const double fac11 = std::pow(err, kExpo);
    double fac = fac11 / std::pow(err_old, kBeta);
    fac = std::clamp(fac / kSafety, 1.0 / kMaxFactor, 1.0 / kMinFactor);

    if (err <= 1.0) {
      err_old = std::max(err, 1e-4);
      ++sol.accepted_steps;

      const bool need_dense = out.dense || (next_sample < samples.size() &&
                                            samples[next_sample] <= t_new);
      DenseSegment<N> seg;
      if (need_dense) {
        seg.t0 = t;
        seg.h = h;
        for (std::size_t i = 0; i < N; ++i) {
          const double ydiff = ynew[i] - y[i];
          const double bspl = h * k1[i] - ydiff;
          seg.r[0][i] = y[i];
          seg.r[1][i] = ydiff;
          seg.r[2][i] = bspl;
          seg.r[3][i] = ydiff - h * k7[i] - bspl;
          seg.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                             d7 * k7[i]);
        }
        while (next_sample < samples.size() && samples[next_sample] <= t_new) {
          const double ts = samples[next_sample++];
          record(ts, ts == t_new ? ynew : seg(ts));
        }
        if (out.dense) sol.segments.push_back(seg);
      }

      k1 = k7;
      y = ynew;
      t = t_new;
      if (every_step) record(t, y);

      double h_new = h / fac;
      if (last_rejected) h_new = std::min(h_new, h);
      last_rejected = false;
      h = std::min(h_new, cfg.max_step);

      if (!observer(t, y)) {
        sol.stopped_early = true;
        break;
      }
    } else {
      ++sol.rejected_steps;
      h /= std::min(1.0 / kMinFactor, fac11 / kSafety);
      last_rejected = true;
    }
  }

  if (next_sample < samples.size() && !sol.stopped_early) {
    throw std::invalid_argument("sample time after integration end");
  }
  if (out.final_only) record(t, y);
  sol.final_time = t;
  sol.final_state = y;
  return sol;
}

}  // namespace nlrc
