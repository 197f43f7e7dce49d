#include "nlrc/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlrc/dynamics.hpp"
#include "nlrc/errors.hpp"

namespace nlrc {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonnegative(const ControlSample& c) {
  if (!(c.omega >= 0.0)) throw std::invalid_argument("Omega must be non-negative");
}

/// Positive root u = sqrt(p) of 3 Omega u^2 - 2 sigma Delta u - Omega = 0.
double interior_root(double omega, double delta, double sigma) {
  const double sd = sigma * delta;
  const double rad = std::sqrt(delta * delta + 3.0 * omega * omega);
  return sd >= 0.0 ? (sd + rad) / (3.0 * omega) : omega / (rad - sd);
}

PhasePoint separatrix_point(double ratio, double s) {
  // s in [-1, 1]; |s| = q with p = r^2 + (1 - r^2) q^2 linearizes alpha
  // near the apex p = r^2.
  const double q = std::abs(s);
  const double p = ratio * ratio + (1.0 - ratio * ratio) * q * q;
  const double c = p > 0.0 ? std::clamp(ratio / std::sqrt(p), -1.0, 1.0) : 0.0;
  const double a = std::acos(c);
  if (s >= 0.0) return {p, a};
  return {p, ratio < 0.0 ? 2.0 * kPi - a : -a};
}

double bloch_distance(const PhasePoint& a, const PhasePoint& b) {
  const BlochVector u = bloch_from(a.p, a.alpha);
  const BlochVector v = bloch_from(b.p, b.alpha);
  return std::sqrt((u.pi_x - v.pi_x) * (u.pi_x - v.pi_x) + (u.pi_y - v.pi_y) * (u.pi_y - v.pi_y) +
                   (u.p - v.p) * (u.p - v.p));
}

}  // namespace

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::elliptic:
      return "elliptic";
    case Stability::hyperbolic:
      return "hyperbolic";
    case Stability::degenerate:
      return "degenerate";
  }
  return "unknown";
}

double hamiltonian(double p, double alpha, const ControlSample& c) {
  return -c.delta / 3.0 + 0.5 * c.delta * p + 0.5 * c.omega * (1.0 - p) * std::sqrt(p) *
                                                  std::cos(alpha);
}

std::array<double, 2> phase_flow(double p, double alpha, const ControlSample& c) {
  const double sq = std::sqrt(p);
  return {c.omega * (1.0 - p) * sq * std::sin(alpha),
          0.5 * c.omega * std::cos(alpha) * (1.0 - 3.0 * p) / sq + c.delta};
}

std::array<double, 4> flow_jacobian(double p, double alpha, const ControlSample& c) {
  const double sq = std::sqrt(p);
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double w = c.omega;
  return {w * sa * (1.0 - 3.0 * p) / (2.0 * sq), w * (1.0 - p) * sq * ca,
          -0.25 * w * ca * (1.0 + 3.0 * p) / (p * sq), -0.5 * w * sa * (1.0 - 3.0 * p) / sq};
}

Stability classify_jacobian(const std::array<double, 4>& j) {
  const double tr = j[0] + j[3];
  const double det = j[0] * j[3] - j[1] * j[2];
  const double disc = tr * tr - 4.0 * det;
  const double scale = std::max({std::abs(j[0]), std::abs(j[1]), std::abs(j[2]),
                                 std::abs(j[3]), 1e-300});
  if (std::abs(disc) <= 1e-14 * scale * scale) return Stability::degenerate;
  if (disc > 0.0) return Stability::hyperbolic;
  return std::abs(0.5 * tr) < 1e-9 ? Stability::elliptic : Stability::hyperbolic;
}

Stability classify_target(const ControlSample& c) {
  require_nonnegative(c);
  if (c.omega == 0.0) {
    throw std::invalid_argument("classify_target needs Omega > 0 (both poles are elliptic at 0)");
  }
  const double r = std::abs(c.delta / c.omega);
  if (r < 1.0) return Stability::hyperbolic;
  if (r > 1.0) return Stability::elliptic;
  return Stability::degenerate;
}

std::vector<FixedPoint> fixed_points(const ControlSample& c) {
  require_nonnegative(c);
  if (c.omega == 0.0) {
    return {{0.0, std::nullopt, Stability::elliptic, true},
            {1.0, std::nullopt, Stability::elliptic, true}};
  }
  std::vector<FixedPoint> out;
  for (const double sigma : {1.0, -1.0}) {
    const double u = interior_root(c.omega, c.delta, sigma);
    if (!(u > 0.0 && u < 1.0)) continue;
    const double p = u * u;
    const double alpha = sigma > 0.0 ? 0.0 : kPi;
    out.push_back({p, alpha, classify_jacobian(flow_jacobian(p, alpha, c)), false});
  }
  const Stability target = classify_target(c);
  out.push_back({1.0, std::nullopt,
                 target == Stability::hyperbolic ? Stability::hyperbolic : Stability::elliptic,
                 true});
  return out;
}

SeparatrixCurve separatrix(const ControlSample& c, std::size_t n_samples) {
  require_nonnegative(c);
  if (!(c.omega > 0.0) || !(std::abs(c.delta / c.omega) < 1.0)) {
    throw NoSeparatrix("no separatrix: requires Omega > 0 and |Delta/Omega| < 1");
  }
  if (n_samples < 3) throw std::invalid_argument("separatrix needs at least 3 samples");
  const double ratio = c.delta / c.omega;

  // Dense parameter sweep, then invert cumulative arc length.
  constexpr std::size_t kDense = 4001;
  std::vector<double> s(kDense), length(kDense, 0.0);
  for (std::size_t i = 0; i < kDense; ++i) {
    s[i] = -1.0 + 2.0 * static_cast<double>(i) / (kDense - 1);
  }
  for (std::size_t i = 1; i < kDense; ++i) {
    length[i] = length[i - 1] +
                bloch_distance(separatrix_point(ratio, s[i - 1]), separatrix_point(ratio, s[i]));
  }

  SeparatrixCurve curve;
  curve.energy = c.delta / 6.0;
  curve.samples.reserve(n_samples);
  const double total = length.back();
  for (std::size_t k = 0; k < n_samples; ++k) {
    double param = -1.0 + 2.0 * static_cast<double>(k) / (n_samples - 1);
    if (total > 0.0) {
      const double target = total * static_cast<double>(k) / (n_samples - 1);
      auto it = std::lower_bound(length.begin(), length.end(), target);
      const std::size_t hi = std::clamp<std::size_t>(it - length.begin(), 1, kDense - 1);
      const std::size_t lo = hi - 1;
      const double span = length[hi] - length[lo];
      const double w = span > 0.0 ? (target - length[lo]) / span : 0.0;
      param = s[lo] + w * (s[hi] - s[lo]);
    }
    curve.samples.push_back(separatrix_point(ratio, param));
  }
  return curve;
}

double arc_length(std::span<const PhasePoint> curve) {
  double total = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) total += bloch_distance(curve[i - 1], curve[i]);
  return total;
}

Portrait portrait(const ControlSample& c, const PortraitOptions& options) {
  Portrait out;
  out.control = c;
  out.fixed_points = fixed_points(c);
  if (c.omega > 0.0 && std::abs(c.delta / c.omega) < 1.0) {
    out.separatrix = separatrix(c, options.separatrix_samples);
  }
  if (options.contour_count == 0 || options.contour_samples < 2) return out;

  const double rate = std::max(c.omega, std::abs(c.delta));
  if (!(rate > 0.0)) return out;
  const double duration =
      options.contour_duration > 0.0 ? options.contour_duration : 4.0 * kPi / rate;
  const Pulse frozen("frozen", [c](double) { return c; }, {0.0, duration});
  const auto times = linspace(0.0, duration, options.contour_samples);
  IntegratorConfig cfg;
  cfg.max_step = duration / 50.0;

  for (std::size_t k = 1; k <= options.contour_count; ++k) {
    const double p0 = static_cast<double>(k) / static_cast<double>(options.contour_count + 1);
    const AngleState seed{2.0 * std::asin(std::sqrt(p0)), 0.5 * kPi, 0.0};
    const auto traj = simulate_amplitudes(frozen, {}, angles_to_amplitudes(seed),
                                          frozen.default_span(), cfg, times);
    Contour contour;
    contour.energy = hamiltonian(p0, seed.alpha, c);
    contour.samples.reserve(traj.size());
    for (const auto& st : traj.states) {
      const BlochVector b = to_bloch(st);
      contour.samples.push_back({b.p, std::atan2(b.pi_y, b.pi_x)});
    }
    out.contours.push_back(std::move(contour));
  }
  return out;
}

}  // namespace nlrc
