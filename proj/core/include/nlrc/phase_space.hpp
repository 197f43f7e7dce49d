#pragma once
//
// Classical phase-space analysis of the frozen-control flow in (p, alpha):
//
//   h(p, alpha) = -Delta/3 + Delta p / 2 + (Omega/2) (1 - p) sqrt(p) cos(alpha)
//
// with (I = p/2, alpha) canonical. The target p = 1 is a chart pole whose
// stability follows |Delta/Omega|; interior fixed points sit on alpha = 0 or
// pi. Kerr terms are not included here.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nlrc/model.hpp"

namespace nlrc {

enum class Stability { elliptic, hyperbolic, degenerate };

std::string_view to_string(Stability s);

struct FixedPoint {
  double p = 0.0;
  /// 0 or pi for interior points; empty for the chart poles p = 0, 1.
  std::optional<double> alpha;
  Stability kind = Stability::elliptic;
  bool is_pole = false;
};

struct PhasePoint {
  double p = 0.0;
  double alpha = 0.0;
};

struct SeparatrixCurve {
  /// One closed loop through the pole p = 1, ordered for plotting.
  std::vector<PhasePoint> samples;
  double energy = 0.0;
};

/// Constant-energy orbit of the frozen flow.
struct Contour {
  std::vector<PhasePoint> samples;
  double energy = 0.0;
};

struct PortraitOptions {
  std::size_t separatrix_samples = 201;
  std::size_t contour_count = 0;
  std::size_t contour_samples = 200;
  /// Integration time per contour; zero picks 4 pi / max(Omega, |Delta|).
  double contour_duration = 0.0;
};

struct Portrait {
  ControlSample control;
  std::vector<FixedPoint> fixed_points;
  std::optional<SeparatrixCurve> separatrix;
  std::vector<Contour> contours;
};

double hamiltonian(double p, double alpha, const ControlSample& c);

/// (dp/dt, dalpha/dt) of the frozen flow, regular for p in (0, 1].
std::array<double, 2> phase_flow(double p, double alpha, const ControlSample& c);

/// Row-major d(pdot, alphadot)/d(p, alpha).
std::array<double, 4> flow_jacobian(double p, double alpha, const ControlSample& c);

/// Elliptic for a purely imaginary eigenvalue pair, hyperbolic for a real
/// pair, degenerate when both eigenvalues vanish.
Stability classify_jacobian(const std::array<double, 4>& j);

/// Stability of the target pole p = 1. Requires Omega > 0; |Delta/Omega| = 1
/// is reported as degenerate.
Stability classify_target(const ControlSample& c);

/// All fixed points of the frozen flow. For Omega = 0 these are the two
/// elliptic poles; otherwise the interior points plus the target pole (the
/// pole p = 0 is then only a coordinate singularity and is not listed).
std::vector<FixedPoint> fixed_points(const ControlSample& c);

/// The energy-Delta/6 curve sqrt(p) cos(alpha) = Delta/Omega through the
/// hyperbolic target, resampled uniformly in Bloch-space arc length. Throws
/// NoSeparatrix unless Omega > 0 and |Delta/Omega| < 1.
SeparatrixCurve separatrix(const ControlSample& c, std::size_t n_samples);

/// Polyline length of a phase curve measured in (Pi_x, Pi_y, p).
double arc_length(std::span<const PhasePoint> curve);

Portrait portrait(const ControlSample& c, const PortraitOptions& options = {});

}  // namespace nlrc
