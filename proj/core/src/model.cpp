#include "nlrc/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlrc/errors.hpp"

namespace nlrc {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kChartGuard = 1e-12;

double principal(double a) { return std::remainder(a, kTwoPi); }

}  // namespace

double norm(const AmplitudeState& s) {
  return s.re1 * s.re1 + s.im1 * s.im1 + 2.0 * (s.re2 * s.re2 + s.im2 * s.im2);
}

double population(const AmplitudeState& s) {
  const double two_b2 = 2.0 * (s.re2 * s.re2 + s.im2 * s.im2);
  const double b1 = s.re1 * s.re1 + s.im1 * s.im1;
  const double n = b1 + two_b2;
  if (n <= 0.0) return 0.0;
  // 1 - |b1|^2/n keeps relative accuracy of 1 - p near the target pole.
  return two_b2 < b1 ? two_b2 / n : 1.0 - b1 / n;
}

AmplitudeState amplitude_rhs(const AmplitudeState& s, const ControlSample& c,
                             const SystemParams& params) {
  const double x1 = s.re1, y1 = s.im1, x2 = s.re2, y2 = s.im2;
  const double d = (c.delta - params.lambda_a +
                    2.0 * params.lambda_s * (x2 * x2 + y2 * y2)) / 3.0;
  const double k = c.omega / kSqrt2;
  const double m = c.omega / (2.0 * kSqrt2);

  // conj(b1) b2 = P + iQ,  b1^2 = R + iS
  const double P = x1 * x2 + y1 * y2;
  const double Q = x1 * y2 - y1 * x2;
  const double R = x1 * x1 - y1 * y1;
  const double S = 2.0 * x1 * y1;

  return {-d * y1 + k * Q, d * x1 - k * P, d * y2 + m * S, -d * x2 - m * R};
}

AngleState angle_rhs(const AngleState& s, const ControlSample& c, const SystemParams& params) {
  const double sh = std::sin(0.5 * s.theta);
  const double ch = std::cos(0.5 * s.theta);
  if (std::abs(sh) < kChartGuard) {
    throw ChartSingularity("angle chart is singular at theta = " + std::to_string(s.theta),
                           s.theta);
  }
  const double sin_a = std::sin(s.alpha);
  const double cos_a = std::cos(s.alpha);
  const double detuning = c.delta - params.lambda_a + params.lambda_s * sh * sh;

  return {c.omega * sin_a * ch,
          0.5 * c.omega * cos_a * (1.0 - 3.0 * sh * sh) / sh + detuning,
          0.5 * c.omega * cos_a * sh - detuning / 3.0};
}

double population_rate(double p, double alpha, const ControlSample& c) {
  return c.omega * (1.0 - p) * std::sqrt(p) * std::sin(alpha);
}

AmplitudeState angles_to_amplitudes(const AngleState& s) {
  const double ch = std::cos(0.5 * s.theta);
  const double sh = std::sin(0.5 * s.theta);
  const double phase2 = s.alpha + 2.0 * s.gamma;
  return {ch * std::cos(s.gamma), -ch * std::sin(s.gamma), sh / kSqrt2 * std::cos(phase2),
          -sh / kSqrt2 * std::sin(phase2)};
}

AngleState amplitudes_to_angles(const AmplitudeState& s) {
  const double a1 = std::hypot(s.re1, s.im1);
  const double a2 = std::hypot(s.re2, s.im2);
  AngleState out;
  out.theta = 2.0 * std::atan2(kSqrt2 * a2, a1);
  out.gamma = a1 > 0.0 ? -std::atan2(s.im1, s.re1) : 0.0;
  out.alpha = (a2 > 0.0 && a1 > 0.0) ? principal(-std::atan2(s.im2, s.re2) - 2.0 * out.gamma)
                                     : 0.0;
  return out;
}

BlochVector bloch_from(double p, double alpha) {
  const double r = 2.0 * kSqrt2 * (1.0 - p) * std::sqrt(p);
  return {r * std::cos(alpha), r * std::sin(alpha), p};
}

BlochVector to_bloch(const AngleState& s) {
  const double sh = std::sin(0.5 * s.theta);
  return bloch_from(sh * sh, s.alpha);
}

BlochVector to_bloch(const AmplitudeState& s) {
  const double n = norm(s);
  const double scale = n > 0.0 ? 1.0 / std::sqrt(n) : 1.0;
  const std::complex<double> b1 = s.b1() * scale;
  const std::complex<double> b2 = s.b2() * scale;
  const std::complex<double> w = b1 * b1 * std::conj(b2);
  return {4.0 * w.real(), 4.0 * w.imag(), population(s)};
}

double sphere_residual(const BlochVector& v) {
  return v.pi_x * v.pi_x + v.pi_y * v.pi_y - 8.0 * (1.0 - v.p) * (1.0 - v.p) * v.p;
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}

double angle_distance(double a, double b) { return std::abs(principal(a - b)); }

}  // namespace nlrc
