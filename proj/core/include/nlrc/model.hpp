#pragma once
//
// State charts and equations of motion for the driven two-level model with a
// (1:2) resonance:
//
//   i db1/dt = -(1/3)[D] b1 + (Omega/sqrt2) conj(b1) b2
//   i db2/dt =  (1/3)[D] b2 + (Omega/(2 sqrt2)) b1^2,   D = Delta - La + 2 Ls |b2|^2
//
// with |b1|^2 + 2|b2|^2 = 1. Three charts describe the same state:
// complex amplitudes, angles (theta, alpha, gamma) and generalized Bloch
// coordinates (Pi_x, Pi_y, p). Everything here is a pure function.

#include <array>
#include <complex>

namespace nlrc {

/// Kerr coefficients. Both zero in the default model.
struct SystemParams {
  double lambda_a = 0.0;
  double lambda_s = 0.0;
};

/// Instantaneous field values. omega >= 0.
struct ControlSample {
  double omega = 0.0;
  double delta = 0.0;
};

/// Complex amplitudes kept as two real pairs.
struct AmplitudeState {
  double re1 = 1.0;
  double im1 = 0.0;
  double re2 = 0.0;
  double im2 = 0.0;

  static AmplitudeState from_complex(std::complex<double> b1, std::complex<double> b2) {
    return {b1.real(), b1.imag(), b2.real(), b2.imag()};
  }
  std::complex<double> b1() const { return {re1, im1}; }
  std::complex<double> b2() const { return {re2, im2}; }

  std::array<double, 4> to_array() const { return {re1, im1, re2, im2}; }
  static AmplitudeState from_array(const std::array<double, 4>& y) {
    return {y[0], y[1], y[2], y[3]};
  }
};

/// theta in [0, pi]; alpha and gamma are kept unwrapped.
struct AngleState {
  double theta = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;

  std::array<double, 3> to_array() const { return {theta, alpha, gamma}; }
  static AngleState from_array(const std::array<double, 3>& y) { return {y[0], y[1], y[2]}; }
};

struct BlochVector {
  double pi_x = 0.0;
  double pi_y = 0.0;
  double p = 0.0;
};

/// |b1|^2 + 2|b2|^2, equal to one on the physical manifold.
double norm(const AmplitudeState& s);

/// Population p = 2|b2|^2, taken relative to the current norm so that it
/// stays in [0, 1] even with integration drift.
double population(const AmplitudeState& s);

/// Time derivative of the amplitudes (real/imaginary split of the
/// Schrodinger-type equations). Preserves the norm exactly.
AmplitudeState amplitude_rhs(const AmplitudeState& s, const ControlSample& c,
                             const SystemParams& params = {});

/// Time derivative of the angles. Throws ChartSingularity when
/// sin(theta/2) < 1e-12.
AngleState angle_rhs(const AngleState& s, const ControlSample& c,
                     const SystemParams& params = {});

/// dp/dt = Omega (1 - p) sqrt(p) sin(alpha).
double population_rate(double p, double alpha, const ControlSample& c);

AmplitudeState angles_to_amplitudes(const AngleState& s);

/// Inverse chart map. alpha and gamma come back in (-pi, pi]; an angle that
/// is undefined at a pole (alpha when b1 or b2 vanishes, gamma when b1
/// vanishes) is reported as 0.
AngleState amplitudes_to_angles(const AmplitudeState& s);

BlochVector to_bloch(const AmplitudeState& s);
BlochVector to_bloch(const AngleState& s);
BlochVector bloch_from(double p, double alpha);

/// Residual of the sphere equation Pi_x^2 + Pi_y^2 - 8 (1-p)^2 p.
double sphere_residual(const BlochVector& v);

/// Maps an angle to [0, 2pi). Presentation only; integrators keep angles
/// unwrapped.
double wrap_angle(double a);

/// Distance between two angles on the circle, in [0, pi].
double angle_distance(double a, double b);

}  // namespace nlrc
