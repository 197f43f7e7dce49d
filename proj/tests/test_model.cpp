#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "nlrc/errors.hpp"
#include "nlrc/model.hpp"

using namespace nlrc;
using std::numbers::pi;

namespace {

AmplitudeState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0), ph(-pi, pi);
  const double p = u(rng);
  const std::complex<double> b1 = std::polar(std::sqrt(1.0 - p), ph(rng));
  const std::complex<double> b2 = std::polar(std::sqrt(0.5 * p), ph(rng));
  return AmplitudeState::from_complex(b1, b2);
}

ControlSample random_control(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> om(0.0, 5.0), de(-5.0, 5.0);
  return {om(rng), de(rng)};
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("undriven ground state is stationary") {
  const AmplitudeState d = amplitude_rhs(AmplitudeState{}, {0.0, 0.0});
  CHECK(d.re1 == 0.0);
  CHECK(d.im1 == 0.0);
  CHECK(d.re2 == 0.0);
  CHECK(d.im2 == 0.0);
}

TEST_CASE("resonant drive from the ground state") {
  const AmplitudeState d = amplitude_rhs(AmplitudeState{}, {1.0, 0.0});
  CHECK(d.re1 == 0.0);
  CHECK(d.im1 == 0.0);
  CHECK(d.re2 == 0.0);
  CHECK(d.im2 == doctest::Approx(-0.35355339059327373).epsilon(1e-15));
}

TEST_CASE("amplitude flow preserves the norm pointwise") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> kerr(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const AmplitudeState s = random_state(rng);
    const SystemParams params{kerr(rng), kerr(rng)};
    const AmplitudeState d = amplitude_rhs(s, random_control(rng), params);
    const double rate = (s.re1 * d.re1 + s.im1 * d.im1) + 2.0 * (s.re2 * d.re2 + s.im2 * d.im2);
    worst = std::max(worst, std::abs(rate));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("population is frozen without drive") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> de(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const AmplitudeState s = random_state(rng);
    const AmplitudeState d = amplitude_rhs(s, {0.0, de(rng)}, {0.3, -0.7});
    CHECK(std::abs(4.0 * (s.re2 * d.re2 + s.im2 * d.im2)) < 1e-12);
  }
}

TEST_CASE("angle equations at the equator") {
  const AngleState d = angle_rhs({pi / 2, pi / 2, 0.0}, {1.0, 0.0});
  CHECK(d.theta == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(std::abs(d.alpha) < 1e-15);
  CHECK(std::abs(d.gamma) < 1e-15);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> th(0.01, pi - 0.01);
  for (int i = 0; i < 50; ++i) {
    CHECK(angle_rhs({th(rng), 0.0, 0.3}, random_control(rng)).theta == 0.0);
  }
}

TEST_CASE("angle chart is singular at the ground state") {
  CHECK_THROWS_AS(angle_rhs({0.0, 0.0, 0.0}, {1.0, 0.0}), ChartSingularity);
  CHECK_THROWS_AS(angle_rhs({1e-13, 0.0, 0.0}, {1.0, 0.0}), ChartSingularity);
  CHECK_NOTHROW(angle_rhs({1e-6, 0.0, 0.0}, {1.0, 0.0}));
}

TEST_CASE("population rate matches the theta equation") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> th(0.01, pi - 0.01), al(-pi, pi);
  for (int i = 0; i < 500; ++i) {
    const AngleState s{th(rng), al(rng), al(rng)};
    const ControlSample c = random_control(rng);
    const double p = std::pow(std::sin(0.5 * s.theta), 2);
    const double via_theta =
        angle_rhs(s, c).theta * std::sin(0.5 * s.theta) * std::cos(0.5 * s.theta);
    CHECK(population_rate(p, s.alpha, c) == doctest::Approx(via_theta).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("angle equations are the amplitude equations in the angle chart") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> th(0.2, pi - 0.2), al(-3.0, 3.0), kerr(-1.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const AngleState s{th(rng), al(rng), al(rng)};
    const ControlSample c = random_control(rng);
    const SystemParams params{kerr(rng), kerr(rng)};
    const AngleState d = angle_rhs(s, c, params);

    // Chain rule: d b / dt = J(angles) * d angles / dt, evaluated by central differences.
    const double h = 1e-6;
    auto step = [&](double sign) {
      return angles_to_amplitudes({s.theta + sign * h * d.theta, s.alpha + sign * h * d.alpha,
                                   s.gamma + sign * h * d.gamma});
    };
    const AmplitudeState plus = step(1.0), minus = step(-1.0);
    const AmplitudeState expected = amplitude_rhs(angles_to_amplitudes(s), c, params);
    CHECK((plus.re1 - minus.re1) / (2 * h) == doctest::Approx(expected.re1).epsilon(1e-6).scale(10));
    CHECK((plus.im1 - minus.im1) / (2 * h) == doctest::Approx(expected.im1).epsilon(1e-6).scale(10));
    CHECK((plus.re2 - minus.re2) / (2 * h) == doctest::Approx(expected.re2).epsilon(1e-6).scale(10));
    CHECK((plus.im2 - minus.im2) / (2 * h) == doctest::Approx(expected.im2).epsilon(1e-6).scale(10));
  }
}

TEST_CASE("angle chart special points") {
  const AmplitudeState north = angles_to_amplitudes({0.0, 1.7, 0.0});
  CHECK(north.re1 == 1.0);
  CHECK(north.re2 == 0.0);
  CHECK(north.im2 == 0.0);

  const AmplitudeState target = angles_to_amplitudes({pi, 0.0, 0.0});
  CHECK(std::abs(target.b1()) < 1e-16);
  CHECK(target.re2 == doctest::Approx(std::sqrt(0.5)));
  CHECK(population(target) == doctest::Approx(1.0).epsilon(1e-15));

  const AmplitudeState equator = angles_to_amplitudes({pi / 2, 0.0, 0.0});
  CHECK(norm(equator) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(population(equator) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("angle chart round trip") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> th(0.01, pi - 0.01), al(-3.1, 3.1);
  for (int i = 0; i < 500; ++i) {
    const AngleState s{th(rng), al(rng), al(rng)};
    const AmplitudeState a = angles_to_amplitudes(s);
    CHECK(std::abs(norm(a) - 1.0) < 1e-15);
    const AngleState back = amplitudes_to_angles(a);
    CHECK(back.theta == doctest::Approx(s.theta).epsilon(1e-12));
    CHECK(angle_distance(back.alpha, s.alpha) < 1e-11);
    CHECK(angle_distance(back.gamma, s.gamma) < 1e-11);
  }
}

TEST_CASE("Bloch coordinates") {
  const BlochVector pole = to_bloch(AmplitudeState{});
  CHECK(pole.pi_x == 0.0);
  CHECK(pole.pi_y == 0.0);
  CHECK(pole.p == 0.0);

  const BlochVector eq = to_bloch(AngleState{pi / 2, 0.0, 0.0});
  CHECK(eq.pi_x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(eq.pi_y) < 1e-15);
  CHECK(eq.p == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(sphere_residual(eq)) < 1e-15);

  std::mt19937_64 rng(17);
  double worst_path = 0.0, worst_sphere = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const AmplitudeState s = random_state(rng);
    const BlochVector direct = to_bloch(s);
    const BlochVector via = to_bloch(amplitudes_to_angles(s));
    worst_path = std::max({worst_path, std::abs(direct.pi_x - via.pi_x),
                           std::abs(direct.pi_y - via.pi_y), std::abs(direct.p - via.p)});
    worst_sphere = std::max(worst_sphere, std::abs(sphere_residual(direct)));
    CHECK(direct.p >= 0.0);
    CHECK(direct.p <= 1.0);
  }
  CHECK(worst_path < 1e-12);
  CHECK(worst_sphere < 1e-10);
}

TEST_CASE("population is relative to the norm") {
  AmplitudeState s = angles_to_amplitudes({1.1, 0.4, 0.2});
  const double p = population(s);
  s.re1 *= 1.001;
  s.im1 *= 1.001;
  s.re2 *= 1.001;
  s.im2 *= 1.001;
  CHECK(population(s) == doctest::Approx(p).epsilon(1e-14));
}

TEST_CASE("angle helpers") {
  CHECK(wrap_angle(-0.5) == doctest::Approx(2 * pi - 0.5));
  CHECK(wrap_angle(7.0) == doctest::Approx(7.0 - 2 * pi));
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(angle_distance(0.1, 2 * pi - 0.1) == doctest::Approx(0.2));
  CHECK(angle_distance(pi, -pi) == doctest::Approx(0.0).scale(1.0));
}

}  // TEST_SUITE
