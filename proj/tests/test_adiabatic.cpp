#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nlrc/adiabatic.hpp"
#include "nlrc/phase_space.hpp"
#include "nlrc/robustness.hpp"

using namespace nlrc;
using std::numbers::pi;

TEST_SUITE("adiabatic") {

TEST_CASE("controls at the pulse centre") {
  const TrackingSample s = tracking_controls({10.0, 1.0}, 0.0);
  CHECK(s.control.omega == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(s.p_track == doctest::Approx(0.5).epsilon(1e-15));
  // Delta = -(Omega / (2 sqrt(1/2))) (1 - 3/2) = Omega0 sqrt(2) / 4.
  CHECK(s.control.delta == doctest::Approx(3.5355339059327373).epsilon(1e-14));
}

TEST_CASE("tracked population matches the closed form") {
  const TrackingDesign d{3.0, 0.7};
  for (double t = -3.5; t <= 3.5; t += 0.25) {
    const double x = t / d.T;
    const double closed = std::pow(std::sin(0.5 * std::atan(std::sinh(x)) + pi / 4), 2);
    const TrackingSample s = tracking_controls(d, t);
    CHECK(s.p_track == doctest::Approx(closed).epsilon(1e-13).scale(1.0));
    CHECK(s.control.omega == doctest::Approx(3.0 / std::cosh(x)).epsilon(1e-14));
  }
}

TEST_CASE("tracked population is strictly increasing") {
  const TrackingDesign d;
  double prev = -1.0;
  // Beyond |t| ~ 16T the population rounds to exactly 0 or 1.
  for (double t = -16.0; t <= 16.0; t += 0.05) {
    const double p = tracking_controls(d, t).p_track;
    CHECK(p > prev);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    prev = p;
  }
}

TEST_CASE("detuning limits") {
  const TrackingDesign d{10.0, 1.0};
  for (double t : {-30.0, -100.0, -700.0, -1e4}) {
    const ControlSample c = tracking_controls(d, t).control;
    CHECK(std::isfinite(c.delta));
    CHECK(c.delta == doctest::Approx(-10.0).epsilon(1e-10));
  }
  double prev = 0.0;
  for (double t : {1.0, 3.0, 10.0, 30.0, 300.0}) {
    const ControlSample c = tracking_controls(d, t).control;
    const double ratio = c.delta / c.omega;
    CHECK(ratio <= 1.0);
    CHECK(ratio >= prev);
    // the gap 1 - ratio ~ e^{-2t} drops below roundoff past t ~ 18
    if (t <= 10.0) CHECK(ratio < 1.0);
    prev = ratio;
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-12));
  const ControlSample far = tracking_controls(d, 1e4).control;
  CHECK(std::isfinite(far.delta));
  CHECK(std::isfinite(far.omega));
}

TEST_CASE("detuning inverts the fixed-point condition") {
  for (auto branch : {TrackingBranch::alpha_zero, TrackingBranch::alpha_pi}) {
    const TrackingDesign d{10.0, 1.0, branch};
    const double alpha = branch == TrackingBranch::alpha_zero ? 0.0 : pi;
    for (double t = -20.0; t <= 20.0; t += 0.1) {
      const TrackingSample s = tracking_controls(d, t);
      if (!(s.p_track < 1.0 - 1e-9)) continue;
      bool found = false;
      for (const auto& fp : fixed_points(s.control)) {
        if (fp.is_pole || std::abs(*fp.alpha - alpha) > 1e-12) continue;
        // far out the Jacobian is nearly nilpotent and reads as degenerate
        if (std::abs(t) <= 8.0) CHECK(fp.kind == Stability::elliptic);
        CHECK(fp.kind != Stability::hyperbolic);
        CHECK(std::abs(fp.p - s.p_track) < 1e-9);
        found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("pulse area") {
  const TrackingDesign d{10.0, 1.0};
  CHECK(tracking_area(d) == doctest::Approx(10 * pi));
  const Pulse pulse = make_tracking_pulse(d);
  CHECK(pulse.default_span().start == -16.0);
  CHECK(pulse.default_span().end == 16.0);
  CHECK(pulse_area(pulse, {-8.0, 8.0}) == doctest::Approx(10 * pi).epsilon(1e-3));
  CHECK(pulse_area(pulse) == doctest::Approx(10 * pi).epsilon(1e-6));
  CHECK(pulse_area(zero_pulse({-8.0, 8.0})) == 0.0);
}

TEST_CASE("unperturbed tracking transfer") {
  const double p = final_population(make_tracking_pulse({10.0, 1.0}));
  CHECK(p >= 0.99);
  CHECK(p == doctest::Approx(0.99749521971).epsilon(1e-9));
  CHECK(p < 1.0);
}

TEST_CASE("design validation") {
  CHECK_THROWS_AS(TrackingDesign({0.0, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TrackingDesign({1.0, -1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_tracking_pulse({-1.0, 1.0}), std::invalid_argument);
}

}  // TEST_SUITE
