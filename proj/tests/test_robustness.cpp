#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "nlrc/adiabatic.hpp"
#include "nlrc/dynamics.hpp"
#include "nlrc/errors.hpp"
#include "nlrc/robust.hpp"
#include "nlrc/robustness.hpp"

using namespace nlrc;
using std::numbers::pi;

namespace {

Pulse c1_pulse() {
  RobustDesign d;
  d.coefficients = {-0.5};
  return make_robust_pulse(d);
}

}  // namespace

TEST_SUITE("robustness") {

TEST_CASE("perturbation is applied pointwise") {
  const Pulse base = make_tracking_pulse({});
  const Pulse same = perturb(base, {});
  const Pulse shifted = perturb(base, {0.6, 0.1});
  for (double t : {-3.0, 0.0, 1.2, 5.0}) {
    const ControlSample c = base(t);
    CHECK(same(t).omega == c.omega);
    CHECK(same(t).delta == c.delta);
    CHECK(shifted(t).omega == doctest::Approx(1.1 * c.omega));
    CHECK(shifted(t).delta == doctest::Approx(c.delta + 0.6));
    CHECK(shifted.nominal(t).omega == c.omega);
  }
  const Pulse twice = perturb(shifted, {-0.1, -0.5});
  CHECK(twice(0.3).omega == doctest::Approx(1.1 * 0.5 * base(0.3).omega));
  CHECK(twice(0.3).delta == doctest::Approx(base(0.3).delta + 0.5));
  CHECK_THROWS_AS(perturb(base, {0.0, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(perturb(base, {0.0, -1.5}), std::invalid_argument);
  CHECK_THROWS_AS(perturb(base, {NAN, 0.0}), std::invalid_argument);
}

TEST_CASE("detuning offset flips the separatrix condition at t = 1.2") {
  const TrackingSample s = tracking_controls({}, 1.2);
  const ControlSample c = perturb(make_tracking_pulse({}), {0.6, 0.0})(1.2);
  CHECK(c.omega == doctest::Approx(s.control.omega));
  CHECK(c.delta == doctest::Approx(s.control.delta + 0.6));
  CHECK(c.delta / c.omega > 1.0);
  const ControlSample m = perturb(make_tracking_pulse({}), {-0.6, 0.0})(1.2);
  CHECK(std::abs(m.delta / m.omega) < 1.0);
}

TEST_CASE("final population") {
  CHECK(final_population(zero_pulse()) == 0.0);
  CHECK(final_population(make_tracking_pulse({})) >= 0.99);
  const double designed = std::pow(std::cos(0.5 * pi * 0.03), 2);
  CHECK(std::abs(final_population(c1_pulse()) - designed) < 1e-3);
}

TEST_CASE("static detuning degrades resonant Rabi transfer") {
  const Pulse rabi = rabi_pulse(1.0, 10 * pi);
  CHECK(final_population(rabi) > final_population(perturb(rabi, {0.5, 0.0})));
}

TEST_CASE("tail of the integration window is converged") {
  const IntegratorConfig cfg;
  for (double d0 : {-0.6, 0.0, 0.6}) {
    const Pulse t = perturb(make_tracking_pulse({}), {d0, 0.0});
    CHECK(tail_drift(t, {}, t.default_span(), cfg) < 1e-6);
    const Pulse r = perturb(c1_pulse(), {d0, 0.0});
    CHECK(tail_drift(r, {}, r.default_span(), cfg) < 1e-6);
  }
}

TEST_CASE("one-dimensional scan") {
  const Pulse pulse = c1_pulse();
  const double zero = 0.0;
  const ScanResult single = scan_1d(pulse, std::span<const double>(&zero, 1));
  REQUIRE(single.fidelity.size() == 1);
  CHECK(single.fidelity[0] == final_population(pulse));
  CHECK(single.beta_axis == std::vector<double>{0.0});

  const auto grid = linspace(-0.6, 0.6, 7);
  const ScanResult r = scan_1d(pulse, grid);
  CHECK(r.fidelity.size() == 7);
  CHECK(r.meta.pulse == pulse.name());
  CHECK(r.meta.span.start == -4.0);
  CHECK(r.meta.rel_tol == 1e-10);
  for (std::size_t j = 0; j < 7; ++j) {
    CHECK(r.at(0, j) == final_population(perturb(pulse, {grid[j], 0.0})));
  }

  const std::vector<double> decreasing{0.1, 0.0};
  const std::vector<double> empty;
  CHECK_THROWS_AS(scan_1d(pulse, decreasing), std::invalid_argument);
  CHECK_THROWS_AS(scan_1d(pulse, empty), std::invalid_argument);
}

TEST_CASE("two-dimensional scan") {
  const Pulse pulse = make_tracking_pulse({});
  const double d0 = 0.3, b = -0.05;
  const ScanResult one = scan_2d(pulse, std::span<const double>(&d0, 1),
                                 std::span<const double>(&b, 1));
  CHECK(one.fidelity[0] == final_population(perturb(pulse, {d0, b})));

  const auto dg = linspace(-1.0, 1.0, 5), bg = linspace(-0.2, 0.2, 3);
  ScanOptions serial;
  serial.jobs = 1;
  ScanOptions threaded;
  threaded.jobs = 3;
  const ScanResult a = scan_2d(pulse, dg, bg, serial);
  const ScanResult c = scan_2d(pulse, dg, bg, threaded);
  REQUIRE(a.fidelity.size() == 15);
  CHECK(a.fidelity == c.fidelity);
  for (std::size_t i = 0; i < bg.size(); ++i) {
    for (std::size_t j = 0; j < dg.size(); ++j) {
      CHECK(a.at(i, j) == final_population(perturb(pulse, {dg[j], bg[i]})));
      CHECK(a.at(i, j) >= 0.0);
      CHECK(a.at(i, j) <= 1.0 - 1e-12);
    }
  }
  const std::vector<double> bad_beta{-1.0};
  CHECK_THROWS_AS(scan_2d(pulse, dg, bad_beta), std::invalid_argument);
}

TEST_CASE("scan honours an explicit span") {
  const Pulse pulse = make_tracking_pulse({});
  ScanOptions opts;
  opts.span = TimeSpan{-8.0, 8.0};
  const double zero = 0.0;
  const ScanResult r = scan_1d(pulse, std::span<const double>(&zero, 1), opts);
  CHECK(r.meta.span.end == 8.0);
  CHECK(r.fidelity[0] == final_population(pulse, {}, {-8.0, 8.0}, {}));
}

TEST_CASE("zone average") {
  ScanResult r;
  r.delta0_axis = {-1.0, 0.0, 1.0};
  r.beta_axis = {-0.1, 0.1};
  r.fidelity = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  CHECK(zone_average(r, {-1.0, 1.0, -0.1, 0.1}) == doctest::Approx(0.35));
  CHECK(zone_average(r, {-1.0, 0.0, 0.0, 0.1}) == doctest::Approx(0.45));
  // Open zone: only delta0 = 0 lies strictly inside.
  CHECK(zone_average(r, {-1.0, 1.0, -0.2, 0.2, true}) == doctest::Approx(0.35));
  CHECK(zone_average(r, {-1.0 + 1e-13, 1.0, -0.1, 0.1}) == doctest::Approx(0.35));
  CHECK_THROWS_AS(zone_average(r, {2.0, 3.0, 0.0, 0.0}), EmptyZone);
  CHECK_THROWS_AS(zone_average(r, {-1.0, 1.0, -0.1, 0.1, true}), EmptyZone);
}

TEST_CASE("scans are independent of the worker count") {
  const Pulse pulse = c1_pulse();
  const auto dg = linspace(-0.6, 0.6, 9), bg = linspace(-0.1, 0.1, 3);
  ScanOptions opts;
  opts.jobs = 1;
  const ScanResult ref = scan_2d(pulse, dg, bg, opts);
  for (unsigned jobs : {2u, 4u, 7u}) {
    opts.jobs = jobs;
    CHECK(scan_2d(pulse, dg, bg, opts).fidelity == ref.fidelity);
  }
}

}  // TEST_SUITE
