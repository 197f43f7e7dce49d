#include "nlrc/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlrc/dynamics.hpp"
#include "nlrc/errors.hpp"
#include "nlrc/parallel.hpp"

namespace nlrc {

namespace {

void require_grid(std::span<const double> grid, const char* what, bool increasing) {
  if (grid.empty()) throw std::invalid_argument(std::string(what) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw std::invalid_argument(std::string(what) + " grid not finite");
    if (increasing && i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument(std::string(what) + " grid must be strictly increasing");
    }
  }
}

}  // namespace

bool Zone::contains(double delta0, double beta) const {
  if (open) {
    return delta0 > delta0_min && delta0 < delta0_max && beta > beta_min && beta < beta_max;
  }
  // Grid coordinates produced by linspace can miss an edge by rounding.
  const double tol = 1e-12;
  return delta0 >= delta0_min - tol && delta0 <= delta0_max + tol && beta >= beta_min - tol &&
         beta <= beta_max + tol;
}

double final_population(const Pulse& pulse, const SystemParams& params, TimeSpan span,
                        const IntegratorConfig& cfg) {
  return population(propagate_amplitudes(pulse, params, AmplitudeState{}, span, cfg));
}

double final_population(const Pulse& pulse, const SystemParams& params,
                        const IntegratorConfig& cfg) {
  return final_population(pulse, params, pulse.default_span(), cfg);
}

double tail_drift(const Pulse& pulse, const SystemParams& params, TimeSpan span,
                  const IntegratorConfig& cfg) {
  TimeSpan longer = span;
  longer.end = span.end > 0.0 ? 2.0 * span.end : span.end + span.length();
  return std::abs(final_population(pulse, params, longer, cfg) -
                  final_population(pulse, params, span, cfg));
}

ScanResult scan_2d(const Pulse& pulse, std::span<const double> delta0_grid,
                   std::span<const double> beta_grid, const ScanOptions& options) {
  require_grid(delta0_grid, "delta0", false);
  require_grid(beta_grid, "beta", false);
  for (double b : beta_grid) {
    if (!(1.0 + b > 0.0)) throw std::invalid_argument("beta grid contains 1 + beta <= 0");
  }

  ScanResult result;
  result.delta0_axis.assign(delta0_grid.begin(), delta0_grid.end());
  result.beta_axis.assign(beta_grid.begin(), beta_grid.end());
  result.meta.pulse = pulse.name();
  result.meta.span = options.span.value_or(pulse.default_span());
  result.meta.rel_tol = options.integrator.rel_tol;
  result.meta.abs_tol = options.integrator.abs_tol;

  const std::size_t cols = delta0_grid.size();
  result.fidelity.assign(cols * beta_grid.size(), 0.0);
  parallel_for(result.fidelity.size(), options.jobs, [&](std::size_t idx) {
    const Pulse perturbed =
        perturb(pulse, {result.delta0_axis[idx % cols], result.beta_axis[idx / cols]});
    result.fidelity[idx] =
        final_population(perturbed, options.params, result.meta.span, options.integrator);
  });
  return result;
}

ScanResult scan_1d(const Pulse& pulse, std::span<const double> delta0_grid,
                   const ScanOptions& options) {
  require_grid(delta0_grid, "delta0", true);
  const double zero = 0.0;
  return scan_2d(pulse, delta0_grid, std::span<const double>(&zero, 1), options);
}

double zone_average(const ScanResult& result, const Zone& zone) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < result.beta_axis.size(); ++i) {
    for (std::size_t j = 0; j < result.delta0_axis.size(); ++j) {
      if (zone.contains(result.delta0_axis[j], result.beta_axis[i])) {
        sum += result.at(i, j);
        ++count;
      }
    }
  }
  if (count == 0) throw EmptyZone("no scan grid point lies inside the zone");
  return sum / static_cast<double>(count);
}

}  // namespace nlrc
