#include "nlrc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nlrc/dynamics.hpp"
#include "nlrc/robust.hpp"

namespace nlrc {

namespace {

using Point = std::vector<double>;

struct Vertex {
  Point x;
  double rank = 0.0;  // maximized
};

std::vector<double> axis(double lo, double hi, std::size_t n) {
  if (n == 1) return {0.5 * (lo + hi)};
  return linspace(lo, hi, n);
}

double diameter(const std::vector<Vertex>& simplex) {
  double d = 0.0;
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < simplex[0].x.size(); ++k) {
      const double diff = simplex[i].x[k] - simplex[0].x[k];
      s += diff * diff;
    }
    d = std::max(d, std::sqrt(s));
  }
  return d;
}

Point combine(const Point& a, const Point& b, double t) {
  // a + t (b - a)
  Point out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + t * (b[k] - a[k]);
  return out;
}

class BudgetExhausted {};

struct Score {
  double value = 0.0;
  bool valid = false;
};

Score score_design(std::span<const double> coefficients, const OptimizeSpec& spec,
                   std::size_t delta0_points, std::size_t beta_points) {
  RobustDesign design;
  design.epsilon = spec.epsilon;
  design.T = spec.T;
  design.coefficients.assign(coefficients.begin(), coefficients.end());
  const auto solution = std::make_shared<const DesignSolution>(solve_alpha(design));
  if (!solution->valid) return {};

  try {
    const Pulse pulse = make_robust_pulse(design, solution, spec.params);
    const auto d0 = axis(spec.zone.delta0_min, spec.zone.delta0_max, delta0_points);
    const auto beta = axis(spec.zone.beta_min, spec.zone.beta_max, beta_points);
    ScanOptions opts;
    opts.params = spec.params;
    opts.integrator = spec.integrator;
    opts.jobs = spec.jobs;
    const ScanResult scan = scan_2d(pulse, d0, beta, opts);
    double value = std::accumulate(scan.fidelity.begin(), scan.fidelity.end(), 0.0) /
                   static_cast<double>(scan.fidelity.size());
    if (spec.area_penalty > 0.0) {
      value -= spec.area_penalty * std::max(0.0, design_area(design, *solution) - spec.area_cap);
    }
    return {value, true};
  } catch (const std::runtime_error&) {
    // Step-size underflow or similar: treat as an unusable design.
    return {};
  }
}

}  // namespace

void OptimizeSpec::validate() const {
  if (n < 1) throw std::invalid_argument("optimize needs n >= 1");
  if (budget < 1) throw std::invalid_argument("optimize budget must be positive");
  if (delta0_points < 1 || beta_points < 1) {
    throw std::invalid_argument("objective grid needs at least one point per axis");
  }
  if (!(zone.delta0_min <= zone.delta0_max) || !(zone.beta_min <= zone.beta_max)) {
    throw std::invalid_argument("optimize zone bounds are inverted");
  }
  if (!(1.0 + zone.beta_min > 0.0)) throw std::invalid_argument("zone contains 1 + beta <= 0");
  if (!(initial_step > 0.0) || !(restart_scale > 0.0) || !(restart_diameter > 0.0)) {
    throw std::invalid_argument("simplex scales must be positive");
  }
}

double objective_on_grid(std::span<const double> coefficients, const OptimizeSpec& spec,
                         std::size_t delta0_points, std::size_t beta_points) {
  return score_design(coefficients, spec, delta0_points, beta_points).value;
}

double objective(std::span<const double> coefficients, const OptimizeSpec& spec) {
  return objective_on_grid(coefficients, spec, spec.delta0_points, spec.beta_points);
}

OptimizeResult optimize(const OptimizeSpec& spec, std::span<const double> initial) {
  spec.validate();
  if (initial.size() != spec.n) {
    throw std::invalid_argument("initial coefficient vector must have length n");
  }

  OptimizeResult result;
  result.best.assign(initial.begin(), initial.end());
  result.best_value = -std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  bool best_valid = false;
  auto evaluate = [&](const Point& x) {
    if (result.evaluations >= spec.budget) throw BudgetExhausted{};
    const Score sc = score_design(x, spec, spec.delta0_points, spec.beta_points);
    const double v = sc.value;
    ++result.evaluations;
    // A valid design always displaces an invalid incumbent.
    const bool better = sc.valid == best_valid ? v > result.best_value : sc.valid;
    if (better) {
      result.best_value = v;
      result.best = x;
      best_valid = sc.valid;
    }
    result.trace.push_back({result.evaluations - 1, x, v, result.best_value});
    // Invalid designs rank below every valid one inside the simplex.
    return Vertex{x, sc.valid ? v : std::numeric_limits<double>::lowest()};
  };
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.rank > b.rank; };

  const std::size_t n = spec.n;
  try {
    std::vector<Vertex> simplex;
    simplex.push_back(evaluate(Point(initial.begin(), initial.end())));
    for (std::size_t i = 0; i < n; ++i) {
      Point x(initial.begin(), initial.end());
      x[i] += spec.initial_step;
      simplex.push_back(evaluate(x));
    }

    std::size_t stale_restarts = 0;
    double best_at_restart = result.best_value;
    for (;;) {
      std::stable_sort(simplex.begin(), simplex.end(), by_value);

      if (diameter(simplex) < spec.restart_diameter) {
        if (result.best_value > best_at_restart + 1e-9) {
          stale_restarts = 0;
        } else if (++stale_restarts > spec.max_stale_restarts) {
          break;
        }
        best_at_restart = result.best_value;
        ++result.restarts;
        const Point centre = result.best;
        // Each stale restart doubles the jump so a stuck search can leave its basin.
        const double scale = spec.restart_scale * std::ldexp(1.0, static_cast<int>(stale_restarts));
        simplex.clear();
        simplex.push_back(
            {centre, best_valid ? result.best_value : std::numeric_limits<double>::lowest()});
        for (std::size_t i = 0; i < n; ++i) {
          Point x = centre;
          for (std::size_t k = 0; k < n; ++k) {
            x[k] += scale * ((k == i ? 1.0 : 0.0) * (unit(rng) >= 0 ? 1.0 : -1.0) +
                             0.3 * unit(rng));
          }
          simplex.push_back(evaluate(x));
        }
        continue;
      }

      Point centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / static_cast<double>(n);
      }
      const Vertex& worst = simplex.back();

      const Vertex reflected = evaluate(combine(centroid, worst.x, -1.0));
      if (reflected.rank > simplex.front().rank) {
        const Vertex expanded = evaluate(combine(centroid, worst.x, -2.0));
        simplex.back() = expanded.rank > reflected.rank ? expanded : reflected;
        continue;
      }
      if (reflected.rank > simplex[n - 1].rank) {
        simplex.back() = reflected;
        continue;
      }
      if (reflected.rank > worst.rank) {
        const Vertex outside = evaluate(combine(centroid, reflected.x, 0.5));
        if (outside.rank >= reflected.rank) {
          simplex.back() = outside;
          continue;
        }
      } else {
        const Vertex inside = evaluate(combine(centroid, worst.x, 0.5));
        if (inside.rank > worst.rank) {
          simplex.back() = inside;
          continue;
        }
      }
      for (std::size_t i = 1; i <= n; ++i) {
        simplex[i] = evaluate(combine(simplex[0].x, simplex[i].x, 0.5));
      }
    }
  } catch (const BudgetExhausted&) {
    result.budget_exhausted = true;
  }

  if (spec.rescore_delta0_points > 0 && spec.rescore_beta_points > 0) {
    result.rescored_value =
        objective_on_grid(result.best, spec, spec.rescore_delta0_points, spec.rescore_beta_points);
  }
  return result;
}

}  // namespace nlrc
