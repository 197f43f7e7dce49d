#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nlrc/integrator.hpp"
#include "nlrc/model.hpp"
#include "nlrc/robustness.hpp"

namespace nlrc {

/// Search over the expansion coefficients C_1..C_n of a robust design,
/// maximizing the mean final population over a (delta0, beta) zone.
struct OptimizeSpec {
  std::size_t n = 1;
  Zone zone{-0.6, 0.6, 0.0, 0.0};
  std::size_t delta0_points = 13;
  std::size_t beta_points = 1;
  double epsilon = 0.03;
  double T = 1.0;
  std::size_t budget = 500;
  std::uint64_t seed = 1;
  /// Score is reduced by area_penalty * max(0, area - area_cap).
  double area_penalty = 0.0;
  double area_cap = 0.0;

  // Coefficients are O(1); a unit first step reaches past the nearest local basin.
  double initial_step = 1.0;
  double restart_scale = 0.1;
  double restart_diameter = 1e-4;
  /// Stop after this many consecutive restarts that do not improve the best.
  /// Each stale restart doubles the restart jump.
  std::size_t max_stale_restarts = 4;

  /// Optional finer grid on which the best design is re-scored at the end.
  std::size_t rescore_delta0_points = 0;
  std::size_t rescore_beta_points = 0;

  SystemParams params;
  IntegratorConfig integrator;
  unsigned jobs = 0;

  void validate() const;
};

/// Mean final population over the zone grid for coefficients C, minus
/// the optional area penalty. Designs whose alpha(theta) is invalid, or whose
/// dynamics cannot be integrated, score 0.
double objective(std::span<const double> coefficients, const OptimizeSpec& spec);

/// Same objective on an explicit grid resolution.
double objective_on_grid(std::span<const double> coefficients, const OptimizeSpec& spec,
                         std::size_t delta0_points, std::size_t beta_points);

struct TraceEntry {
  std::size_t index = 0;
  std::vector<double> coefficients;
  double value = 0.0;
  double best_so_far = 0.0;
};

struct OptimizeResult {
  std::vector<double> best;
  double best_value = 0.0;
  std::optional<double> rescored_value;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  bool budget_exhausted = false;
  std::vector<TraceEntry> trace;
};

/// Nelder-Mead simplex (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5) with seeded restarts whenever the simplex diameter drops
/// below spec.restart_diameter. Deterministic for a given spec.
OptimizeResult optimize(const OptimizeSpec& spec, std::span<const double> initial);

}  // namespace nlrc
