#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nlrc/integrator.hpp"
#include "nlrc/model.hpp"
#include "nlrc/pulse.hpp"

namespace nlrc {

struct ScanOptions {
  SystemParams params;
  IntegratorConfig integrator;
  /// Defaults to the pulse's own span.
  std::optional<TimeSpan> span;
  /// Worker threads; 0 = default_worker_count().
  unsigned jobs = 0;
};

struct ScanMeta {
  std::string pulse;
  TimeSpan span;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
};

/// Final populations on a (delta0, beta) grid, stored row-major with one row
/// per beta value.
struct ScanResult {
  std::vector<double> delta0_axis;
  std::vector<double> beta_axis;
  std::vector<double> fidelity;
  ScanMeta meta;

  double at(std::size_t beta_index, std::size_t delta0_index) const {
    return fidelity[beta_index * delta0_axis.size() + delta0_index];
  }
};

/// Rectangular region of the (delta0, beta) plane. Bounds are inclusive
/// unless `open` is set.
struct Zone {
  double delta0_min = 0.0;
  double delta0_max = 0.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
  bool open = false;

  bool contains(double delta0, double beta) const;
};

/// p(t_f) = 2|b2|^2 after integrating from b1 = 1.
double final_population(const Pulse& pulse, const SystemParams& params, TimeSpan span,
                        const IntegratorConfig& cfg);
double final_population(const Pulse& pulse, const SystemParams& params = {},
                        const IntegratorConfig& cfg = {});

/// Change of the final population when the end of the span is pushed from
/// t_f to 2 t_f (or extended by the span length when t_f <= 0).
double tail_drift(const Pulse& pulse, const SystemParams& params, TimeSpan span,
                  const IntegratorConfig& cfg);

/// Static-detuning profile at beta = 0. The grid must be non-empty and
/// strictly increasing.
ScanResult scan_1d(const Pulse& pulse, std::span<const double> delta0_grid,
                   const ScanOptions& options = {});

ScanResult scan_2d(const Pulse& pulse, std::span<const double> delta0_grid,
                   std::span<const double> beta_grid, const ScanOptions& options = {});

/// Arithmetic mean of the grid points inside the zone. Throws EmptyZone when
/// no grid point falls inside.
double zone_average(const ScanResult& result, const Zone& zone);

}  // namespace nlrc
