#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nlrc/adiabatic.hpp"
#include "nlrc/integrator.hpp"
#include "nlrc/model.hpp"
#include "nlrc/optimizer.hpp"
#include "nlrc/pulse.hpp"
#include "nlrc/robust.hpp"
#include "nlrc/robustness.hpp"

namespace nlrc::cli {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full default configuration. Every key a config file may set appears here;
/// anything else is rejected.
json default_config();

/// Overlays `patch` onto `base`. Unknown keys and type mismatches throw
/// ConfigError naming the offending path.
void merge_config(json& base, const json& patch, const std::string& path = "");

json load_config_file(const std::string& path);

/// Checks value ranges of the resolved config.
void validate_config(const json& cfg);

SystemParams system_params(const json& cfg);
IntegratorConfig integrator_config(const json& cfg);
Perturbation perturbation(const json& cfg);
TrackingDesign tracking_design(const json& cfg);
RobustDesign robust_design(const json& cfg);
/// Explicit span from the config, or nullopt for the pulse's default.
std::optional<TimeSpan> span(const json& cfg);
std::vector<double> grid_axis(const json& axis);
Zone zone(const json& z);
OptimizeSpec optimize_spec(const json& cfg);

}  // namespace nlrc::cli
