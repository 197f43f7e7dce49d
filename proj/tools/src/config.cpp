#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nlrc/dynamics.hpp"

namespace nlrc::cli {

namespace {

const char* type_label(const json& j) {
  if (j.is_null()) return "null";
  if (j.is_boolean()) return "boolean";
  if (j.is_number()) return "number";
  if (j.is_string()) return "string";
  if (j.is_array()) return "array";
  return "object";
}

double number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  return v.get<double>();
}

std::size_t count(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> numbers(const json& v, const std::string& what) {
  if (!v.is_array()) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError(what + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void require_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& what) {
  if (!obj.is_object()) throw ConfigError(what + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ConfigError("unknown key '" + what + "." + k + "'");
  }
  for (const char* key : keys) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + what + "." + key + "'");
  }
}

}  // namespace

json default_config() {
  return json{
      {"pulse",
       {{"kind", "tracking"},
        {"tracking", {{"omega0", 10.0}, {"T", 1.0}, {"branch", "alpha_zero"}}},
        {"robust",
         {{"epsilon", 0.03}, {"coefficients", {-0.5}}, {"T", 1.0}, {"alpha_sign", 1}}},
        {"rabi", {{"omega", 1.0}, {"area", std::numbers::pi}}},
        {"zero", {{"start", 0.0}, {"end", 1.0}}}}},
      {"perturbation", {{"delta0", 0.0}, {"beta", 0.0}}},
      {"system", {{"lambda_a", 0.0}, {"lambda_s", 0.0}}},
      {"integrator", {{"rel_tol", 1e-10}, {"abs_tol", 1e-10}, {"max_step", 0.1}}},
      {"span", nullptr},
      {"samples", 401},
      {"jobs", 0},
      {"portrait",
       {{"source", "pulse"},
        {"t", 1.2},
        {"omega", 1.0},
        {"delta", 0.0},
        {"separatrix_samples", 201},
        {"contours", 8},
        {"contour_samples", 200}}},
      {"scan",
       {{"delta0", {{"min", -0.6}, {"max", 0.6}, {"points", 61}}},
        {"beta", {{"min", 0.0}, {"max", 0.0}, {"points", 1}}},
        {"zone", nullptr}}},
      {"optimize",
       {{"n", 1},
        {"initial", nullptr},
        {"zone", {{"delta0_min", -0.6}, {"delta0_max", 0.6}, {"beta_min", 0.0}, {"beta_max", 0.0}}},
        {"delta0_points", 13},
        {"beta_points", 1},
        {"epsilon", 0.03},
        {"T", 1.0},
        {"budget", 500},
        {"seed", 1},
        {"area_penalty", 0.0},
        {"area_cap", 0.0},
        {"rescore_delta0_points", 61},
        {"rescore_beta_points", 1}}},
  };
}

void merge_config(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) throw ConfigError("config" + (path.empty() ? "" : " '" + path + "'") +
                                            " must be a JSON object");
  for (const auto& [key, value] : patch.items()) {
    const std::string where = path.empty() ? key : path + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown config key '" + where + "'");
    json& slot = base[key];
    if (slot.is_null()) {
      slot = value;
    } else if (slot.is_object()) {
      merge_config(slot, value, where);
    } else if (slot.is_number() != value.is_number() ||
               (!slot.is_number() && slot.type() != value.type())) {
      throw ConfigError("config key '" + where + "' expects " + type_label(slot) + ", got " +
                        type_label(value));
    } else {
      slot = value;
    }
  }
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
}

SystemParams system_params(const json& cfg) {
  const json& s = cfg.at("system");
  return {number(s, "lambda_a"), number(s, "lambda_s")};
}

IntegratorConfig integrator_config(const json& cfg) {
  const json& i = cfg.at("integrator");
  IntegratorConfig out;
  out.rel_tol = number(i, "rel_tol");
  out.abs_tol = number(i, "abs_tol");
  out.max_step = number(i, "max_step");
  out.validate();
  return out;
}

Perturbation perturbation(const json& cfg) {
  const json& p = cfg.at("perturbation");
  return {number(p, "delta0"), number(p, "beta")};
}

TrackingDesign tracking_design(const json& cfg) {
  const json& t = cfg.at("pulse").at("tracking");
  TrackingDesign d;
  d.omega0 = number(t, "omega0");
  d.T = number(t, "T");
  const std::string branch = t.at("branch").get<std::string>();
  if (branch == "alpha_zero") {
    d.branch = TrackingBranch::alpha_zero;
  } else if (branch == "alpha_pi") {
    d.branch = TrackingBranch::alpha_pi;
  } else {
    throw ConfigError("pulse.tracking.branch must be alpha_zero or alpha_pi");
  }
  d.validate();
  return d;
}

RobustDesign robust_design(const json& cfg) {
  const json& r = cfg.at("pulse").at("robust");
  RobustDesign d;
  d.epsilon = number(r, "epsilon");
  d.coefficients = numbers(r.at("coefficients"), "pulse.robust.coefficients");
  d.T = number(r, "T");
  const json& sign = r.at("alpha_sign");
  if (!sign.is_number_integer()) throw ConfigError("pulse.robust.alpha_sign must be 1 or -1");
  d.alpha_sign = sign.get<int>();
  d.validate();
  return d;
}

std::optional<TimeSpan> span(const json& cfg) {
  const json& s = cfg.at("span");
  if (s.is_null()) return std::nullopt;
  const auto v = numbers(s, "span");
  if (v.size() != 2 || !(v[0] < v[1])) throw ConfigError("span must be [start, end] with start < end");
  return TimeSpan{v[0], v[1]};
}

std::vector<double> grid_axis(const json& axis) {
  require_keys(axis, {"min", "max", "points"}, "scan axis");
  const double lo = number(axis, "min"), hi = number(axis, "max");
  const std::size_t n = count(axis, "points");
  if (n == 0) throw ConfigError("scan axis needs at least one point");
  if (n == 1) {
    if (lo != hi) throw ConfigError("a one-point scan axis needs min == max");
    return {lo};
  }
  if (!(lo < hi)) throw ConfigError("scan axis needs min < max");
  return linspace(lo, hi, n);
}

Zone zone(const json& z) {
  require_keys(z, {"delta0_min", "delta0_max", "beta_min", "beta_max"}, "zone");
  Zone out{number(z, "delta0_min"), number(z, "delta0_max"), number(z, "beta_min"),
           number(z, "beta_max")};
  if (!(out.delta0_min <= out.delta0_max) || !(out.beta_min <= out.beta_max)) {
    throw ConfigError("zone bounds are inverted");
  }
  return out;
}

OptimizeSpec optimize_spec(const json& cfg) {
  const json& o = cfg.at("optimize");
  OptimizeSpec spec;
  spec.n = count(o, "n");
  spec.zone = zone(o.at("zone"));
  spec.delta0_points = count(o, "delta0_points");
  spec.beta_points = count(o, "beta_points");
  spec.epsilon = number(o, "epsilon");
  spec.T = number(o, "T");
  spec.budget = count(o, "budget");
  spec.seed = count(o, "seed");
  spec.area_penalty = number(o, "area_penalty");
  spec.area_cap = number(o, "area_cap");
  spec.rescore_delta0_points = count(o, "rescore_delta0_points");
  spec.rescore_beta_points = count(o, "rescore_beta_points");
  spec.params = system_params(cfg);
  spec.integrator = integrator_config(cfg);
  spec.jobs = static_cast<unsigned>(count(cfg, "jobs"));
  spec.validate();
  return spec;
}

void validate_config(const json& cfg) {
  const std::string kind = cfg.at("pulse").at("kind").get<std::string>();
  if (kind != "tracking" && kind != "robust" && kind != "rabi" && kind != "zero") {
    throw ConfigError("pulse.kind must be one of tracking, robust, rabi, zero");
  }
  system_params(cfg);
  integrator_config(cfg);
  const Perturbation p = perturbation(cfg);
  if (!std::isfinite(p.delta0) || !std::isfinite(p.beta) || !(1.0 + p.beta > 0.0)) {
    throw ConfigError("perturbation must be finite with 1 + beta > 0");
  }
  tracking_design(cfg);
  robust_design(cfg);
  span(cfg);
  count(cfg, "samples");
  count(cfg, "jobs");
  const json& portrait = cfg.at("portrait");
  const std::string source = portrait.at("source").get<std::string>();
  if (source != "pulse" && source != "explicit") {
    throw ConfigError("portrait.source must be pulse or explicit");
  }
  if (number(portrait, "omega") < 0.0) throw ConfigError("portrait.omega must be >= 0");
  const json& scan = cfg.at("scan");
  grid_axis(scan.at("delta0"));
  grid_axis(scan.at("beta"));
  if (!scan.at("zone").is_null()) zone(scan.at("zone"));
  const json& initial = cfg.at("optimize").at("initial");
  if (!initial.is_null()) numbers(initial, "optimize.initial");
}

}  // namespace nlrc::cli
