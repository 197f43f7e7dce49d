#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "config.hpp"

namespace nlrc::cli {

struct Context {
  std::string command;
  json config;
  std::filesystem::path out_dir;
  std::ostream* out = nullptr;
};

void cmd_simulate(const Context& ctx);
void cmd_design_adiabatic(const Context& ctx);
void cmd_design_robust(const Context& ctx);
void cmd_portrait(const Context& ctx);
void cmd_scan(const Context& ctx, bool two_d);
void cmd_optimize(const Context& ctx);
void cmd_area(const Context& ctx);

/// Pulse described by the config, with its perturbation applied.
Pulse configured_pulse(const json& cfg);

}  // namespace nlrc::cli
