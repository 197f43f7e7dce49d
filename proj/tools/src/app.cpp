#include "nlrc_cli/app.hpp"

#include <algorithm>
#include <functional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "nlrc/errors.hpp"

namespace nlrc::cli {

namespace {

/// Flags shared by every leaf command. Values are applied on top of the
/// config file only when given explicitly.
struct Flags {
  std::string config_path;
  std::string out_dir = ".";
  std::size_t samples = 0;
  double tol = 0.0;
  unsigned jobs = 0;
  std::string pulse;
  double omega0 = 0.0, T = 0.0, epsilon = 0.0, delta0 = 0.0, beta = 0.0;
  std::vector<double> coefficients;
  double at = 0.0;
  std::vector<double> control;

  std::vector<std::pair<CLI::Option*, std::function<void(json&)>>> overrides;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out_dir, "output directory");
  auto& ov = f.overrides;
  ov.emplace_back(cmd->add_option("--samples", f.samples, "number of output samples"),
                  [&f](json& c) { c["samples"] = f.samples; });
  ov.emplace_back(cmd->add_option("--tol", f.tol, "relative and absolute integration tolerance")
                      ->check(CLI::PositiveNumber),
                  [&f](json& c) {
                    c["integrator"]["rel_tol"] = f.tol;
                    c["integrator"]["abs_tol"] = f.tol;
                  });
  ov.emplace_back(cmd->add_option("--jobs", f.jobs, "worker threads (0 = NLRC_JOBS or all cores)"),
                  [&f](json& c) { c["jobs"] = f.jobs; });
}

void add_pulse_flags(CLI::App* cmd, Flags& f, bool choose_kind) {
  auto& ov = f.overrides;
  if (choose_kind) {
    ov.emplace_back(cmd->add_option("--pulse", f.pulse, "pulse kind")
                        ->check(CLI::IsMember({"tracking", "robust", "rabi", "zero"})),
                    [&f](json& c) { c["pulse"]["kind"] = f.pulse; });
  }
  ov.emplace_back(cmd->add_option("--omega0", f.omega0, "tracking peak Rabi frequency"),
                  [&f](json& c) { c["pulse"]["tracking"]["omega0"] = f.omega0; });
  ov.emplace_back(cmd->add_option("--T", f.T, "pulse time scale"), [&f](json& c) {
    c["pulse"]["tracking"]["T"] = f.T;
    c["pulse"]["robust"]["T"] = f.T;
  });
  ov.emplace_back(cmd->add_option("--epsilon", f.epsilon, "robust design epsilon"),
                  [&f](json& c) { c["pulse"]["robust"]["epsilon"] = f.epsilon; });
  ov.emplace_back(cmd->add_option("--C", f.coefficients, "robust coefficients C1,C2,...")
                      ->delimiter(','),
                  [&f](json& c) { c["pulse"]["robust"]["coefficients"] = f.coefficients; });
}

void add_perturbation_flags(CLI::App* cmd, Flags& f) {
  auto& ov = f.overrides;
  ov.emplace_back(cmd->add_option("--delta0", f.delta0, "static detuning offset"),
                  [&f](json& c) { c["perturbation"]["delta0"] = f.delta0; });
  ov.emplace_back(cmd->add_option("--beta", f.beta, "relative amplitude error"),
                  [&f](json& c) { c["perturbation"]["beta"] = f.beta; });
}

json resolve(const Flags& f, const std::string& forced_kind) {
  json cfg = default_config();
  if (!f.config_path.empty()) merge_config(cfg, load_config_file(f.config_path));
  for (const auto& [opt, apply] : f.overrides) {
    if (opt->count() > 0) apply(cfg);
  }
  if (!forced_kind.empty()) cfg["pulse"]["kind"] = forced_kind;
  validate_config(cfg);
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and pulse design for the (1:2)-resonance two-level model", "nlrc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(NLRC_VERSION));

  Flags f;
  std::string command;
  std::function<void(const Context&)> action;
  std::string forced_kind;

  auto leaf = [&](CLI::App* cmd, std::string name, std::function<void(const Context&)> fn,
                  std::string kind = "") {
    add_common(cmd, f);
    cmd->callback([&, name, fn, kind] {
      command = name;
      action = fn;
      forced_kind = kind;
    });
  };

  auto* simulate = app.add_subcommand("simulate", "integrate a pulse from b1 = 1, write the trajectory");
  add_pulse_flags(simulate, f, true);
  add_perturbation_flags(simulate, f);
  leaf(simulate, "simulate", cmd_simulate);

  auto* design = app.add_subcommand("design", "sample a designed pulse");
  design->require_subcommand(1);
  auto* adiabatic = design->add_subcommand("adiabatic", "adiabatic tracking pulse");
  add_pulse_flags(adiabatic, f, false);
  leaf(adiabatic, "design adiabatic", cmd_design_adiabatic, "tracking");
  auto* robust = design->add_subcommand("robust", "inverse-engineered robust pulse");
  add_pulse_flags(robust, f, false);
  leaf(robust, "design robust", cmd_design_robust, "robust");

  auto* portrait = app.add_subcommand("portrait", "fixed points, separatrix and contours");
  add_pulse_flags(portrait, f, true);
  add_perturbation_flags(portrait, f);
  f.overrides.emplace_back(portrait->add_option("--at", f.at, "time at which the pulse is frozen"),
                           [&f](json& c) {
                             c["portrait"]["source"] = "pulse";
                             c["portrait"]["t"] = f.at;
                           });
  f.overrides.emplace_back(
      portrait->add_option("--control", f.control, "explicit OMEGA DELTA")->expected(2),
      [&f](json& c) {
        c["portrait"]["source"] = "explicit";
        c["portrait"]["omega"] = f.control.at(0);
        c["portrait"]["delta"] = f.control.at(1);
      });
  leaf(portrait, "portrait", cmd_portrait);

  auto* scan = app.add_subcommand("scan", "final population over a perturbation grid");
  scan->require_subcommand(1);
  auto* scan1 = scan->add_subcommand("1d", "static detuning profile at beta = 0");
  add_pulse_flags(scan1, f, true);
  leaf(scan1, "scan 1d", [](const Context& c) { cmd_scan(c, false); });
  auto* scan2 = scan->add_subcommand("2d", "(delta0, beta) map");
  add_pulse_flags(scan2, f, true);
  leaf(scan2, "scan 2d", [](const Context& c) { cmd_scan(c, true); });

  auto* opt = app.add_subcommand("optimize", "search robust-design coefficients");
  leaf(opt, "optimize", cmd_optimize);

  auto* area = app.add_subcommand("area", "pulse area of the configured pulse");
  add_pulse_flags(area, f, true);
  add_perturbation_flags(area, f);
  leaf(area, "area", cmd_area);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << NLRC_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Context ctx{command, resolve(f, forced_kind), f.out_dir, &out};
    action(ctx);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDesign& e) {
    err << "invalid robust design: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nlrc::cli
