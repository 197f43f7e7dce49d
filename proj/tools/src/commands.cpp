#include "commands.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

#include "nlrc/dynamics.hpp"
#include "nlrc/errors.hpp"
#include "nlrc/phase_space.hpp"
#include "output.hpp"

namespace nlrc::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const DesignSolution> solved(const RobustDesign& design) {
  auto sol = std::make_shared<const DesignSolution>(solve_alpha(design));
  if (!sol->valid) throw InvalidDesign(sol->diagnostic, sol->failure_theta);
  return sol;
}

Pulse unperturbed_pulse(const json& cfg) {
  const std::string kind = cfg.at("pulse").at("kind").get<std::string>();
  if (kind == "tracking") return make_tracking_pulse(tracking_design(cfg));
  if (kind == "robust") {
    const RobustDesign d = robust_design(cfg);
    return make_robust_pulse(d, solved(d), system_params(cfg));
  }
  if (kind == "rabi") {
    const json& r = cfg.at("pulse").at("rabi");
    return rabi_pulse(r.at("omega").get<double>(), r.at("area").get<double>(),
                      system_params(cfg).lambda_a);
  }
  const json& z = cfg.at("pulse").at("zero");
  const double start = z.at("start").get<double>(), end = z.at("end").get<double>();
  if (!(start < end)) throw ConfigError("pulse.zero needs start < end");
  return zero_pulse({start, end});
}

TimeSpan resolved_span(const json& cfg, const Pulse& pulse) {
  return span(cfg).value_or(pulse.default_span());
}

std::size_t sample_count(const json& cfg) {
  const auto n = cfg.at("samples").get<std::size_t>();
  if (n < 2) throw ConfigError("samples must be at least 2");
  return n;
}

json base_meta(const Context& ctx, const CsvTable* table) {
  const IntegratorConfig ic = integrator_config(ctx.config);
  json meta{{"command", ctx.command},
            {"toolkit_version", NLRC_VERSION},
            {"units", "frequencies in 1/T, times in T"},
            {"tolerances",
             {{"rel_tol", ic.rel_tol}, {"abs_tol", ic.abs_tol}, {"max_step", ic.max_step}}},
            {"config", ctx.config}};
  if (table) meta["columns"] = table->columns();
  return meta;
}

void save(const Context& ctx, const std::string& stem, const CsvTable& table, json results) {
  const auto data = ctx.out_dir / (stem + ".csv");
  json meta = base_meta(ctx, &table);
  meta["results"] = std::move(results);
  meta["rows"] = table.rows();
  table.save(data);
  write_file(sidecar_path(data), meta.dump(2) + "\n");
}

json span_json(const TimeSpan& s) { return json::array({s.start, s.end}); }

std::string fmt(double x) { return format_number(x); }

}  // namespace

Pulse configured_pulse(const json& cfg) {
  return perturb(unperturbed_pulse(cfg), perturbation(cfg));
}

void cmd_simulate(const Context& ctx) {
  const json& cfg = ctx.config;
  const Pulse pulse = configured_pulse(cfg);
  const TimeSpan s = resolved_span(cfg, pulse);
  const auto times = linspace(s.start, s.end, sample_count(cfg));
  const auto traj = simulate_amplitudes(pulse, system_params(cfg), AmplitudeState{}, s,
                                        integrator_config(cfg), times);

  CsvTable table({"t", "re_b1", "im_b1", "re_b2", "im_b2", "p", "pi_x", "pi_y", "omega", "delta"});
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const AmplitudeState& st = traj.states[i];
    const BlochVector b = to_bloch(st);
    table.cell(traj.times[i]).cell(st.re1).cell(st.im1).cell(st.re2).cell(st.im2);
    table.cell(b.p).cell(b.pi_x).cell(b.pi_y);
    table.cell(traj.controls[i].omega).cell(traj.controls[i].delta);
    table.end_row();
  }
  const double p_final = population(traj.states.back());
  const double norm_drift = std::abs(norm(traj.states.back()) - 1.0);
  save(ctx, "simulate", table,
       {{"pulse", pulse.name()}, {"span", span_json(s)}, {"final_p", p_final},
        {"final_norm_drift", norm_drift}});
  *ctx.out << "pulse: " << pulse.name() << "\n"
           << "final p: " << fmt(p_final) << "\n";
}

void cmd_design_adiabatic(const Context& ctx) {
  const json& cfg = ctx.config;
  const TrackingDesign design = tracking_design(cfg);
  const Pulse pulse = make_tracking_pulse(design);
  const TimeSpan s = resolved_span(cfg, pulse);

  CsvTable table({"t", "omega", "delta", "p_track"});
  for (double t : linspace(s.start, s.end, sample_count(cfg))) {
    const TrackingSample ts = tracking_controls(design, t);
    table.cell(t).cell(ts.control.omega).cell(ts.control.delta).cell(ts.p_track);
    table.end_row();
  }
  const double area = pulse_area(pulse, s);
  save(ctx, "design_adiabatic", table,
       {{"pulse", pulse.name()}, {"span", span_json(s)}, {"area", area},
        {"area_over_pi", area / kPi}, {"analytic_area", tracking_area(design)}});
  *ctx.out << "pulse: " << pulse.name() << "\n"
           << "area: " << fmt(area) << " (" << fmt(area / kPi) << " pi)\n";
}

void cmd_design_robust(const Context& ctx) {
  const json& cfg = ctx.config;
  const RobustDesign design = robust_design(cfg);
  const auto sol = solved(design);
  const SystemParams params = system_params(cfg);
  const Pulse pulse = make_robust_pulse(design, sol, params);
  const TimeSpan s = resolved_span(cfg, pulse);

  CsvTable table({"t", "theta", "alpha", "gamma", "omega", "delta"});
  double max_discrepancy = 0.0;
  for (double t : linspace(s.start, s.end, sample_count(cfg))) {
    const AngleState a = prescribed_angles(design, *sol, t);
    const FieldDiagnostics d = shape_fields_diagnostic(design, *sol, params, t);
    max_discrepancy = std::max(max_discrepancy, std::abs(d.discrepancy()));
    table.cell(t).cell(a.theta).cell(a.alpha).cell(a.gamma);
    table.cell(d.control.omega).cell(d.control.delta);
    table.end_row();
  }
  const double area = design_area(design, *sol);
  save(ctx, "design_robust", table,
       {{"pulse", pulse.name()},
        {"span", span_json(s)},
        {"area", area},
        {"area_over_pi", area / kPi},
        {"designed_final_p", std::pow(std::cos(0.5 * kPi * design.epsilon), 2)},
        {"printed_delta_max_discrepancy", max_discrepancy}});
  *ctx.out << "pulse: " << pulse.name() << "\n"
           << "area: " << fmt(area) << " (" << fmt(area / kPi) << " pi)\n";
}

void cmd_portrait(const Context& ctx) {
  const json& cfg = ctx.config;
  const json& pc = cfg.at("portrait");
  ControlSample control;
  std::string source;
  if (pc.at("source").get<std::string>() == "explicit") {
    control = {pc.at("omega").get<double>(), pc.at("delta").get<double>()};
    source = "explicit";
  } else {
    const Pulse pulse = configured_pulse(cfg);
    const double t = pc.at("t").get<double>();
    control = pulse(t);
    source = pulse.name() + " at t=" + fmt(t);
  }
  PortraitOptions opts;
  opts.separatrix_samples = pc.at("separatrix_samples").get<std::size_t>();
  opts.contour_count = pc.at("contours").get<std::size_t>();
  opts.contour_samples = pc.at("contour_samples").get<std::size_t>();
  const Portrait portrait_data = portrait(control, opts);

  CsvTable table({"curve_id", "p", "alpha", "pi_x", "pi_y", "kind"});
  auto row = [&table](const std::string& id, double p, double alpha, const std::string& kind) {
    const BlochVector b = bloch_from(p, alpha);
    table.cell(id).cell(p).cell(alpha).cell(b.pi_x).cell(b.pi_y).cell(kind);
    table.end_row();
  };
  json fixed = json::array();
  for (const FixedPoint& fp : portrait_data.fixed_points) {
    const std::string kind(to_string(fp.kind));
    row(fp.is_pole ? "pole" : "fixed_point", fp.p, fp.alpha.value_or(0.0), kind);
    fixed.push_back({{"p", fp.p}, {"alpha", fp.alpha ? json(*fp.alpha) : json(nullptr)},
                     {"kind", kind}, {"is_pole", fp.is_pole}});
  }
  if (portrait_data.separatrix) {
    for (const PhasePoint& q : portrait_data.separatrix->samples) {
      row("separatrix", q.p, q.alpha, "separatrix");
    }
  }
  json energies = json::array();
  for (std::size_t k = 0; k < portrait_data.contours.size(); ++k) {
    for (const PhasePoint& q : portrait_data.contours[k].samples) {
      row("contour_" + std::to_string(k), q.p, q.alpha, "contour");
    }
    energies.push_back(portrait_data.contours[k].energy);
  }

  std::string target = "n/a";
  if (control.omega > 0.0) target = std::string(to_string(classify_target(control)));
  json results{{"source", source},
               {"omega", control.omega},
               {"delta", control.delta},
               {"fixed_points", fixed},
               {"target", target},
               {"separatrix", portrait_data.separatrix.has_value()},
               {"contour_energies", energies}};
  if (portrait_data.separatrix) results["separatrix_energy"] = portrait_data.separatrix->energy;
  save(ctx, "portrait", table, results);
  *ctx.out << "control: omega=" << fmt(control.omega) << " delta=" << fmt(control.delta) << "\n"
           << "fixed points: " << portrait_data.fixed_points.size() << "\n"
           << "target: " << target << "\n"
           << "separatrix: " << (portrait_data.separatrix ? "yes" : "no") << "\n";
}

void cmd_scan(const Context& ctx, bool two_d) {
  const json& cfg = ctx.config;
  const Pulse pulse = configured_pulse(cfg);
  const auto d0 = grid_axis(cfg.at("scan").at("delta0"));
  ScanOptions opts;
  opts.params = system_params(cfg);
  opts.integrator = integrator_config(cfg);
  opts.span = span(cfg);
  opts.jobs = cfg.at("jobs").get<unsigned>();

  ScanResult result;
  if (two_d) {
    const auto beta = grid_axis(cfg.at("scan").at("beta"));
    result = scan_2d(pulse, d0, beta, opts);
  } else {
    result = scan_1d(pulse, d0, opts);
  }
  const json& zj = cfg.at("scan").at("zone");
  const Zone z = zj.is_null() ? Zone{result.delta0_axis.front(), result.delta0_axis.back(),
                                     result.beta_axis.front(), result.beta_axis.back()}
                              : zone(zj);
  const double avg = zone_average(result, z);

  CsvTable table({"delta0", "beta", "fidelity"});
  for (std::size_t i = 0; i < result.beta_axis.size(); ++i) {
    for (std::size_t j = 0; j < result.delta0_axis.size(); ++j) {
      table.cell(result.delta0_axis[j]).cell(result.beta_axis[i]).cell(result.at(i, j));
      table.end_row();
    }
  }
  save(ctx, two_d ? "scan_2d" : "scan_1d", table,
       {{"pulse", result.meta.pulse},
        {"span", span_json(result.meta.span)},
        {"delta0_axis", result.delta0_axis},
        {"beta_axis", result.beta_axis},
        {"zone",
         {{"delta0_min", z.delta0_min}, {"delta0_max", z.delta0_max},
          {"beta_min", z.beta_min}, {"beta_max", z.beta_max}}},
        {"zone_average", avg}});
  *ctx.out << "pulse: " << pulse.name() << "\n"
           << "grid: " << result.delta0_axis.size() << " x " << result.beta_axis.size() << "\n"
           << "zone average: " << fmt(avg) << "\n";
}

void cmd_optimize(const Context& ctx) {
  const json& cfg = ctx.config;
  const OptimizeSpec spec = optimize_spec(cfg);
  std::vector<double> initial(spec.n, 0.0);
  const json& ij = cfg.at("optimize").at("initial");
  if (!ij.is_null()) initial = ij.get<std::vector<double>>();
  if (initial.size() != spec.n) throw ConfigError("optimize.initial must have n entries");

  const OptimizeResult res = optimize(spec, initial);

  std::vector<std::string> cols{"eval_index"};
  for (std::size_t k = 1; k <= spec.n; ++k) cols.push_back("C" + std::to_string(k));
  cols.push_back("objective");
  CsvTable table(cols);
  for (const TraceEntry& e : res.trace) {
    table.cell(static_cast<double>(e.index));
    for (double c : e.coefficients) table.cell(c);
    table.cell(e.value);
    table.end_row();
  }
  json results{{"best", res.best},
               {"best_value", res.best_value},
               {"evaluations", res.evaluations},
               {"restarts", res.restarts},
               {"budget_exhausted", res.budget_exhausted}};
  if (res.rescored_value) results["rescored_value"] = *res.rescored_value;
  save(ctx, "optimize_trace", table, results);

  // Ready-to-use config patch for `design robust` / `simulate`.
  const json best{{"pulse",
                   {{"kind", "robust"},
                    {"robust",
                     {{"epsilon", spec.epsilon},
                      {"coefficients", res.best},
                      {"T", spec.T},
                      {"alpha_sign", 1}}}}}};
  write_file(ctx.out_dir / "optimize_best.json", best.dump(2) + "\n");

  *ctx.out << "best C:";
  for (double c : res.best) *ctx.out << " " << fmt(c);
  *ctx.out << "\nobjective: " << fmt(res.best_value) << "\n";
  if (res.rescored_value) *ctx.out << "rescored: " << fmt(*res.rescored_value) << "\n";
  *ctx.out << "evaluations: " << res.evaluations
           << (res.budget_exhausted ? " (budget exhausted)" : "") << "\n";
}

void cmd_area(const Context& ctx) {
  const json& cfg = ctx.config;
  const Pulse pulse = configured_pulse(cfg);
  const TimeSpan s = resolved_span(cfg, pulse);
  const double area = pulse_area(pulse, s);
  json meta = base_meta(ctx, nullptr);
  meta["results"] = {{"pulse", pulse.name()}, {"span", span_json(s)}, {"area", area},
                     {"area_over_pi", area / kPi}};
  write_file(ctx.out_dir / "area.meta.json", meta.dump(2) + "\n");
  *ctx.out << "pulse: " << pulse.name() << "\n"
           << "area: " << fmt(area) << " (" << fmt(area / kPi) << " pi)\n";
}

}  // namespace nlrc::cli
