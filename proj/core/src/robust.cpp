#include "nlrc/robust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nlrc/errors.hpp"
#include "nlrc/integrator.hpp"
#include "nlrc/quadrature.hpp"

namespace nlrc {

namespace {

constexpr double kPi = std::numbers::pi;

double series_slope(const RobustDesign& design) {
  double g0 = 1.0;
  for (std::size_t j = 0; j < design.coefficients.size(); ++j) {
    g0 += static_cast<double>(j + 1) * design.coefficients[j];
  }
  return -1.5 * g0;
}

}  // namespace

void RobustDesign::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("robust design epsilon must lie in (0, 1)");
  }
  if (coefficients.empty()) throw std::invalid_argument("robust design needs at least one C_j");
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw std::invalid_argument("robust design coefficients must be finite");
  }
  if (!(T > 0.0)) throw std::invalid_argument("robust design T must be positive");
  if (alpha_sign != 1 && alpha_sign != -1) {
    throw std::invalid_argument("alpha_sign must be +1 or -1");
  }
}

ThetaSample theta_profile(const RobustDesign& design, double t) {
  const double x = t / design.T;
  const double amp = 0.5 * kPi * (1.0 - design.epsilon);
  // 1 + erf(x) = erfc(-x) keeps relative accuracy in the early tail.
  return {amp * std::erfc(-x),
          amp * std::numbers::inv_sqrtpi * 2.0 * std::exp(-x * x) / design.T};
}

GammaSample gamma_expansion(const RobustDesign& design, double theta) {
  GammaSample g{theta, 1.0};
  for (std::size_t j = 0; j < design.coefficients.size(); ++j) {
    const double k = static_cast<double>(j + 1);
    g.gamma += design.coefficients[j] * std::sin(k * theta);
    g.dgamma += k * design.coefficients[j] * std::cos(k * theta);
  }
  return g;
}

double theta_max(const RobustDesign& design) { return kPi * (1.0 - design.epsilon); }

std::pair<double, double> DesignSolution::alpha_at(double theta) const {
  if (theta <= theta_min_ || theta_grid.size() < 3) {
    return {alpha0_ + series_slope_ * theta, series_slope_};
  }
  // Grid is {0, theta_min, theta_min + h, ...}; index 1 starts the uniform part.
  const std::size_t m = theta_grid.size();
  const double pos = (theta - theta_min_) / grid_step_;
  const std::size_t k =
      1 + std::min<std::size_t>(static_cast<std::size_t>(std::max(pos, 0.0)), m - 3);
  const double h = theta_grid[k + 1] - theta_grid[k];
  const double u = std::clamp((theta - theta_grid[k]) / h, 0.0, 1.0);
  const double u2 = u * u, u3 = u2 * u;
  const double a0 = alpha_of_theta[k], a1 = alpha_of_theta[k + 1];
  const double d0 = dalpha_of_theta[k], d1 = dalpha_of_theta[k + 1];
  const double value = (2 * u3 - 3 * u2 + 1) * a0 + (u3 - 2 * u2 + u) * h * d0 +
                       (-2 * u3 + 3 * u2) * a1 + (u3 - u2) * h * d1;
  const double slope = ((6 * u2 - 6 * u) * a0 + (-6 * u2 + 6 * u) * a1) / h +
                       (3 * u2 - 4 * u + 1) * d0 + (3 * u2 - 2 * u) * d1;
  return {value, slope};
}

DesignSolution solve_alpha(const RobustDesign& design, const SolveOptions& options) {
  design.validate();
  if (!(options.theta_min > 0.0) || options.grid_points < 3) {
    throw std::invalid_argument("solve_alpha needs theta_min > 0 and at least 3 grid points");
  }
  const double t_max = theta_max(design);
  if (!(options.theta_min < t_max)) throw std::invalid_argument("theta_min beyond theta_max");

  DesignSolution sol;
  sol.series_slope_ = series_slope(design);
  sol.alpha0_ = design.alpha_sign * 0.5 * kPi;
  sol.theta_min_ = options.theta_min;
  sol.grid_step_ = (t_max - options.theta_min) / static_cast<double>(options.grid_points - 1);
  sol.failure_theta = std::numeric_limits<double>::quiet_NaN();

  std::vector<double> grid(options.grid_points);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = options.theta_min + sol.grid_step_ * static_cast<double>(i);
  }
  grid.back() = t_max;

  const double lo = design.alpha_sign > 0 ? options.bound_margin : -kPi + options.bound_margin;
  const double hi = design.alpha_sign > 0 ? kPi - options.bound_margin : -options.bound_margin;

  auto rhs = [&design](double theta, const Vec<1>& a) -> Vec<1> {
    return {1.0 / (std::tan(a[0]) * std::sin(theta)) - 3.0 * gamma_expansion(design, theta).dgamma};
  };
  double exit_theta = std::numeric_limits<double>::quiet_NaN();
  auto observer = [&](double theta, const Vec<1>& a) {
    if (!(a[0] > lo && a[0] < hi)) {
      exit_theta = theta;
      return false;
    }
    return true;
  };

  IntegratorConfig cfg;
  cfg.rel_tol = options.rel_tol;
  cfg.abs_tol = options.abs_tol;
  cfg.max_step = 0.01;
  cfg.max_steps = options.max_steps;
  OdeOutput out;
  out.sample_times = grid;

  const Vec<1> a0{sol.alpha0_ + sol.series_slope_ * options.theta_min};
  OdeSolution<1> ode;
  bool stiff = false;
  if (!observer(options.theta_min, a0)) {
    ode.stopped_early = true;
  } else {
    try {
      ode = solve_ode<1>(rhs, a0, options.theta_min, t_max, cfg, out, observer);
    } catch (const StepSizeUnderflow& e) {
      exit_theta = e.time();
      stiff = true;
    }
  }

  if (!std::isnan(exit_theta) || ode.stopped_early || ode.states.size() != grid.size()) {
    sol.valid = false;
    sol.failure_theta = std::isnan(exit_theta) ? ode.final_time : exit_theta;
    std::ostringstream msg;
    if (stiff) {
      msg << "alpha(theta) integration stalled against the boundary of (" << lo << ", " << hi
          << ") at theta = " << sol.failure_theta;
    } else {
      msg << "alpha(theta) left (" << lo << ", " << hi << ") at theta = " << sol.failure_theta;
    }
    sol.diagnostic = msg.str();
    return sol;
  }

  sol.theta_grid.reserve(grid.size() + 1);
  sol.theta_grid.push_back(0.0);
  sol.alpha_of_theta.push_back(sol.alpha0_);
  sol.dalpha_of_theta.push_back(sol.series_slope_);
  sol.gamma_of_theta.push_back(0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = ode.states[i][0];
    sol.theta_grid.push_back(grid[i]);
    sol.alpha_of_theta.push_back(a);
    sol.dalpha_of_theta.push_back(rhs(grid[i], {a})[0]);
    sol.gamma_of_theta.push_back(gamma_expansion(design, grid[i]).gamma);
  }
  sol.valid = true;
  sol.diagnostic = "ok";
  return sol;
}

AngleState prescribed_angles(const RobustDesign& design, const DesignSolution& solution,
                             double t) {
  const ThetaSample th = theta_profile(design, t);
  return {th.theta, solution.alpha_at(th.theta).first,
          gamma_expansion(design, th.theta).gamma};
}

FieldDiagnostics shape_fields_diagnostic(const RobustDesign& design,
                                         const DesignSolution& solution,
                                         const SystemParams& params, double t) {
  if (!solution.valid) throw InvalidDesign(solution.diagnostic, solution.failure_theta);
  const ThetaSample th = theta_profile(design, t);
  double alpha = solution.alpha_at(th.theta).first;
  if (design.alpha_sign < 0) alpha += kPi;
  const double sh = std::sin(0.5 * th.theta);
  const double ch = std::cos(0.5 * th.theta);
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double gamma_dot = gamma_expansion(design, th.theta).dgamma * th.theta_dot;
  const double kerr = params.lambda_a - params.lambda_s * sh * sh;

  FieldDiagnostics d;
  d.control.omega = th.theta_dot / (sa * ch);
  d.control.delta = 3.0 * (0.5 * d.control.omega * ca * sh - gamma_dot) + kerr;
  d.delta_printed = 1.5 * (ca / sa) * (sh / ch) - 3.0 * gamma_dot + kerr;
  return d;
}

ControlSample shape_fields(const RobustDesign& design, const DesignSolution& solution,
                           const SystemParams& params, double t) {
  return shape_fields_diagnostic(design, solution, params, t).control;
}

Pulse make_robust_pulse(const RobustDesign& design, std::shared_ptr<const DesignSolution> solution,
                        const SystemParams& params) {
  design.validate();
  if (!solution) throw std::invalid_argument("robust pulse needs a design solution");
  if (!solution->valid) throw InvalidDesign(solution->diagnostic, solution->failure_theta);
  std::ostringstream name;
  name << "robust(eps=" << design.epsilon << ",T=" << design.T << ",C=[";
  for (std::size_t j = 0; j < design.coefficients.size(); ++j) {
    name << (j ? "," : "") << design.coefficients[j];
  }
  name << "])";
  return Pulse(name.str(),
               [design, solution, params](double t) {
                 return shape_fields(design, *solution, params, t);
               },
               {-4.0 * design.T, 4.0 * design.T});
}

Pulse make_robust_pulse(const RobustDesign& design, const SystemParams& params,
                        const SolveOptions& options) {
  return make_robust_pulse(design, std::make_shared<const DesignSolution>(solve_alpha(design, options)),
                           params);
}

double design_area(const RobustDesign& design, const DesignSolution& solution) {
  if (!solution.valid) throw InvalidDesign(solution.diagnostic, solution.failure_theta);
  const double sign = design.alpha_sign > 0 ? 1.0 : -1.0;
  return adaptive_simpson(
      [&](double theta) {
        return sign / (std::sin(solution.alpha_at(theta).first) * std::cos(0.5 * theta));
      },
      0.0, theta_max(design), 1e-10, 64);
}

}  // namespace nlrc
