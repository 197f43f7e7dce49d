#pragma once

#include <stdexcept>
#include <string>

namespace nlrc {

/// Raised by the angle chart when sin(theta/2) is too small for the
/// 1/sin(theta/2) term of the relative-phase equation.
class ChartSingularity : public std::domain_error {
 public:
  ChartSingularity(const std::string& what, double theta)
      : std::domain_error(what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

class StepSizeUnderflow : public std::runtime_error {
 public:
  StepSizeUnderflow(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  /// Integration time at which the step controller gave up.
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class NoSeparatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A robust design whose relative phase leaves (0, pi) cannot be shaped
/// into a positive Rabi frequency.
class InvalidDesign : public std::runtime_error {
 public:
  InvalidDesign(const std::string& what, double theta)
      : std::runtime_error(what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

class EmptyZone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nlrc
