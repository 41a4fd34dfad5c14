#pragma once

// Explicit Runge-Kutta integration of y' = f(t, y) on flat real vectors with
// sampled observables.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vortex/error.hpp"

namespace vortex {

enum class Method { rk4, dp54 };

std::string to_string(Method m);
/// Throws ErrorCode::config for an unknown name.
Method method_from_string(const std::string& s);

struct IntegratorConfig {
  Method method = Method::dp54;
  double dt = 1e-3;          // rk4 step
  double initial_dt = 0.0;  // dp54 first trial step; 0 selects it automatically
  double rtol = 1e-10;
  double atol = 1e-10;
  double t_end = 10.0;
  int sample_stride = 1;        // record every k-th accepted step
  double sample_interval = 0.0;  // if positive, record exactly at multiples of it instead
  long max_steps = 50'000'000;

  /// Throws ErrorCode::config naming the offending field.
  void validate() const;
};

using RhsFn = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;

struct Monitor {
  std::string name;
  std::function<double(const Eigen::VectorXd&)> eval;
};

/// Called after each accepted step; may modify the state and returns whether it did.
using PostStepFn = std::function<bool(Eigen::VectorXd&)>;

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<std::string> monitor_names;
  std::vector<std::vector<double>> monitor_values;  // [monitor][sample]
  bool halted = false;
  std::string halt_reason;
  std::optional<ErrorCode> halt_code;
  long accepted_steps = 0;
  long rejected_steps = 0;
  long post_step_changes = 0;

  std::size_t samples() const { return times.size(); }
};

/// Integrates from t = 0 to cfg.t_end. An Error thrown by the vector field or
/// a monitor stops the run; the samples recorded so far are kept and the
/// reason is stored in halt_reason.
TrajectoryRecord integrate(const RhsFn& rhs, const Eigen::VectorXd& y0, const IntegratorConfig& cfg,
                           const std::vector<Monitor>& monitors = {},
                           const PostStepFn& post_step = {});

}  // namespace vortex
