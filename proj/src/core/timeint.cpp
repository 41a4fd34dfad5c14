#include "vortex/timeint.hpp"

#include <algorithm>
#include <cmath>

namespace vortex {

std::string to_string(Method m) { return m == Method::rk4 ? "rk4" : "dp54"; }

Method method_from_string(const std::string& s) {
  if (s == "rk4") return Method::rk4;
  if (s == "dp54") return Method::dp54;
  throw Error(ErrorCode::config, "integrator.method: unknown method '" + s + "'");
}

void IntegratorConfig::validate() const {
  auto bad = [](const std::string& field) {
    throw Error(ErrorCode::config, "integrator." + field + " must be positive");
  };
  if (!(t_end > 0.0) || !std::isfinite(t_end)) bad("t_end");
  if (method == Method::rk4 && !(dt > 0.0)) bad("dt");
  if (method == Method::dp54 && !(rtol > 0.0)) bad("rtol");
  if (method == Method::dp54 && !(atol > 0.0)) bad("atol");
  if (sample_stride < 1) bad("sample_stride");
  if (sample_interval < 0.0) bad("sample_interval");
  if (max_steps < 1) bad("max_steps");
  if (initial_dt < 0.0) bad("initial_dt");
}

namespace {

class Recorder {
 public:
  Recorder(TrajectoryRecord& rec, const std::vector<Monitor>& monitors) : rec_(rec), monitors_(monitors) {
    for (const auto& m : monitors) rec_.monitor_names.push_back(m.name);
    rec_.monitor_values.resize(monitors.size());
  }

  void record(double t, const Eigen::VectorXd& y) {
    std::vector<double> vals(monitors_.size());
    for (std::size_t k = 0; k < monitors_.size(); ++k) vals[k] = monitors_[k].eval(y);
    rec_.times.push_back(t);
    rec_.states.push_back(y);
    for (std::size_t k = 0; k < vals.size(); ++k) rec_.monitor_values[k].push_back(vals[k]);
  }

 private:
  TrajectoryRecord& rec_;
  const std::vector<Monitor>& monitors_;
};

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

Eigen::VectorXd checked_rhs(const RhsFn& f, double t, const Eigen::VectorXd& y) {
  Eigen::VectorXd k = f(t, y);
  if (!finite(k)) throw Error(ErrorCode::invalid_argument, "vector field returned a non-finite value");
  return k;
}

Eigen::VectorXd rk4_step(const RhsFn& f, double t, const Eigen::VectorXd& y, double h) {
  const Eigen::VectorXd k1 = checked_rhs(f, t, y);
  const Eigen::VectorXd k2 = checked_rhs(f, t + 0.5 * h, y + 0.5 * h * k1);
  const Eigen::VectorXd k3 = checked_rhs(f, t + 0.5 * h, y + 0.5 * h * k2);
  const Eigen::VectorXd k4 = checked_rhs(f, t + h, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct DpResult {
  Eigen::VectorXd y;
  Eigen::VectorXd k7;
  double err;
};

DpResult dp_step(const RhsFn& f, double t, const Eigen::VectorXd& y, const Eigen::VectorXd& k1,
                 double h, double rtol, double atol) {
  const Eigen::VectorXd k2 = checked_rhs(f, t + c2 * h, y + h * (a21 * k1));
  const Eigen::VectorXd k3 = checked_rhs(f, t + c3 * h, y + h * (a31 * k1 + a32 * k2));
  const Eigen::VectorXd k4 = checked_rhs(f, t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const Eigen::VectorXd k5 =
      checked_rhs(f, t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const Eigen::VectorXd k6 =
      checked_rhs(f, t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  Eigen::VectorXd yn = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  Eigen::VectorXd k7 = checked_rhs(f, t + h, yn);
  const Eigen::VectorXd e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  const Eigen::ArrayXd scale = atol + rtol * y.cwiseAbs().array().max(yn.cwiseAbs().array());
  const double err = y.size() == 0 ? 0.0 : std::sqrt((e.array() / scale).square().mean());
  return {std::move(yn), std::move(k7), err};
}

// Starting step after Hairer, Norsett and Wanner, section II.4.
double initial_step(const RhsFn& f, const Eigen::VectorXd& y, const Eigen::VectorXd& k1,
                    double rtol, double atol, double t_end) {
  if (y.size() == 0) return t_end;
  const Eigen::ArrayXd sc = atol + rtol * y.cwiseAbs().array();
  const double d0 = std::sqrt((y.array() / sc).square().mean());
  const double d1 = std::sqrt((k1.array() / sc).square().mean());
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, t_end);
  const Eigen::VectorXd k2 = checked_rhs(f, h0, y + h0 * k1);
  const double d2 = std::sqrt(((k2 - k1).array() / sc).square().mean()) / h0;
  const double m = std::max(d1, d2);
  const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, t_end});
}

}  // namespace

TrajectoryRecord integrate(const RhsFn& rhs, const Eigen::VectorXd& y0, const IntegratorConfig& cfg,
                           const std::vector<Monitor>& monitors, const PostStepFn& post_step) {
  cfg.validate();
  TrajectoryRecord rec;
  Recorder recorder(rec, monitors);
  Eigen::VectorXd y = y0;
  double t = 0.0;
  const bool by_interval = cfg.sample_interval > 0.0;
  long next_sample_index = 1;
  auto next_sample_time = [&] {
    return std::min(cfg.t_end, static_cast<double>(next_sample_index) * cfg.sample_interval);
  };

  auto after_step = [&](double tn, bool force) {
    if (post_step && post_step(y)) ++rec.post_step_changes;
    ++rec.accepted_steps;
    bool take = false;
    if (by_interval) {
      if (tn >= next_sample_time()) {
        take = true;
        ++next_sample_index;
      }
    } else {
      take = rec.accepted_steps % cfg.sample_stride == 0;
    }
    if (take || force) recorder.record(tn, y);
  };

  const long steps = std::max(1L, static_cast<long>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  if (cfg.method == Method::rk4 && steps > cfg.max_steps)
    throw Error(ErrorCode::config, "integrator.dt: t_end / dt exceeds max_steps");

  try {
    recorder.record(0.0, y);
    if (cfg.method == Method::rk4) {
      for (long k = 0; k < steps; ++k) {
        const double tn = (k + 1 == steps) ? cfg.t_end : static_cast<double>(k + 1) * cfg.dt;
        y = rk4_step(rhs, t, y, tn - t);
        t = tn;
        after_step(t, k + 1 == steps && rec.times.back() != t);
      }
    } else {
      Eigen::VectorXd k1 = checked_rhs(rhs, t, y);
      double h = cfg.initial_dt > 0.0 ? cfg.initial_dt
                                      : initial_step(rhs, y, k1, cfg.rtol, cfg.atol, cfg.t_end);
      long attempts = 0;
      while (t < cfg.t_end) {
        if (++attempts > cfg.max_steps) throw Error(ErrorCode::invalid_argument, "step limit exceeded");
        double target = by_interval ? next_sample_time() : cfg.t_end;
        double hs = h;
        bool lands = false;
        if (t + hs >= target * (1.0 - 1e-14) || target - (t + hs) < 1e-12 * std::max(1.0, target)) {
          hs = target - t;
          lands = true;
        }
        if (!(hs > 0.0) || hs < 1e-14 * std::max(1.0, std::abs(t)))
          throw Error(ErrorCode::invalid_argument, "step size underflow at t = " + std::to_string(t));
        DpResult r = dp_step(rhs, t, y, k1, hs, cfg.rtol, cfg.atol);
        const double fac = r.err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(r.err, -0.2), 0.2, 5.0);
        if (r.err <= 1.0) {
          t = lands ? target : t + hs;
          y = std::move(r.y);
          k1 = std::move(r.k7);
          const Eigen::VectorXd before = y;
          after_step(t, t >= cfg.t_end && rec.times.back() != t);
          if (y != before) k1 = checked_rhs(rhs, t, y);
          // Do not let the shortened landing step shrink the controller's step.
          h = lands ? std::max(h, hs * fac) : hs * fac;
        } else {
          ++rec.rejected_steps;
          h = hs * std::max(0.2, fac);
        }
      }
    }
  } catch (const Error& e) {
    rec.halted = true;
    rec.halt_reason = e.what();
    rec.halt_code = e.code();
  }
  return rec;
}

}  // namespace vortex
