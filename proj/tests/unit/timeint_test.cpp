#include "doctest.h"

#include <cmath>

#include "support.hpp"
#include "vortex/error.hpp"
#include "vortex/timeint.hpp"

using namespace vortex;
using testing_support::kPi;

namespace {

Eigen::VectorXd harmonic(double, const Eigen::VectorXd& y) {
  Eigen::VectorXd d(2);
  d << y(1), -y(0);
  return d;
}

double harmonic_error(Method m, double dt, double t_end = 2 * kPi) {
  IntegratorConfig cfg;
  cfg.method = m;
  cfg.dt = dt;
  cfg.t_end = t_end;
  const auto rec = integrate(harmonic, Eigen::Vector2d(1, 0), cfg);
  Eigen::Vector2d exact(std::cos(t_end), -std::sin(t_end));
  return (rec.states.back() - exact).norm();
}

}  // namespace

TEST_CASE("zero field gives a constant trajectory") {
  for (Method m : {Method::rk4, Method::dp54}) {
    IntegratorConfig cfg;
    cfg.method = m;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    const Eigen::Vector3d y0(1, -2, 3);
    const auto rec = integrate([](double, const Eigen::VectorXd& y) { return Eigen::VectorXd::Zero(y.size()); }, y0, cfg);
    for (const auto& s : rec.states) CHECK(s == Eigen::VectorXd(y0));
    CHECK(rec.times.front() == 0.0);
    CHECK(rec.times.back() == 1.0);
  }
}

TEST_CASE("harmonic oscillator") {
  CHECK(harmonic_error(Method::rk4, 1e-3) <= 1e-10);
  IntegratorConfig cfg;
  cfg.t_end = 2 * kPi;
  const auto rec = integrate(harmonic, Eigen::Vector2d(1, 0), cfg);
  CHECK((rec.states.back() - Eigen::Vector2d(1, 0)).norm() <= 1e-8);
  CHECK(rec.times.back() == cfg.t_end);
}

TEST_CASE("RK4 observed order") {
  const double e1 = harmonic_error(Method::rk4, 1e-2);
  const double e2 = harmonic_error(Method::rk4, 5e-3);
  const double e3 = harmonic_error(Method::rk4, 2.5e-3);
  CHECK(std::log2(e1 / e2) >= 3.8);
  CHECK(std::log2(e2 / e3) >= 3.8);
}

TEST_CASE("DP54 tolerance controls the error") {
  double prev = 1.0;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    IntegratorConfig cfg;
    cfg.rtol = cfg.atol = tol;
    cfg.t_end = 10.0;
    const auto rec = integrate(harmonic, Eigen::Vector2d(1, 0), cfg);
    const double err = (rec.states.back() - Eigen::Vector2d(std::cos(10.0), -std::sin(10.0))).norm();
    CHECK(err < prev);
    CHECK(err <= 1e3 * tol);
    prev = err;
  }
}

TEST_CASE("sampling") {
  IntegratorConfig cfg;
  cfg.method = Method::rk4;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.sample_stride = 10;
  const std::vector<Monitor> mons{{"energy", [](const Eigen::VectorXd& y) { return y.squaredNorm(); }}};
  auto rec = integrate(harmonic, Eigen::Vector2d(1, 0), cfg, mons);
  CHECK(rec.samples() == 11);
  CHECK(rec.monitor_names == std::vector<std::string>{"energy"});
  CHECK(rec.monitor_values.at(0).size() == rec.samples());
  for (std::size_t k = 1; k < rec.times.size(); ++k) CHECK(rec.times[k] > rec.times[k - 1]);

  cfg.method = Method::dp54;
  cfg.sample_interval = 0.25;
  rec = integrate(harmonic, Eigen::Vector2d(1, 0), cfg, mons);
  REQUIRE(rec.samples() == 5);
  for (int k = 0; k < 5; ++k) CHECK(rec.times[k] == doctest::Approx(0.25 * k).epsilon(1e-15));
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(rec.states[k](0) - std::cos(rec.times[k])) <= 1e-8);
}

TEST_CASE("determinism") {
  IntegratorConfig cfg;
  cfg.t_end = 5.0;
  const auto a = integrate(harmonic, Eigen::Vector2d(0.3, 0.7), cfg);
  const auto b = integrate(harmonic, Eigen::Vector2d(0.3, 0.7), cfg);
  REQUIRE(a.samples() == b.samples());
  for (std::size_t k = 0; k < a.samples(); ++k) {
    CHECK(a.times[k] == b.times[k]);
    CHECK(a.states[k] == b.states[k]);
  }
  CHECK(a.accepted_steps == b.accepted_steps);
}

TEST_CASE("halting keeps the partial record") {
  IntegratorConfig cfg;
  cfg.method = Method::rk4;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  auto rhs = [](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    if (t > 0.5) throw PairError(ErrorCode::collision, "collision between vortices 1 and 2", 0, 1);
    return Eigen::VectorXd::Ones(y.size());
  };
  const auto rec = integrate(rhs, Eigen::VectorXd::Zero(1), cfg);
  CHECK(rec.halted);
  CHECK(rec.halt_code == ErrorCode::collision);
  CHECK(rec.halt_reason == "collision between vortices 1 and 2");
  CHECK(rec.samples() > 10);
  CHECK(rec.times.back() <= 0.5 + 1e-12);
}

TEST_CASE("post-step hook") {
  IntegratorConfig cfg;
  cfg.method = Method::rk4;
  cfg.dt = 0.1;
  cfg.t_end = 1.0;
  auto clamp = [](Eigen::VectorXd& y) {
    y /= y.norm();
    return true;
  };
  const auto rec = integrate(harmonic, Eigen::Vector2d(1, 0), cfg, {}, clamp);
  CHECK(rec.post_step_changes == 10);
  for (const auto& s : rec.states) CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("configuration validation") {
  IntegratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.method = Method::rk4;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.rtol = -1;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.t_end = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.sample_stride = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK(method_from_string("rk4") == Method::rk4);
  CHECK(method_from_string("dp54") == Method::dp54);
  CHECK(to_string(Method::dp54) == "dp54");
  CHECK_THROWS_AS(method_from_string("euler"), Error);
}
