#include "vortex/sphere.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "vortex/error.hpp"
#include "vortex/pairs.hpp"

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void throw_collision(int i, int j) {
  throw PairError(ErrorCode::collision,
                  "vortex collision between vortices " + std::to_string(i + 1) + " and " +
                      std::to_string(j + 1),
                  i, j);
}

double checked_chord2(const SphereState& x, const Circulations& c, int i, int j) {
  const double l2 = (x[i] - x[j]).squaredNorm();
  const double eps = c.collision_threshold();
  if (!(l2 > eps * eps)) throw_collision(i, j);
  return l2;
}

void check_size(const SphereState& x, const Circulations& c) {
  if (static_cast<int>(x.size()) != c.size())
    throw Error(ErrorCode::dimension_mismatch, "sphere state has " + std::to_string(x.size()) +
                                                   " vortices but " + std::to_string(c.size()) +
                                                   " circulations were given");
}

}  // namespace

Circulations::Circulations(std::vector<double> gamma, double radius)
    : gamma_(std::move(gamma)), radius_(radius) {
  if (gamma_.empty()) throw Error(ErrorCode::invalid_argument, "at least one vortex is required");
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw Error(ErrorCode::invalid_argument, "sphere radius must be positive");
  for (std::size_t i = 0; i < gamma_.size(); ++i) {
    if (gamma_[i] == 0.0 || !std::isfinite(gamma_[i]))
      throw Error(ErrorCode::zero_circulation,
                  "circulation " + std::to_string(i + 1) + " must be finite and nonzero");
  }
}

double Circulations::total() const { return std::accumulate(gamma_.begin(), gamma_.end(), 0.0); }

void check_sphere_state(const SphereState& x, const Circulations& c) {
  check_size(x, c);
  const double R = c.radius();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i].norm() - R) > 1e-9 * R)
      throw Error(ErrorCode::invalid_argument,
                  "vortex " + std::to_string(i + 1) + " is not on the sphere of radius " +
                      std::to_string(R));
  }
}

std::vector<Vec3> rhs_sphere(const SphereState& x, const Circulations& c) {
  check_size(x, c);
  const int n = c.size();
  std::vector<Vec3> v(n, Vec3::Zero());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double l2 = checked_chord2(x, c, i, j);
      const Vec3 cr = x[j].cross(x[i]) / l2;  // x_j x x_i; the (j, i) term is its negative
      v[i] += c[j] * cr;
      v[j] -= c[i] * cr;
    }
  }
  const double scale = 1.0 / (2.0 * kPi * c.radius());
  for (auto& vi : v) vi *= scale;
  return v;
}

double hamiltonian_sphere(const SphereState& x, const Circulations& c) {
  check_size(x, c);
  const double R = c.radius();
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i)
    for (int j = i + 1; j < c.size(); ++j) {
      checked_chord2(x, c, i, j);
      sum += c[i] * c[j] * std::log(2.0 * (R * R - x[i].dot(x[j])));
    }
  return -sum / (4.0 * kPi * R * R);
}

double hamiltonian_r3(const SphereState& x, const Circulations& c) {
  check_size(x, c);
  const double R = c.radius();
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i)
    for (int j = i + 1; j < c.size(); ++j) sum += c[i] * c[j] * std::log(checked_chord2(x, c, i, j));
  return -sum / (4.0 * kPi * R * R);
}

std::vector<Vec3> hamiltonian_r3_gradient(const SphereState& x, const Circulations& c) {
  check_size(x, c);
  const int n = c.size();
  const double R = c.radius();
  std::vector<Vec3> g(n, Vec3::Zero());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double l2 = checked_chord2(x, c, i, j);
      const Vec3 d = 2.0 * c[i] * c[j] * (x[i] - x[j]) / l2;
      g[i] += d;
      g[j] -= d;
    }
  for (auto& gi : g) gi *= -1.0 / (4.0 * kPi * R * R);
  return g;
}

Vec3 moment_of_vorticity(const SphereState& x, const Circulations& c) {
  check_size(x, c);
  Vec3 m = Vec3::Zero();
  for (int i = 0; i < c.size(); ++i) m += c[i] * x[i];
  return m / c.radius();
}

std::vector<double> relative_rhs(const SphereState& x, const Circulations& c) {
  check_size(x, c);
  const int n = c.size();
  std::vector<double> inv_l2(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      inv_l2[i * n + j] = inv_l2[j * n + i] = 1.0 / checked_chord2(x, c, i, j);

  std::vector<double> rate(pair_count(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double vol = x[i].dot(x[j].cross(x[k]));
        acc += c[k] * vol * (inv_l2[j * n + k] - inv_l2[k * n + i]);
      }
      rate[pair_index(i, j, n)] = acc / (kPi * c.radius());
    }
  return rate;
}

double poisson_bracket_r3(const std::vector<Vec3>& grad_f, const std::vector<Vec3>& grad_h,
                          const SphereState& x, const Circulations& c) {
  check_size(x, c);
  if (grad_f.size() != x.size() || grad_h.size() != x.size())
    throw Error(ErrorCode::dimension_mismatch, "poisson_bracket_r3: gradient length mismatch");
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i)
    sum += c.radius() / c[i] * x[i].dot(grad_f[i].cross(grad_h[i]));
  return sum;
}

bool renormalize_sphere_state(SphereState& x, double radius, double tol_rel) {
  bool drifted = false;
  for (const auto& xi : x)
    if (std::abs(xi.norm() - radius) > tol_rel * radius) drifted = true;
  if (drifted)
    for (auto& xi : x) xi *= radius / xi.norm();
  return drifted;
}

}  // namespace vortex
