#pragma once

// Shared generators and independent reference evaluations for the tests.
// Reference code here avoids calling the library routine it is compared with.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "vortex/geometry.hpp"
#include "vortex/liepoisson.hpp"
#include "vortex/sphere.hpp"

namespace testing_support {

using vortex::cplx;
using vortex::Vec3;

inline constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }
  cplx complex_normal() { return {normal(), normal()}; }

  Vec3 unit_vector() {
    Vec3 v(normal(), normal(), normal());
    while (v.norm() < 1e-3) v = Vec3(normal(), normal(), normal());
    return v.normalized();
  }

  vortex::Spinor spinor() {
    vortex::Spinor s;
    s << complex_normal(), complex_normal();
    return s;
  }

  /// Spinor with |phi|^2 = r.
  vortex::Spinor spinor_on(double r) { return spinor().normalized() * std::sqrt(r); }

  /// Points on the sphere of radius R with chords at least min_chord * R and
  /// no pair closer than min_chord * R to antipodal.
  vortex::SphereState sphere_state(int n, double R, double min_chord = 0.3) {
    for (;;) {
      vortex::SphereState x(n);
      for (auto& xi : x) xi = R * unit_vector();
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j)
          ok = (x[i] - x[j]).norm() > min_chord * R && (x[i] + x[j]).norm() > min_chord * R;
      if (ok) return x;
    }
  }

  std::vector<double> gammas(int n, double lo = 0.5, double hi = 2.0, bool random_sign = true) {
    std::vector<double> g(n);
    for (auto& v : g) {
      v = uniform(lo, hi);
      if (random_sign && uniform() < 0.5) v = -v;
    }
    return g;
  }

  vortex::AlgebraPoint algebra_point(int n) {
    vortex::AlgebraPoint l(n);
    for (int i = 0; i < n; ++i) {
      l.set_diag(i, normal());
      for (int j = i + 1; j < n; ++j) l.set_upper(i, j, complex_normal());
    }
    return l;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// Velocity of vortex i written out component by component.
inline Vec3 reference_velocity(const vortex::SphereState& x, const std::vector<double>& g, double R, int i) {
  double v[3] = {0, 0, 0};
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    const double dx = x[i][0] - x[j][0], dy = x[i][1] - x[j][1], dz = x[i][2] - x[j][2];
    const double l2 = dx * dx + dy * dy + dz * dz;
    const double cx = x[j][1] * x[i][2] - x[j][2] * x[i][1];
    const double cy = x[j][2] * x[i][0] - x[j][0] * x[i][2];
    const double cz = x[j][0] * x[i][1] - x[j][1] * x[i][0];
    v[0] += g[j] * cx / l2;
    v[1] += g[j] * cy / l2;
    v[2] += g[j] * cz / l2;
  }
  const double k = 1.0 / (2.0 * kPi * R);
  return Vec3(k * v[0], k * v[1], k * v[2]);
}

/// Dense matrix of lambda built entry by entry from the coordinate layout.
inline Eigen::MatrixXcd reference_matrix(const vortex::AlgebraPoint& l) {
  const int n = l.size();
  Eigen::MatrixXcd m(n, n);
  const cplx h(0.0, -0.5);
  for (int a = 0; a < n; ++a) {
    m(a, a) = h * std::sqrt(2.0) * l.diag(a);
    for (int b = a + 1; b < n; ++b) {
      m(a, b) = h * l.upper(a, b);
      m(b, a) = h * std::conj(l.upper(a, b));
    }
  }
  return m;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing_support
