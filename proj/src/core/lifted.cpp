#include "vortex/lifted.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "vortex/error.hpp"

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;

void check_size(const LiftedState& phi, const Circulations& c) {
  if (static_cast<int>(phi.size()) != c.size())
    throw Error(ErrorCode::dimension_mismatch, "lifted state has " + std::to_string(phi.size()) +
                                                   " columns but " + std::to_string(c.size()) +
                                                   " circulations were given");
}

double lifted_argument(const Spinor& a, const Spinor& b, int i, int j) {
  const double d = pair_identities(a, b).dist2;
  if (!(d > 0.0))
    throw PairError(ErrorCode::lifted_collision,
                    "lifted collision between vortices " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1),
                    i, j);
  return d;
}

}  // namespace

LiftedState lift_state(const SphereState& x, const std::vector<double>& phases) {
  if (!phases.empty() && phases.size() != x.size())
    throw Error(ErrorCode::dimension_mismatch, "need one phase per vortex");
  LiftedState phi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    phi[i] = hopf_lift(x[i], phases.empty() ? 0.0 : phases[i]);
  return phi;
}

SphereState project_state(const LiftedState& phi) {
  SphereState x(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) x[i] = hopf_project(phi[i]);
  return x;
}

Eigen::MatrixXcd lifted_matrix(const LiftedState& phi) {
  Eigen::MatrixXcd m(2, static_cast<Eigen::Index>(phi.size()));
  for (std::size_t i = 0; i < phi.size(); ++i) m.col(i) = phi[i];
  return m;
}

double hamiltonian_lifted(const LiftedState& phi, const Circulations& c) {
  check_size(phi, c);
  const double R = c.radius();
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i)
    for (int j = i + 1; j < c.size(); ++j)
      sum += c[i] * c[j] * std::log(lifted_argument(phi[i], phi[j], i, j));
  return -sum / (4.0 * kPi * R * R);
}

std::vector<Spinor> hamiltonian_gradient_lifted(const LiftedState& phi, const Circulations& c) {
  check_size(phi, c);
  const int n = c.size();
  const double R = c.radius();
  std::vector<Spinor> g(n, Spinor::Zero());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = lifted_argument(phi[i], phi[j], i, j);
      const double s = phi[i].squaredNorm() + phi[j].squaredNorm();
      const cplx pji = phi[j].dot(phi[i]);  // phi_j^* phi_i
      const double w = c[i] * c[j] / d;
      g[i] += w * (2.0 * s * phi[i] - 4.0 * pji * phi[j]);
      g[j] += w * (2.0 * s * phi[j] - 4.0 * std::conj(pji) * phi[i]);
    }
  for (auto& gi : g) gi *= -1.0 / (4.0 * kPi * R * R);
  return g;
}

std::vector<Spinor> rhs_lifted(const LiftedState& phi, const Circulations& c) {
  std::vector<Spinor> g = hamiltonian_gradient_lifted(phi, c);
  const cplx k(0.0, -0.5 * c.radius());
  for (int i = 0; i < c.size(); ++i) g[i] *= k / c[i];
  return g;
}

Eigen::VectorXd momentum_J(const LiftedState& phi, const Circulations& c) {
  check_size(phi, c);
  Eigen::VectorXd j(c.size());
  for (int i = 0; i < c.size(); ++i) j(i) = -2.0 / c.radius() * c[i] * phi[i].squaredNorm();
  return j;
}

Eigen::Matrix2cd momentum_K(const LiftedState& phi, const Circulations& c) {
  check_size(phi, c);
  Eigen::Matrix2cd k = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < c.size(); ++i) k += c[i] * phi[i] * phi[i].adjoint();
  return cplx(0.0, -1.0 / c.radius()) * k;
}

AlgebraPoint momentum_L(const LiftedState& phi, const Circulations& c) {
  check_size(phi, c);
  const int n = c.size();
  const double R = c.radius();
  AlgebraPoint l(n);
  for (int i = 0; i < n; ++i) {
    l.set_diag(i, std::sqrt(2.0) / R * phi[i].squaredNorm());
    for (int j = i + 1; j < n; ++j) l.set_upper(i, j, 2.0 / R * phi[i].dot(phi[j]));
  }
  return l;
}

Vec3 momentum_M(const Spinor& phi, double gamma, double radius) {
  return gamma / radius * hopf_project(phi);
}

}  // namespace vortex
