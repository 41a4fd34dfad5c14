#pragma once

// Lifted dynamics on (C^2)^N and the momentum maps defined there.

#include <vector>

#include <Eigen/Dense>

#include "vortex/geometry.hpp"
#include "vortex/liepoisson.hpp"
#include "vortex/sphere.hpp"

namespace vortex {

/// Columns phi_i of Phi in C^{2 x N}.
using LiftedState = std::vector<Spinor>;

/// Lifts every vortex with hopf_lift. `phases` is empty (all zero) or has N entries.
LiftedState lift_state(const SphereState& x, const std::vector<double>& phases = {});

/// Hopf projection of each column.
SphereState project_state(const LiftedState& phi);

/// Phi as a 2 x N matrix.
Eigen::MatrixXcd lifted_matrix(const LiftedState& phi);

/// H(Phi) = -1/(4 pi R^2) sum_{i<j} g_i g_j ln((|phi_i|^2 + |phi_j|^2)^2 - 4 |phi_i* phi_j|^2).
/// Throws PairError(lifted_collision) for a nonpositive argument.
double hamiltonian_lifted(const LiftedState& phi, const Circulations& c);

/// Wirtinger gradient dH/d(conj phi_i), with dH = 2 Re sum_i <dH/d(conj phi_i), d phi_i>.
std::vector<Spinor> hamiltonian_gradient_lifted(const LiftedState& phi, const Circulations& c);

/// g_i phi_i' = -(i R / 2) dH/d(conj phi_i).
std::vector<Spinor> rhs_lifted(const LiftedState& phi, const Circulations& c);

/// J = -(2/R) (g_1 |phi_1|^2, ..., g_N |phi_N|^2).
Eigen::VectorXd momentum_J(const LiftedState& phi, const Circulations& c);

/// K = -(i/R) Phi D Phi^*.
Eigen::Matrix2cd momentum_K(const LiftedState& phi, const Circulations& c);

/// L = -(i/R) Phi^* Phi, so that l_i = (sqrt2/R)|phi_i|^2 and l_ij = (2/R) phi_i^* phi_j.
AlgebraPoint momentum_L(const LiftedState& phi, const Circulations& c);

/// M(phi) = (gamma/R) hopf_project(phi).
Vec3 momentum_M(const Spinor& phi, double gamma, double radius);

}  // namespace vortex
