#pragma once

// Point-vortex dynamics on the sphere of radius R embedded in R^3.

#include <vector>

#include "vortex/geometry.hpp"

namespace vortex {

/// Vortex strengths together with the sphere radius.
class Circulations {
 public:
  /// Throws ErrorCode::zero_circulation if some gamma_i == 0 and
  /// ErrorCode::invalid_argument for an empty list or R <= 0.
  Circulations(std::vector<double> gamma, double radius);

  int size() const { return static_cast<int>(gamma_.size()); }
  double operator[](int i) const { return gamma_[i]; }
  const std::vector<double>& gamma() const { return gamma_; }
  double radius() const { return radius_; }
  double total() const;
  /// Chord length below which two vortices count as collided.
  double collision_threshold() const { return 1e-8 * radius_; }

 private:
  std::vector<double> gamma_;
  double radius_;
};

using SphereState = std::vector<Vec3>;

/// Checks the state length and |x_i| = R within 1e-9 R.
void check_sphere_state(const SphereState& x, const Circulations& c);

/// Velocities dx_i/dt = 1/(2 pi R) sum_j gamma_j (x_j x x_i) / |x_i - x_j|^2.
/// Throws PairError(collision) when a chord drops to the collision threshold.
std::vector<Vec3> rhs_sphere(const SphereState& x, const Circulations& c);

/// -1/(4 pi R^2) sum_{i<j} gamma_i gamma_j ln(2 (R^2 - x_i . x_j)).
double hamiltonian_sphere(const SphereState& x, const Circulations& c);

/// Ambient form: -1/(4 pi R^2) sum_{i<j} gamma_i gamma_j ln |x_i - x_j|^2.
/// Agrees with hamiltonian_sphere on the sphere.
double hamiltonian_r3(const SphereState& x, const Circulations& c);

/// Gradient of hamiltonian_r3 with respect to each x_i.
std::vector<Vec3> hamiltonian_r3_gradient(const SphereState& x, const Circulations& c);

/// Moment of vorticity I = (1/R) sum gamma_i x_i.
Vec3 moment_of_vorticity(const SphereState& x, const Circulations& c);

/// d(l_ij^2)/dt for every pair i < j in lexicographic order, from distances
/// and signed volumes only.
std::vector<double> relative_rhs(const SphereState& x, const Circulations& c);

/// {F, H} = sum_i (R / gamma_i) x_i . (dF/dx_i x dH/dx_i).
double poisson_bracket_r3(const std::vector<Vec3>& grad_f, const std::vector<Vec3>& grad_h,
                          const SphereState& x, const Circulations& c);

/// Rescales every x_i to radius R if some |x_i| drifted by more than
/// tol_rel * R. Returns whether anything changed.
bool renormalize_sphere_state(SphereState& x, double radius, double tol_rel = 1e-10);

}  // namespace vortex
