#pragma once

// Energy-Casimir analysis of the tetrahedron relative equilibrium (N = 4).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vortex/shape.hpp"
#include "vortex/sphere.hpp"

namespace vortex {

/// s = (4/3, 4/3, 4/3), mu_12 = -mu_13 = mu_23 = 8i / (3 sqrt3).
ShapePoint tetrahedron_equilibrium();

/// Regular tetrahedron on the sphere of radius R realising tetrahedron_equilibrium():
/// (R/3) (2sqrt2, 0, -1), (R/3) (-sqrt2, sqrt6, -1), (R/3) (-sqrt2, -sqrt6, -1), (0, 0, R).
SphereState tetrahedron_configuration(double radius);

/// Phi(x) = phi1 x + phi2 x^2 / 2 and Psi(y) = psi_grad . y + y^T psi_hessian y / 2.
/// Defaults give Phi(x) = -3x/2 and Psi(y) = |y|^2.
struct EnergyCasimirSpec {
  double phi1 = -1.5;
  double phi2 = 0.0;
  Eigen::Vector3d psi_grad = Eigen::Vector3d::Zero();
  Eigen::Matrix3d psi_hessian = 2.0 * Eigen::Matrix3d::Identity();

  double phi(double x) const { return phi1 * x + 0.5 * phi2 * x * x; }
  double psi(const Eigen::Vector3d& y) const { return psi_grad.dot(y) + 0.5 * y.dot(psi_hessian * y); }
  /// Phi'(0) = -3/2 and D Psi(0) = 0.
  bool is_critical_family() const;
};

/// E = H + (1/(pi R^2)) (Phi(C_2 - C_2(z_e)) / 8 + (3/256) Psi(f_12, f_13, f_23)).
/// Throws ErrorCode::invalid_argument "tetrahedron analysis requires N=4" for N != 4.
double energy_casimir(const ShapePoint& z, const Circulations& c, const EnergyCasimirSpec& spec = {});

/// Central-difference gradient of energy_casimir in the real chart.
Eigen::VectorXd energy_casimir_gradient(const ShapePoint& z, const Circulations& c,
                                        const EnergyCasimirSpec& spec = {}, double step = 1e-6);

/// Closed-form leading principal minors d_1..d_9 of A = (256/9) pi R^2 D^2 E(z_e)
/// for Phi''(0) = 0 and diagonal D^2 Psi(0) = diag(psi_diag).
/// Throws ErrorCode::zero_circulation for a zero entry of gamma.
std::array<double, 9> hessian_minors_closed(const std::array<double, 4>& gamma,
                                            const Eigen::Vector3d& psi_diag);

enum class Verdict { stable, inconclusive };

std::string to_string(Verdict v);

struct StabilityReport {
  std::array<double, 4> gamma{};
  double radius = 1.0;
  double gradient_norm = 0.0;
  Eigen::MatrixXd hessian;        // D^2 E(z_e), symmetrized
  double symmetry_residual = 0.0;  // max |H - H^T| before symmetrization
  Eigen::MatrixXd scaled;         // A = (256/9) pi R^2 hessian
  Eigen::VectorXd eigenvalues;    // of A, ascending
  std::array<double, 9> minors{};  // leading principal minors of A
  std::optional<std::array<double, 9>> closed_minors;  // when the spec meets the closed-form assumptions
  bool minors_match = false;      // all nine within minor_tolerance (relative)
  double minor_tolerance = 1e-5;
  std::string note;               // mismatch or applicability remarks
  Verdict verdict = Verdict::inconclusive;
};

/// Numerical Hessian of E at z_e (central second differences with step
/// 3e-3 max(1, |y_k|) and one Richardson refinement), eigenvalues and minors.
/// Verdict is stable iff the smallest eigenvalue of A is positive.
/// Throws ErrorCode::not_critical "not a critical point family" unless
/// spec.is_critical_family().
StabilityReport analyze_tetrahedron(const std::array<double, 4>& gamma, double radius,
                                    const EnergyCasimirSpec& spec = {});

/// analyze_tetrahedron over independent circulation samples, evaluated concurrently.
std::vector<StabilityReport> analyze_sweep(const std::vector<std::array<double, 4>>& gammas,
                                           double radius, const EnergyCasimirSpec& spec = {});

}  // namespace vortex
