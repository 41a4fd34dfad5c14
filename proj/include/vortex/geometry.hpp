#pragma once

// Hopf map between C^2 and R^3, the su(2) <-> R^3 identification, and the
// vector identities relating spinor inner products to R^3 geometry.

#include <complex>

#include <Eigen/Dense>

namespace vortex {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
/// One lifted vortex phi = (z, u).
using Spinor = Eigen::Vector2cd;

/// x = (2 Re(conj(z) u), 2 Im(conj(z) u), |z|^2 - |u|^2); |x| = |phi|^2.
Vec3 hopf_project(const Spinor& phi);

/// A point on the Hopf fibre over x, parametrised by the phase theta.
/// The northern chart (x3 >= 0) puts a real amplitude on z, the southern
/// chart on u. Throws ErrorCode::degenerate_point for x = 0.
Spinor hopf_lift(const Vec3& x, double theta = 0.0);

struct PairIdentities {
  double dot;    // hopf_project(a) . hopf_project(b)
  double dist2;  // |hopf_project(a) - hopf_project(b)|^2
};

/// Evaluates dot and squared distance of the projections from C^2 data only:
///   dot   = 2 |a* b|^2 - |a|^2 |b|^2
///   dist2 = (|a|^2 + |b|^2)^2 - 4 |a* b|^2
PairIdentities pair_identities(const Spinor& a, const Spinor& b);

/// (a* b)(c* a)(b* c). Its imaginary part is a quarter of the triple product
/// of the projections.
cplx triple_product_c2(const Spinor& a, const Spinor& b, const Spinor& c);

/// xi -> sum_k xi_k tau_k with tau_k = -(i/2) sigma_k.
Eigen::Matrix2cd su2_from_vec(const Vec3& xi);

/// Inverse of su2_from_vec. Throws ErrorCode::invalid_argument if m is not
/// traceless anti-Hermitian within tol (absolute, entrywise).
Vec3 su2_to_vec(const Eigen::Matrix2cd& m, double tol = 1e-12);

/// <a, b> = 2 Re tr(a^* b).
double su2_inner(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace vortex
