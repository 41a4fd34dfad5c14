#pragma once

// Shape coordinates after reduction by the torus T^{N-1}:
//   s_i  = |l_iN|^2                      (i < N)
//   mu_ij = l_ij l_Ni l_jN               (i < j < N)
// carried in the real chart (s_1..s_{N-1}, Re mu_12, Im mu_12, Re mu_13, ...).
// Indices are zero-based; the last vortex plays the role of N.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "vortex/geometry.hpp"
#include "vortex/liepoisson.hpp"
#include "vortex/sphere.hpp"

namespace vortex {

class ShapePoint {
 public:
  ShapePoint() = default;
  /// Zero shape for n_vortices >= 2.
  explicit ShapePoint(int n_vortices);

  int vortices() const { return n_; }
  /// Number of s variables, N - 1.
  int size() const { return n_ - 1; }

  double s(int i) const { return s_(i); }
  void set_s(int i, double v) { s_(i) = v; }
  /// mu_ij for i < j < N - 1.
  cplx mu(int i, int j) const;
  void set_mu(int i, int j, cplx v);
  /// mu_ab for any a, b < N - 1 with mu_ba = conj(mu_ab) and mu_aa = 2 s_a.
  cplx mu_extended(int a, int b) const;

  Eigen::VectorXd chart() const;
  static ShapePoint from_chart(const Eigen::VectorXd& y, int n_vortices);

 private:
  int n_ = 0;
  Eigen::VectorXd s_;
  std::vector<cplx> mu_;
};

/// (N - 1)^2.
inline int shape_chart_dim(int n_vortices) { return (n_vortices - 1) * (n_vortices - 1); }

/// Margin for admissible shapes.
inline constexpr double kShapeEps = 1e-10;

/// Throws ErrorCode::invalid_argument unless every s_i lies in (eps, 4 - eps)
/// and every |mu_ij| >= eps.
void check_admissible(const ShapePoint& z, double eps = kShapeEps);

/// s_i = 4 - l_iN^2 / R^2, Re mu_ij = s_ij + s_i + s_j - 4, Im mu_ij = 2 V_ijN / R^3,
/// with s_ij = 4 - l_ij^2 / R^2 and V_ijk = x_i . (x_j x x_k).
/// Throws PairError(antipodal) if some |l_ij|^2 <= kShapeEps and
/// PairError(collision) on coincident vortices.
ShapePoint shape_from_sphere(const SphereState& x, const Circulations& c);

/// s_i = |l_iN|^2, mu_ij = l_ij l_Ni l_jN.
ShapePoint shape_from_algebra(const AlgebraPoint& lambda);

/// A point of the T^{N-1} orbit over z: l_i = sqrt2, l_iN = sqrt(s_i),
/// l_ij = mu_ij / sqrt(s_i s_j).
AlgebraPoint algebra_from_shape(const ShapePoint& z);

/// f_ij = Re mu_ij - |mu_ij|^2 / (s_i s_j) - s_i - s_j + 4 in pair order.
/// Throws ErrorCode::invalid_argument if some s_i == 0.
std::vector<double> f_constraints(const ShapePoint& z);

/// Root of f_ij = 0 in Re mu_ij nearest to `reference`.
/// Throws ErrorCode::invalid_argument if no real root exists.
double solve_re_mu(double s_i, double s_j, double im_mu, double reference);

/// Replaces each Re mu_ij by the nearest root of f_ij = 0.
ShapePoint project_constraints(const ShapePoint& z);

/// Shape Hamiltonian. Throws PairError(log_domain) naming the offending pair.
double shape_hamiltonian(const ShapePoint& z, const Circulations& c);

/// Gradient of shape_hamiltonian in the real chart.
Eigen::VectorXd shape_hamiltonian_gradient(const ShapePoint& z, const Circulations& c);

/// A complex coordinate function on the shape space.
struct ShapeCoord {
  enum class Kind { s, mu, mu_conj };
  Kind kind;
  int i;
  int j;
  static ShapeCoord s_of(int i) { return {Kind::s, i, i}; }
  static ShapeCoord mu_of(int i, int j) { return {Kind::mu, i, j}; }
  static ShapeCoord mu_conj_of(int i, int j) { return {Kind::mu_conj, i, j}; }
};

/// Bracket of two shape coordinates, pushed forward from the Lie-Poisson
/// bracket by the Leibniz rule at algebra_from_shape(z).
cplx shape_bracket(const ShapeCoord& a, const ShapeCoord& b, const ShapePoint& z,
                   const Circulations& c);

enum class ClosedFormVariant {
  corrected,  // last term of the i < j = l < m case enters with a plus sign
  printed,    // minus sign, as commonly quoted
};

/// Closed-form brackets {s_i, s_k}, {s_i, mu_kl} and the overlapping
/// {mu_ij, mu_lm} cases (i = l, j = m, j = l and its mirror). Returns nullopt
/// for index patterns without a closed form (disjoint mu pairs, conjugates).
std::optional<cplx> shape_bracket_closed(const ShapeCoord& a, const ShapeCoord& b,
                                         const ShapePoint& z, const Circulations& c,
                                         ClosedFormVariant variant = ClosedFormVariant::corrected);

/// Real-chart Poisson tensor T_ab = {y_a, y_b}.
Eigen::MatrixXd shape_poisson_tensor(const ShapePoint& z, const Circulations& c);

/// Shape vector field T grad H, returned as a tangent in ShapePoint layout.
ShapePoint shape_rhs(const ShapePoint& z, const Circulations& c);

/// C_2 = sum g_i^2 + 1/2 sum_{i<j<N} g_i g_j |mu_ij|^2 / (s_i s_j) + (g_N / 2) sum_i g_i s_i.
double casimir_shape_c2(const ShapePoint& z, const Circulations& c);

/// C_j evaluated at algebra_from_shape(z).
double casimir_shape(const ShapePoint& z, int j, const Circulations& c);

}  // namespace vortex
