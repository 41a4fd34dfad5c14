#pragma once

// The Lie algebra u(N)_Gamma with the modified bracket
//   [xi, eta]_Gamma = xi D^{-1} eta - eta D^{-1} xi,   D = diag(gamma),
// its dual (identified with itself through <a, b> = 2 Re tr(a^* b)), the
// Lie-Poisson vector field of the collective Hamiltonian, and the Casimirs
// C_j = tr((i D lambda)^j).
//
// Coordinates follow the orthonormal basis D_i, E_ij, F_ij: an element is
//
//   lambda = -(i/2) [ sqrt2 l_1   l_12  ...  l_1N ]
//                   [ conj l_12 sqrt2 l_2 ...     ]
//                   [ ...                         ]
//
// with real l_i and complex l_ij (i < j). Extended entries obey
// l_ji = conj(l_ij) and l_ii = sqrt2 l_i.

#include <vector>

#include <Eigen/Dense>

#include "vortex/geometry.hpp"
#include "vortex/sphere.hpp"

namespace vortex {

class AlgebraVector {
 public:
  AlgebraVector() = default;
  /// The zero element of u(N).
  explicit AlgebraVector(int n);

  int size() const { return n_; }

  double diag(int i) const { return diag_(i); }
  void set_diag(int i, double v) { diag_(i) = v; }
  /// l_ij for i < j.
  cplx upper(int i, int j) const;
  void set_upper(int i, int j, cplx v);
  /// Extended entry l_ab for any a, b.
  cplx entry(int a, int b) const;

  /// The anti-Hermitian N x N matrix.
  Eigen::MatrixXcd matrix() const;
  /// Throws ErrorCode::invalid_argument if m is not anti-Hermitian within tol.
  static AlgebraVector from_matrix(const Eigen::MatrixXcd& m, double tol = 1e-10);

  /// Real coordinates (l_1..l_N, Re l_12, Im l_12, Re l_13, ...), length N^2.
  Eigen::VectorXd coordinates() const;
  static AlgebraVector from_coordinates(const Eigen::VectorXd& y, int n);

 private:
  int n_ = 0;
  Eigen::VectorXd diag_;
  std::vector<cplx> upper_;
};

using AlgebraPoint = AlgebraVector;    // lambda in u(N)_Gamma^*
using AlgebraElement = AlgebraVector;  // xi in u(N)_Gamma

/// Number of real coordinates, N^2.
inline int algebra_dim(int n) { return n * n; }

/// Orthonormal basis matrix for real coordinate index k.
Eigen::MatrixXcd algebra_basis(int n, int k);

/// <a, b> = 2 Re tr(a^* b); equals the dot product of coordinates.
double algebra_inner(const AlgebraVector& a, const AlgebraVector& b);

AlgebraElement bracket_gamma(const AlgebraElement& xi, const AlgebraElement& eta,
                             const Circulations& c);

/// ad*_xi lambda = lambda xi D^{-1} - D^{-1} xi lambda.
AlgebraPoint ad_star(const AlgebraElement& xi, const AlgebraPoint& lambda, const Circulations& c);

/// exp(xi D^{-1}), an element of U(D_Gamma) = {U : U D U^* = D}.
Eigen::MatrixXcd group_exp(const AlgebraElement& xi, const Circulations& c);

/// Ad*_U lambda = U^* lambda U for U in U(D_Gamma).
AlgebraPoint coad_action(const Eigen::MatrixXcd& u, const AlgebraPoint& lambda);

/// A coordinate function on u(N)_Gamma^*: either the real l_i or a complex
/// extended entry l_ab (any a, b).
struct Coord {
  enum class Kind { diagonal, entry };
  Kind kind;
  int i;
  int j;
  static Coord diagonal(int i) { return {Kind::diagonal, i, i}; }
  static Coord entry(int a, int b) { return {Kind::entry, a, b}; }
};

/// Value of a coordinate function at lambda.
cplx coordinate_value(const Coord& a, const AlgebraPoint& lambda);

/// Closed-form Lie-Poisson bracket of two coordinate functions:
///   {l_i, l_j}   = 0
///   {l_ab, l_cd} = i (delta_ad l_cb / gamma_a - delta_bc l_ad / gamma_b)
/// with l_i = l_ii / sqrt2. Throws ErrorCode::invalid_argument on a bad index.
cplx lp_bracket(const Coord& a, const Coord& b, const AlgebraPoint& lambda, const Circulations& c);

/// Structure constants of u(N)_Gamma in the real coordinate basis, computed
/// once from matrix brackets: [B_a, B_b]_Gamma = sum_k k_ab^k B_k.
class StructureConstants {
 public:
  explicit StructureConstants(const Circulations& c);
  int dim() const { return dim_; }
  double operator()(int a, int b, int k) const { return data_[(a * dim_ + b) * dim_ + k]; }
  /// Poisson tensor P_ab(lambda) = {y_a, y_b} = -<lambda, [B_a, B_b]_Gamma>.
  Eigen::MatrixXd poisson_tensor(const AlgebraPoint& lambda) const;

 private:
  int n_;
  int dim_;
  std::vector<double> data_;
};

/// Collective Hamiltonian
///   h = -1/(4 pi R^2) sum_{i<j} g_i g_j ln(R^2 ((l_i + l_j)^2 / 2 - |l_ij|^2)).
/// Throws PairError(log_domain) for a nonpositive logarithm argument.
double collective_h(const AlgebraPoint& lambda, const Circulations& c);

/// delta h / delta lambda, analytic.
AlgebraElement collective_h_gradient(const AlgebraPoint& lambda, const Circulations& c);

/// delta h / delta lambda by central differences in the real coordinates.
AlgebraElement collective_h_gradient_fd(const AlgebraPoint& lambda, const Circulations& c,
                                        double step = 1e-6);

/// Lie-Poisson field lambda' = ad*_{delta h / delta lambda} lambda.
AlgebraPoint lp_rhs(const AlgebraPoint& lambda, const Circulations& c);

/// A = i D_Gamma lambda; C_j = tr(A^j).
Eigen::MatrixXcd casimir_matrix(const AlgebraPoint& lambda, const Circulations& c);

/// C_j = tr((i D lambda)^j), j >= 1. Throws ErrorCode::invalid_argument if
/// j < 1 or the trace has an imaginary part above 1e-10 relative.
double casimir(const AlgebraPoint& lambda, int j, const Circulations& c);

/// Faddeev-LeVerrier coefficients c_1..c_N of
///   p(x) = x^N - c_1 x^{N-1} - ... - c_N.
Eigen::VectorXcd faddeev_leverrier(const Eigen::MatrixXcd& a);

/// Coefficients c_1..c_k of the same sign convention from the power sums
/// p_1..p_k (Newton's identities: k c_k = p_k - sum_{m<k} c_m p_{k-m}).
Eigen::VectorXcd charpoly_from_power_sums(const Eigen::VectorXcd& p);

/// tr(A^N) - sum_{m<N} c_m tr(A^{N-m}) - N c_N with c from faddeev_leverrier.
cplx cayley_hamilton_trace_residual(const Eigen::MatrixXcd& a);

/// C_j for j > N rebuilt from C_1..C_N through p_j = sum_{m=1}^{N} c_m p_{j-m}.
double reconstruct_casimir(const AlgebraPoint& lambda, int j, const Circulations& c);

/// C_N predicted from C_1..C_{N-1} alone, assuming the constant term c_N of the
/// characteristic polynomial vanishes. That holds when i D lambda is singular,
/// which is the case on the image of the momentum map L for N >= 3 (rank <= 2).
double casimir_from_lower(const AlgebraPoint& lambda, const Circulations& c);

}  // namespace vortex
