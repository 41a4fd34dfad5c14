#include "vortex/liepoisson.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "vortex/error.hpp"
#include "vortex/pairs.hpp"

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const cplx kI(0.0, 1.0);

void check_same(int n, const Circulations& c, const char* where) {
  if (n != c.size())
    throw Error(ErrorCode::dimension_mismatch, std::string(where) + ": algebra size " +
                                                   std::to_string(n) + " does not match " +
                                                   std::to_string(c.size()) + " circulations");
}

void check_index(int a, int n, const char* where) {
  if (a < 0 || a >= n)
    throw Error(ErrorCode::invalid_argument,
                std::string(where) + ": index " + std::to_string(a) + " out of range");
}

Eigen::VectorXd inverse_gamma(const Circulations& c) {
  Eigen::VectorXd d(c.size());
  for (int i = 0; i < c.size(); ++i) d(i) = 1.0 / c[i];
  return d;
}

}  // namespace

AlgebraVector::AlgebraVector(int n)
    : n_(n), diag_(Eigen::VectorXd::Zero(n)), upper_(pair_count(n), cplx(0.0)) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "algebra size must be positive");
}

cplx AlgebraVector::upper(int i, int j) const { return upper_[pair_index(i, j, n_)]; }

void AlgebraVector::set_upper(int i, int j, cplx v) { upper_[pair_index(i, j, n_)] = v; }

cplx AlgebraVector::entry(int a, int b) const {
  if (a == b) return kSqrt2 * diag_(a);
  return a < b ? upper(a, b) : std::conj(upper(b, a));
}

Eigen::MatrixXcd AlgebraVector::matrix() const {
  Eigen::MatrixXcd m(n_, n_);
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) m(a, b) = cplx(0.0, -0.5) * entry(a, b);
  return m;
}

AlgebraVector AlgebraVector::from_matrix(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw Error(ErrorCode::dimension_mismatch, "algebra matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m + m.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw Error(ErrorCode::invalid_argument, "matrix is not anti-Hermitian");
  const int n = static_cast<int>(m.rows());
  AlgebraVector v(n);
  for (int a = 0; a < n; ++a) {
    v.diag_(a) = (kI * kSqrt2 * m(a, a)).real();
    for (int b = a + 1; b < n; ++b) v.set_upper(a, b, 2.0 * kI * m(a, b));
  }
  return v;
}

Eigen::VectorXd AlgebraVector::coordinates() const {
  Eigen::VectorXd y(n_ * n_);
  y.head(n_) = diag_;
  for (std::size_t p = 0; p < upper_.size(); ++p) {
    y(n_ + 2 * p) = upper_[p].real();
    y(n_ + 2 * p + 1) = upper_[p].imag();
  }
  return y;
}

AlgebraVector AlgebraVector::from_coordinates(const Eigen::VectorXd& y, int n) {
  if (y.size() != n * n)
    throw Error(ErrorCode::dimension_mismatch, "expected " + std::to_string(n * n) +
                                                   " algebra coordinates, got " +
                                                   std::to_string(y.size()));
  AlgebraVector v(n);
  v.diag_ = y.head(n);
  for (std::size_t p = 0; p < v.upper_.size(); ++p)
    v.upper_[p] = cplx(y(n + 2 * p), y(n + 2 * p + 1));
  return v;
}

Eigen::MatrixXcd algebra_basis(int n, int k) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n * n);
  if (k < 0 || k >= n * n) throw Error(ErrorCode::invalid_argument, "basis index out of range");
  y(k) = 1.0;
  return AlgebraVector::from_coordinates(y, n).matrix();
}

double algebra_inner(const AlgebraVector& a, const AlgebraVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::dimension_mismatch, "algebra size mismatch");
  return 2.0 * (a.matrix().adjoint() * b.matrix()).trace().real();
}

AlgebraElement bracket_gamma(const AlgebraElement& xi, const AlgebraElement& eta,
                             const Circulations& c) {
  check_same(xi.size(), c, "bracket_gamma");
  check_same(eta.size(), c, "bracket_gamma");
  const Eigen::VectorXd gi = inverse_gamma(c);
  const auto dinv = gi.asDiagonal();
  const Eigen::MatrixXcd x = xi.matrix();
  const Eigen::MatrixXcd e = eta.matrix();
  return AlgebraVector::from_matrix(x * dinv * e - e * dinv * x);
}

AlgebraPoint ad_star(const AlgebraElement& xi, const AlgebraPoint& lambda, const Circulations& c) {
  check_same(xi.size(), c, "ad_star");
  check_same(lambda.size(), c, "ad_star");
  const Eigen::VectorXd gi = inverse_gamma(c);
  const auto dinv = gi.asDiagonal();
  const Eigen::MatrixXcd x = xi.matrix();
  const Eigen::MatrixXcd l = lambda.matrix();
  return AlgebraVector::from_matrix(l * x * dinv - dinv * x * l);
}

Eigen::MatrixXcd group_exp(const AlgebraElement& xi, const Circulations& c) {
  check_same(xi.size(), c, "group_exp");
  const Eigen::MatrixXcd z = xi.matrix() * inverse_gamma(c).asDiagonal();
  return z.exp();
}

AlgebraPoint coad_action(const Eigen::MatrixXcd& u, const AlgebraPoint& lambda) {
  if (u.rows() != lambda.size() || u.cols() != lambda.size())
    throw Error(ErrorCode::dimension_mismatch, "coad_action: group element has the wrong size");
  return AlgebraVector::from_matrix(u.adjoint() * lambda.matrix() * u, 1e-9);
}

cplx coordinate_value(const Coord& a, const AlgebraPoint& lambda) {
  check_index(a.i, lambda.size(), "coordinate");
  check_index(a.j, lambda.size(), "coordinate");
  if (a.kind == Coord::Kind::diagonal) return lambda.diag(a.i);
  return lambda.entry(a.i, a.j);
}

cplx lp_bracket(const Coord& a, const Coord& b, const AlgebraPoint& lambda, const Circulations& c) {
  check_same(lambda.size(), c, "lp_bracket");
  for (const Coord* q : {&a, &b}) {
    check_index(q->i, c.size(), "lp_bracket");
    check_index(q->j, c.size(), "lp_bracket");
  }
  // Diagonal coordinates are l_ii / sqrt2.
  const double wa = a.kind == Coord::Kind::diagonal ? 1.0 / kSqrt2 : 1.0;
  const double wb = b.kind == Coord::Kind::diagonal ? 1.0 / kSqrt2 : 1.0;
  cplx v(0.0);
  if (a.i == b.j) v += lambda.entry(b.i, a.j) / c[a.i];
  if (a.j == b.i) v -= lambda.entry(a.i, b.j) / c[a.j];
  return kI * wa * wb * v;
}

StructureConstants::StructureConstants(const Circulations& c)
    : n_(c.size()), dim_(c.size() * c.size()), data_(static_cast<std::size_t>(dim_) * dim_ * dim_) {
  std::vector<AlgebraVector> basis;
  basis.reserve(dim_);
  for (int k = 0; k < dim_; ++k) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
    y(k) = 1.0;
    basis.push_back(AlgebraVector::from_coordinates(y, n_));
  }
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) {
      const Eigen::VectorXd k = bracket_gamma(basis[a], basis[b], c).coordinates();
      for (int m = 0; m < dim_; ++m) data_[(a * dim_ + b) * dim_ + m] = k(m);
    }
}

Eigen::MatrixXd StructureConstants::poisson_tensor(const AlgebraPoint& lambda) const {
  if (lambda.size() != n_) throw Error(ErrorCode::dimension_mismatch, "poisson_tensor: size mismatch");
  const Eigen::VectorXd y = lambda.coordinates();
  Eigen::MatrixXd p(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) {
      double s = 0.0;
      for (int m = 0; m < dim_; ++m) s += (*this)(a, b, m) * y(m);
      p(a, b) = -s;
    }
  return p;
}

namespace {

double pair_argument(const AlgebraPoint& l, int i, int j, double R) {
  const double sum = l.diag(i) + l.diag(j);
  const double q = R * R * (0.5 * sum * sum - std::norm(l.upper(i, j)));
  if (!(q > 0.0))
    throw PairError(ErrorCode::log_domain,
                    "nonpositive logarithm argument for pair (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ")",
                    i, j);
  return q;
}

}  // namespace

double collective_h(const AlgebraPoint& lambda, const Circulations& c) {
  check_same(lambda.size(), c, "collective_h");
  const double R = c.radius();
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i)
    for (int j = i + 1; j < c.size(); ++j)
      sum += c[i] * c[j] * std::log(pair_argument(lambda, i, j, R));
  return -sum / (4.0 * kPi * R * R);
}

AlgebraElement collective_h_gradient(const AlgebraPoint& lambda, const Circulations& c) {
  check_same(lambda.size(), c, "collective_h_gradient");
  const int n = c.size();
  const double R = c.radius();
  const double k = -1.0 / (4.0 * kPi * R * R);
  AlgebraElement g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double w = k * c[i] * c[j] * R * R / pair_argument(lambda, i, j, R);
      const double sum = lambda.diag(i) + lambda.diag(j);
      g.set_diag(i, g.diag(i) + w * sum);
      g.set_diag(j, g.diag(j) + w * sum);
      g.set_upper(i, j, -2.0 * w * lambda.upper(i, j));
    }
  return g;
}

AlgebraElement collective_h_gradient_fd(const AlgebraPoint& lambda, const Circulations& c,
                                        double step) {
  const int n = lambda.size();
  const Eigen::VectorXd y = lambda.coordinates();
  Eigen::VectorXd g(y.size());
  for (int k = 0; k < y.size(); ++k) {
    const double h = step * std::max(1.0, std::abs(y(k)));
    Eigen::VectorXd yp = y, ym = y;
    yp(k) += h;
    ym(k) -= h;
    g(k) = (collective_h(AlgebraVector::from_coordinates(yp, n), c) -
            collective_h(AlgebraVector::from_coordinates(ym, n), c)) /
           (2.0 * h);
  }
  return AlgebraVector::from_coordinates(g, n);
}

AlgebraPoint lp_rhs(const AlgebraPoint& lambda, const Circulations& c) {
  return ad_star(collective_h_gradient(lambda, c), lambda, c);
}

Eigen::MatrixXcd casimir_matrix(const AlgebraPoint& lambda, const Circulations& c) {
  check_same(lambda.size(), c, "casimir");
  Eigen::VectorXd d(c.size());
  for (int i = 0; i < c.size(); ++i) d(i) = c[i];
  return kI * (d.asDiagonal() * lambda.matrix());
}

namespace {

Eigen::VectorXcd power_sums(const Eigen::MatrixXcd& a, int k) {
  Eigen::VectorXcd p(k);
  Eigen::MatrixXcd m = a;
  for (int j = 0; j < k; ++j) {
    p(j) = m.trace();
    if (j + 1 < k) m = m * a;
  }
  return p;
}

double checked_real(cplx v, const char* what) {
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v)))
    throw Error(ErrorCode::invalid_argument, std::string(what) + " has an imaginary part");
  return v.real();
}

}  // namespace

double casimir(const AlgebraPoint& lambda, int j, const Circulations& c) {
  if (j < 1) throw Error(ErrorCode::invalid_argument, "casimir order must be at least 1");
  return checked_real(power_sums(casimir_matrix(lambda, c), j)(j - 1), "casimir");
}

Eigen::VectorXcd faddeev_leverrier(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::dimension_mismatch, "faddeev_leverrier: matrix must be square");
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXcd coef(n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd b = id;
  for (int k = 1; k <= n; ++k) {
    const Eigen::MatrixXcd ak = a * b;
    coef(k - 1) = ak.trace() / static_cast<double>(k);
    b = ak - coef(k - 1) * id;
  }
  return coef;
}

Eigen::VectorXcd charpoly_from_power_sums(const Eigen::VectorXcd& p) {
  const int n = static_cast<int>(p.size());
  Eigen::VectorXcd coef(n);
  for (int k = 1; k <= n; ++k) {
    cplx s = p(k - 1);
    for (int m = 1; m < k; ++m) s -= coef(m - 1) * p(k - m - 1);
    coef(k - 1) = s / static_cast<double>(k);
  }
  return coef;
}

cplx cayley_hamilton_trace_residual(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  const Eigen::VectorXcd coef = faddeev_leverrier(a);
  const Eigen::VectorXcd p = power_sums(a, n);
  cplx r = p(n - 1) - static_cast<double>(n) * coef(n - 1);
  for (int m = 1; m < n; ++m) r -= coef(m - 1) * p(n - m - 1);
  return r;
}

double reconstruct_casimir(const AlgebraPoint& lambda, int j, const Circulations& c) {
  const int n = lambda.size();
  if (j <= n) return casimir(lambda, j, c);
  std::vector<cplx> p(j + 1);
  p[0] = static_cast<double>(n);
  const Eigen::VectorXcd low = power_sums(casimir_matrix(lambda, c), n);
  for (int m = 1; m <= n; ++m) p[m] = low(m - 1);
  const Eigen::VectorXcd coef = charpoly_from_power_sums(low);
  for (int m = n + 1; m <= j; ++m) {
    p[m] = 0.0;
    for (int k = 1; k <= n; ++k) p[m] += coef(k - 1) * p[m - k];
  }
  return checked_real(p[j], "reconstructed casimir");
}

double casimir_from_lower(const AlgebraPoint& lambda, const Circulations& c) {
  const int n = lambda.size();
  if (n < 2) throw Error(ErrorCode::invalid_argument, "casimir_from_lower needs N >= 2");
  const Eigen::VectorXcd low = power_sums(casimir_matrix(lambda, c), n - 1);
  const Eigen::VectorXcd coef = charpoly_from_power_sums(low);
  cplx pn(0.0);
  for (int m = 1; m < n; ++m) pn += coef(m - 1) * low(n - m - 1);
  return checked_real(pn, "predicted casimir");
}

}  // namespace vortex
