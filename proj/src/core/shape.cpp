#include "vortex/shape.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "vortex/error.hpp"
#include "vortex/pairs.hpp"

namespace vortex {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

std::string pair_name(int i, int j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void check_vortices(const ShapePoint& z, const Circulations& c, const char* where) {
  if (z.vortices() != c.size())
    throw Error(ErrorCode::dimension_mismatch, std::string(where) + ": shape for " +
                                                   std::to_string(z.vortices()) + " vortices but " +
                                                   std::to_string(c.size()) +
                                                   " circulations were given");
}

void check_s_positive(const ShapePoint& z) {
  for (int i = 0; i < z.size(); ++i)
    if (z.s(i) == 0.0)
      throw Error(ErrorCode::invalid_argument, "s_" + std::to_string(i + 1) + " must be nonzero");
}

}  // namespace

ShapePoint::ShapePoint(int n_vortices)
    : n_(n_vortices),
      s_(Eigen::VectorXd::Zero(std::max(0, n_vortices - 1))),
      mu_(pair_count(std::max(0, n_vortices - 1)), cplx(0.0)) {
  if (n_vortices < 2) throw Error(ErrorCode::invalid_argument, "shape space needs N >= 2");
}

cplx ShapePoint::mu(int i, int j) const { return mu_[pair_index(i, j, n_ - 1)]; }

void ShapePoint::set_mu(int i, int j, cplx v) { mu_[pair_index(i, j, n_ - 1)] = v; }

cplx ShapePoint::mu_extended(int a, int b) const {
  if (a == b) return 2.0 * s_(a);
  return a < b ? mu(a, b) : std::conj(mu(b, a));
}

Eigen::VectorXd ShapePoint::chart() const {
  const int m = size();
  Eigen::VectorXd y(m * m);
  y.head(m) = s_;
  for (std::size_t p = 0; p < mu_.size(); ++p) {
    y(m + 2 * p) = mu_[p].real();
    y(m + 2 * p + 1) = mu_[p].imag();
  }
  return y;
}

ShapePoint ShapePoint::from_chart(const Eigen::VectorXd& y, int n_vortices) {
  ShapePoint z(n_vortices);
  const int m = z.size();
  if (y.size() != m * m)
    throw Error(ErrorCode::dimension_mismatch, "expected " + std::to_string(m * m) +
                                                   " shape coordinates, got " +
                                                   std::to_string(y.size()));
  z.s_ = y.head(m);
  for (std::size_t p = 0; p < z.mu_.size(); ++p) z.mu_[p] = cplx(y(m + 2 * p), y(m + 2 * p + 1));
  return z;
}

void check_admissible(const ShapePoint& z, double eps) {
  for (int i = 0; i < z.size(); ++i)
    if (!(z.s(i) > eps && z.s(i) < 4.0 - eps))
      throw Error(ErrorCode::invalid_argument,
                  "inadmissible shape: s_" + std::to_string(i + 1) + " outside (0, 4)");
  for (int i = 0; i < z.size(); ++i)
    for (int j = i + 1; j < z.size(); ++j)
      if (!(std::abs(z.mu(i, j)) >= eps))
        throw Error(ErrorCode::invalid_argument, "inadmissible shape: mu" + pair_name(i, j) + " vanishes");
}

ShapePoint shape_from_sphere(const SphereState& x, const Circulations& c) {
  const int n = c.size();
  if (static_cast<int>(x.size()) != n)
    throw Error(ErrorCode::dimension_mismatch, "sphere state and circulations differ in length");
  ShapePoint z(n);
  const double R = c.radius();
  const double eps_coll = c.collision_threshold();
  std::vector<double> sq(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double l2 = (x[i] - x[j]).squaredNorm();
      if (!(l2 > eps_coll * eps_coll))
        throw PairError(ErrorCode::collision, "vortex collision between vortices " +
                                                  std::to_string(i + 1) + " and " +
                                                  std::to_string(j + 1),
                        i, j);
      const double v = 4.0 - l2 / (R * R);
      if (!(v > kShapeEps))
        throw PairError(ErrorCode::antipodal,
                        "shape undefined: antipodal vortices " + pair_name(i, j), i, j);
      sq[i * n + j] = sq[j * n + i] = v;
    }
  const int last = n - 1;
  for (int i = 0; i < last; ++i) z.set_s(i, sq[i * n + last]);
  for (int i = 0; i < last; ++i)
    for (int j = i + 1; j < last; ++j) {
      const double re = sq[i * n + j] + z.s(i) + z.s(j) - 4.0;
      const double im = 2.0 * x[i].dot(x[j].cross(x[last])) / (R * R * R);
      z.set_mu(i, j, cplx(re, im));
    }
  return z;
}

ShapePoint shape_from_algebra(const AlgebraPoint& lambda) {
  const int n = lambda.size();
  ShapePoint z(n);
  const int last = n - 1;
  for (int i = 0; i < last; ++i) z.set_s(i, std::norm(lambda.entry(i, last)));
  for (int i = 0; i < last; ++i)
    for (int j = i + 1; j < last; ++j)
      z.set_mu(i, j, lambda.entry(i, j) * lambda.entry(last, i) * lambda.entry(j, last));
  return z;
}

AlgebraPoint algebra_from_shape(const ShapePoint& z) {
  const int n = z.vortices();
  const int last = n - 1;
  AlgebraPoint l(n);
  for (int i = 0; i < n; ++i) l.set_diag(i, std::sqrt(2.0));
  for (int i = 0; i < last; ++i) {
    if (!(z.s(i) > 0.0))
      throw Error(ErrorCode::invalid_argument, "s_" + std::to_string(i + 1) + " must be positive");
    l.set_upper(i, last, std::sqrt(z.s(i)));
  }
  for (int i = 0; i < last; ++i)
    for (int j = i + 1; j < last; ++j) l.set_upper(i, j, z.mu(i, j) / std::sqrt(z.s(i) * z.s(j)));
  return l;
}

std::vector<double> f_constraints(const ShapePoint& z) {
  check_s_positive(z);
  std::vector<double> f;
  f.reserve(pair_count(z.size()));
  for (int i = 0; i < z.size(); ++i)
    for (int j = i + 1; j < z.size(); ++j) {
      const cplx m = z.mu(i, j);
      f.push_back(m.real() - std::norm(m) / (z.s(i) * z.s(j)) - z.s(i) - z.s(j) + 4.0);
    }
  return f;
}

double solve_re_mu(double s_i, double s_j, double im_mu, double reference) {
  // x^2 - P x + (y^2 + P (s_i + s_j - 4)) = 0 with P = s_i s_j
  const double p = s_i * s_j;
  const double disc = p * p - 4.0 * (im_mu * im_mu + p * (s_i + s_j - 4.0));
  if (disc < 0.0) throw Error(ErrorCode::invalid_argument, "no real Re mu satisfies the constraint");
  const double r = std::sqrt(disc);
  const double lo = 0.5 * (p - r);
  const double hi = 0.5 * (p + r);
  return std::abs(lo - reference) <= std::abs(hi - reference) ? lo : hi;
}

ShapePoint project_constraints(const ShapePoint& z) {
  ShapePoint out = z;
  for (int i = 0; i < z.size(); ++i)
    for (int j = i + 1; j < z.size(); ++j) {
      const cplx m = z.mu(i, j);
      out.set_mu(i, j, cplx(solve_re_mu(z.s(i), z.s(j), m.imag(), m.real()), m.imag()));
    }
  return out;
}

namespace {

// Argument of each logarithm without the R^2 factor.
double shape_pair_argument(const ShapePoint& z, int i, int j) {
  const int last = z.size();
  double q;
  if (j == last)
    q = 4.0 - z.s(i);
  else
    q = 4.0 - std::norm(z.mu(i, j)) / (z.s(i) * z.s(j));
  if (!(q > 0.0))
    throw PairError(ErrorCode::log_domain,
                    "nonpositive logarithm argument for pair " + pair_name(i, j), i, j);
  return q;
}

}  // namespace

double shape_hamiltonian(const ShapePoint& z, const Circulations& c) {
  check_vortices(z, c, "shape_hamiltonian");
  check_s_positive(z);
  const double R = c.radius();
  const int n = c.size();
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      sum += c[i] * c[j] * std::log(R * R * shape_pair_argument(z, i, j));
  return -sum / (4.0 * kPi * R * R);
}

Eigen::VectorXd shape_hamiltonian_gradient(const ShapePoint& z, const Circulations& c) {
  check_vortices(z, c, "shape_hamiltonian_gradient");
  check_s_positive(z);
  const int m = z.size();
  const double k = -1.0 / (4.0 * kPi * c.radius() * c.radius());
  Eigen::VectorXd g = Eigen::VectorXd::Zero(m * m);
  for (int i = 0; i < m; ++i) {
    const double q = shape_pair_argument(z, i, m);
    g(i) += k * c[i] * c[m] * (-1.0 / q);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double q = shape_pair_argument(z, i, j);
      const cplx mu = z.mu(i, j);
      const double ss = z.s(i) * z.s(j);
      const double r = std::norm(mu) / ss;
      const double w = k * c[i] * c[j] / q;
      const int p = m + 2 * pair_index(i, j, m);
      g(i) += w * r / z.s(i);
      g(j) += w * r / z.s(j);
      g(p) += w * (-2.0 * mu.real() / ss);
      g(p + 1) += w * (-2.0 * mu.imag() / ss);
    }
  return g;
}

namespace {

// A product of extended algebra entries l_ab.
using Monomial = std::vector<std::pair<int, int>>;

struct Term {
  cplx coef;
  Monomial mono;
};

Monomial monomial_of(const ShapeCoord& a, int last) {
  switch (a.kind) {
    case ShapeCoord::Kind::s:
      return {{a.i, last}, {last, a.i}};
    case ShapeCoord::Kind::mu:
      return {{a.i, a.j}, {last, a.i}, {a.j, last}};
    case ShapeCoord::Kind::mu_conj:
      return {{a.j, a.i}, {a.i, last}, {last, a.j}};
  }
  return {};
}

cplx product_except(const Monomial& m, std::size_t skip, const AlgebraPoint& l) {
  cplx p(1.0);
  for (std::size_t k = 0; k < m.size(); ++k)
    if (k != skip) p *= l.entry(m[k].first, m[k].second);
  return p;
}

cplx monomial_bracket(const Monomial& a, const Monomial& b, const AlgebraPoint& l,
                      const Circulations& c) {
  cplx sum(0.0);
  for (std::size_t p = 0; p < a.size(); ++p)
    for (std::size_t q = 0; q < b.size(); ++q) {
      const cplx inner = lp_bracket(Coord::entry(a[p].first, a[p].second),
                                    Coord::entry(b[q].first, b[q].second), l, c);
      if (inner == cplx(0.0)) continue;
      sum += product_except(a, p, l) * product_except(b, q, l) * inner;
    }
  return sum;
}

void check_shape_coord(const ShapeCoord& a, int m) {
  const bool ok = a.kind == ShapeCoord::Kind::s ? (a.i >= 0 && a.i < m)
                                                : (a.i >= 0 && a.i < a.j && a.j < m);
  if (!ok) throw Error(ErrorCode::invalid_argument, "invalid shape coordinate index");
}

std::vector<Term> chart_terms(int k, int m) {
  const int last = m;
  if (k < m) return {{1.0, monomial_of(ShapeCoord::s_of(k), last)}};
  const int p = (k - m) / 2;
  const auto pairs = pair_list(m);
  const auto [i, j] = pairs[p];
  const Monomial mu = monomial_of(ShapeCoord::mu_of(i, j), last);
  const Monomial mub = monomial_of(ShapeCoord::mu_conj_of(i, j), last);
  if ((k - m) % 2 == 0) return {{0.5, mu}, {0.5, mub}};
  return {{cplx(0.0, -0.5), mu}, {cplx(0.0, 0.5), mub}};
}

}  // namespace

cplx shape_bracket(const ShapeCoord& a, const ShapeCoord& b, const ShapePoint& z,
                   const Circulations& c) {
  check_vortices(z, c, "shape_bracket");
  check_shape_coord(a, z.size());
  check_shape_coord(b, z.size());
  const AlgebraPoint l = algebra_from_shape(z);
  return monomial_bracket(monomial_of(a, z.size()), monomial_of(b, z.size()), l, c);
}

namespace {

cplx s_mu_closed(int i, int k, int l, const ShapePoint& z, const Circulations& c) {
  const double gn = c[z.size()];
  const double gi = c[i];
  if (i == k) {
    const cplx m = z.mu(i, l);
    return kI * (std::norm(m) / (gn * z.s(l)) - z.s(i) * z.s(l) / gi -
                 2.0 * (1.0 / gn - 1.0 / gi) * m);
  }
  if (i == l) {
    const cplx m = z.mu(k, i);
    return kI * (z.s(k) * z.s(i) / gi - std::norm(m) / (gn * z.s(k)) +
                 2.0 * (1.0 / gn - 1.0 / gi) * m);
  }
  return kI * (z.mu(k, l) / gn) *
         (z.mu_extended(l, i) / z.s(l) - z.mu_extended(i, k) / z.s(k));
}

std::optional<cplx> mu_mu_closed(int i, int j, int l, int m, const ShapePoint& z,
                                 const Circulations& c, ClosedFormVariant variant) {
  const double gn = c[z.size()];
  auto s = [&](int a) { return z.s(a); };
  auto mu = [&](int a, int b) { return z.mu_extended(a, b); };
  if (i == l && j == m) return cplx(0.0);
  if (i == l)
    return kI * ((s(j) * mu(i, m) - s(m) * mu(i, j)) / c[i] +
                 (std::norm(mu(i, m)) * mu(i, j) / s(m) - std::norm(mu(i, j)) * mu(i, m) / s(j)) /
                     (gn * s(i)));
  if (j == m)
    return kI * ((s(l) * mu(i, j) - s(i) * mu(l, j)) / c[j] +
                 (std::norm(mu(i, j)) * mu(l, j) / s(i) - std::norm(mu(j, l)) * mu(i, j) / s(l)) /
                     (gn * s(j)));
  if (j == l) {
    const double sign = variant == ClosedFormVariant::corrected ? 1.0 : -1.0;
    return kI * (2.0 * (1.0 / c[j] - 1.0 / gn) * mu(i, j) * mu(j, m) / s(j) -
                 s(j) * mu(i, m) / c[j] +
                 sign * mu(i, j) * mu(m, i) * mu(j, m) / (gn * s(i) * s(m)));
  }
  if (m == i) {
    auto mirrored = mu_mu_closed(l, m, i, j, z, c, variant);
    if (mirrored) return -*mirrored;
  }
  return std::nullopt;
}

}  // namespace

std::optional<cplx> shape_bracket_closed(const ShapeCoord& a, const ShapeCoord& b,
                                         const ShapePoint& z, const Circulations& c,
                                         ClosedFormVariant variant) {
  using K = ShapeCoord::Kind;
  check_vortices(z, c, "shape_bracket_closed");
  check_shape_coord(a, z.size());
  check_shape_coord(b, z.size());
  check_s_positive(z);
  const double gn = c[z.size()];
  if (a.kind == K::s && b.kind == K::s) return 2.0 / gn * z.mu_extended(a.i, b.i).imag();
  if (a.kind == K::s) {
    const cplx v = s_mu_closed(a.i, b.i, b.j, z, c);
    return b.kind == K::mu ? v : std::conj(v);
  }
  if (b.kind == K::s) {
    auto v = shape_bracket_closed(b, a, z, c, variant);
    return -*v;
  }
  if (a.kind != b.kind) return std::nullopt;
  auto v = mu_mu_closed(a.i, a.j, b.i, b.j, z, c, variant);
  if (!v) return std::nullopt;
  return a.kind == K::mu ? *v : std::conj(*v);
}

Eigen::MatrixXd shape_poisson_tensor(const ShapePoint& z, const Circulations& c) {
  check_vortices(z, c, "shape_poisson_tensor");
  const int m = z.size();
  const int dim = m * m;
  const AlgebraPoint l = algebra_from_shape(z);
  std::vector<std::vector<Term>> terms(dim);
  for (int k = 0; k < dim; ++k) terms[k] = chart_terms(k, m);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      cplx v(0.0);
      for (const Term& ta : terms[a])
        for (const Term& tb : terms[b]) v += ta.coef * tb.coef * monomial_bracket(ta.mono, tb.mono, l, c);
      t(a, b) = v.real();
      t(b, a) = -v.real();
    }
  return t;
}

ShapePoint shape_rhs(const ShapePoint& z, const Circulations& c) {
  check_admissible(z);
  const Eigen::VectorXd y = shape_poisson_tensor(z, c) * shape_hamiltonian_gradient(z, c);
  return ShapePoint::from_chart(y, z.vortices());
}

double casimir_shape_c2(const ShapePoint& z, const Circulations& c) {
  check_vortices(z, c, "casimir_shape_c2");
  check_s_positive(z);
  const int m = z.size();
  double sum = 0.0;
  for (int i = 0; i < c.size(); ++i) sum += c[i] * c[i];
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      sum += 0.5 * c[i] * c[j] * std::norm(z.mu(i, j)) / (z.s(i) * z.s(j));
  for (int i = 0; i < m; ++i) sum += 0.5 * c[m] * c[i] * z.s(i);
  return sum;
}

double casimir_shape(const ShapePoint& z, int j, const Circulations& c) {
  check_vortices(z, c, "casimir_shape");
  return casimir(algebra_from_shape(z), j, c);
}

}  // namespace vortex
