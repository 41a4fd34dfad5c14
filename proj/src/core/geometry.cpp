#include "vortex/geometry.hpp"

#include <cmath>

#include "vortex/error.hpp"

namespace vortex {

Vec3 hopf_project(const Spinor& phi) {
  const cplx w = std::conj(phi(0)) * phi(1);
  return {2.0 * w.real(), 2.0 * w.imag(), std::norm(phi(0)) - std::norm(phi(1))};
}

Spinor hopf_lift(const Vec3& x, double theta) {
  const double r = x.norm();
  if (!(r > 0.0)) throw Error(ErrorCode::degenerate_point, "degenerate point: cannot lift the origin");
  const cplx phase = std::polar(1.0, theta);
  const cplx w(x(0), x(1));  // = 2 conj(z) u
  Spinor phi;
  if (x(2) >= 0.0) {
    const double a = std::sqrt(0.5 * (r + x(2)));
    phi << a * phase, w * phase / (2.0 * a);
  } else {
    const double b = std::sqrt(0.5 * (r - x(2)));
    phi << std::conj(w) * phase / (2.0 * b), b * phase;
  }
  return phi;
}

PairIdentities pair_identities(const Spinor& a, const Spinor& b) {
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  const double p2 = std::norm(a.dot(b));  // Eigen's dot conjugates the left operand
  return {2.0 * p2 - na * nb, (na + nb) * (na + nb) - 4.0 * p2};
}

cplx triple_product_c2(const Spinor& a, const Spinor& b, const Spinor& c) {
  return a.dot(b) * c.dot(a) * b.dot(c);
}

Eigen::Matrix2cd su2_from_vec(const Vec3& xi) {
  const cplx mi(0.0, -0.5);
  Eigen::Matrix2cd m;
  m << mi * xi(2), mi * cplx(xi(0), -xi(1)),
       mi * cplx(xi(0), xi(1)), -mi * xi(2);
  return m;
}

Vec3 su2_to_vec(const Eigen::Matrix2cd& m, double tol) {
  const Eigen::Matrix2cd herm = m + m.adjoint();
  if (herm.cwiseAbs().maxCoeff() > tol || std::abs(m.trace()) > tol)
    throw Error(ErrorCode::invalid_argument, "su2_to_vec: matrix is not traceless anti-Hermitian");
  // m(0,0) = -i xi3 / 2, m(1,0) = (xi2 - i xi1) / 2
  return {-2.0 * m(1, 0).imag(), 2.0 * m(1, 0).real(), -2.0 * m(0, 0).imag()};
}

double su2_inner(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return 2.0 * (a.adjoint() * b).trace().real();
}

}  // namespace vortex
