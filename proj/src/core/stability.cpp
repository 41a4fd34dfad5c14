#include "vortex/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <numbers>
#include <thread>

#include "vortex/error.hpp"

namespace vortex {

namespace {

constexpr double kHessianStep = 3e-3;

constexpr double kPi = std::numbers::pi;

Circulations circulations_of(const std::array<double, 4>& g, double radius) {
  return Circulations(std::vector<double>(g.begin(), g.end()), radius);
}

double leading_minor(const Eigen::MatrixXd& a, int k) {
  return k == 0 ? 1.0 : a.topLeftCorner(k, k).determinant();
}

}  // namespace

ShapePoint tetrahedron_equilibrium() {
  ShapePoint z(4);
  const double m = 8.0 / (3.0 * std::sqrt(3.0));
  for (int i = 0; i < 3; ++i) z.set_s(i, 4.0 / 3.0);
  z.set_mu(0, 1, cplx(0.0, m));
  z.set_mu(0, 2, cplx(0.0, -m));
  z.set_mu(1, 2, cplx(0.0, m));
  return z;
}

SphereState tetrahedron_configuration(double radius) {
  const double r2 = std::sqrt(2.0);
  const double r6 = std::sqrt(6.0);
  const double k = radius / 3.0;
  return {Vec3(2.0 * r2, 0.0, -1.0) * k, Vec3(-r2, r6, -1.0) * k, Vec3(-r2, -r6, -1.0) * k,
          Vec3(0.0, 0.0, 3.0) * k};
}

bool EnergyCasimirSpec::is_critical_family() const {
  return std::abs(phi1 + 1.5) <= 1e-12 && psi_grad.cwiseAbs().maxCoeff() <= 1e-12;
}

double energy_casimir(const ShapePoint& z, const Circulations& c, const EnergyCasimirSpec& spec) {
  if (z.vortices() != 4 || c.size() != 4)
    throw Error(ErrorCode::invalid_argument, "tetrahedron analysis requires N=4");
  const double R = c.radius();
  const double c2e = casimir_shape_c2(tetrahedron_equilibrium(), c);
  const std::vector<double> f = f_constraints(z);
  const Eigen::Vector3d y(f[0], f[1], f[2]);
  return shape_hamiltonian(z, c) +
         (spec.phi(casimir_shape_c2(z, c) - c2e) / 8.0 + 3.0 / 256.0 * spec.psi(y)) / (kPi * R * R);
}

Eigen::VectorXd energy_casimir_gradient(const ShapePoint& z, const Circulations& c,
                                        const EnergyCasimirSpec& spec, double step) {
  const Eigen::VectorXd y = z.chart();
  Eigen::VectorXd g(y.size());
  for (int k = 0; k < y.size(); ++k) {
    const double h = step * std::max(1.0, std::abs(y(k)));
    Eigen::VectorXd yp = y, ym = y;
    yp(k) += h;
    ym(k) -= h;
    g(k) = (energy_casimir(ShapePoint::from_chart(yp, 4), c, spec) -
            energy_casimir(ShapePoint::from_chart(ym, 4), c, spec)) /
           (2.0 * h);
  }
  return g;
}

std::array<double, 9> hessian_minors_closed(const std::array<double, 4>& g,
                                            const Eigen::Vector3d& psi) {
  for (int i = 0; i < 4; ++i)
    if (g[i] == 0.0)
      throw Error(ErrorCode::zero_circulation,
                  "circulation " + std::to_string(i + 1) + " must be nonzero");
  const double g1 = g[0], g2 = g[1], g3 = g[2], g4 = g[3];
  const double prod = g1 * g2 * g3 * g4;
  std::array<double, 9> d{};
  d[0] = g1 * (g2 + g3 + g4);
  d[1] = g1 * g2 * (g3 + g4) * (g1 + g2 + g3 + g4);
  d[2] = g1 * g2 * g3 *
         (g1 * g1 * g4 + g4 * (g2 + g3 + g4) * (g2 + g3 + g4) +
          2.0 * g1 * (g4 * (g3 + g4) + g2 * (2.0 * g3 + g4)));
  d[3] = d[2] * psi(0) / 3.0;
  d[4] = d[1] * prod * psi(0);
  d[5] = d[4] * psi(1) / 3.0;
  d[6] = d[0] * prod * prod * psi(0) * psi(1);
  d[7] = d[6] * psi(2) / 3.0;
  d[8] = (d[6] / d[0]) * prod * psi(2);
  return d;
}

std::string to_string(Verdict v) { return v == Verdict::stable ? "stable" : "inconclusive"; }

namespace {

Eigen::MatrixXd second_differences(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& y, const Eigen::VectorXd& h) {
  const int n = static_cast<int>(y.size());
  Eigen::MatrixXd hess(n, n);
  const double f0 = f(y);
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXd yp = y, ym = y;
    yp(a) += h(a);
    ym(a) -= h(a);
    hess(a, a) = (f(yp) - 2.0 * f0 + f(ym)) / (h(a) * h(a));
    for (int b = a + 1; b < n; ++b) {
      Eigen::VectorXd pp = y, pm = y, mp = y, mm = y;
      pp(a) += h(a), pp(b) += h(b);
      pm(a) += h(a), pm(b) -= h(b);
      mp(a) -= h(a), mp(b) += h(b);
      mm(a) -= h(a), mm(b) -= h(b);
      const double v = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h(a) * h(b));
      hess(a, b) = v;
      hess(b, a) = v;
    }
  }
  return hess;
}

}  // namespace

StabilityReport analyze_tetrahedron(const std::array<double, 4>& gamma, double radius,
                                    const EnergyCasimirSpec& spec) {
  if (!spec.is_critical_family())
    throw Error(ErrorCode::not_critical, "not a critical point family");
  const Circulations c = circulations_of(gamma, radius);
  const ShapePoint ze = tetrahedron_equilibrium();
  StabilityReport rep;
  rep.gamma = gamma;
  rep.radius = radius;
  rep.gradient_norm = energy_casimir_gradient(ze, c, spec).norm();

  const Eigen::VectorXd y = ze.chart();
  auto e = [&](const Eigen::VectorXd& v) { return energy_casimir(ShapePoint::from_chart(v, 4), c, spec); };
  Eigen::VectorXd h(y.size());
  for (int k = 0; k < y.size(); ++k) h(k) = kHessianStep * std::max(1.0, std::abs(y(k)));
  const Eigen::MatrixXd coarse = second_differences(e, y, h);
  const Eigen::MatrixXd fine = second_differences(e, y, 0.5 * h);
  const Eigen::MatrixXd raw = (4.0 * fine - coarse) / 3.0;
  rep.symmetry_residual = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  rep.hessian = 0.5 * (raw + raw.transpose());
  rep.scaled = 256.0 / 9.0 * kPi * radius * radius * rep.hessian;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rep.scaled, Eigen::EigenvaluesOnly);
  rep.eigenvalues = eig.eigenvalues();
  for (int k = 0; k < 9; ++k) rep.minors[k] = leading_minor(rep.scaled, k + 1);

  const Eigen::Matrix3d& ph = spec.psi_hessian;
  const bool diagonal_psi = std::abs(ph(0, 1)) + std::abs(ph(0, 2)) + std::abs(ph(1, 2)) +
                                std::abs(ph(1, 0)) + std::abs(ph(2, 0)) + std::abs(ph(2, 1)) ==
                            0.0;
  if (spec.phi2 == 0.0 && diagonal_psi) {
    rep.closed_minors = hessian_minors_closed(gamma, ph.diagonal());
    rep.minors_match = true;
    for (int k = 0; k < 9; ++k) {
      const double ref = (*rep.closed_minors)[k];
      if (std::abs(rep.minors[k] - ref) > rep.minor_tolerance * std::max(std::abs(ref), 1e-300)) {
        rep.minors_match = false;
        rep.note += "d" + std::to_string(k + 1) + " differs from the closed form; ";
      }
    }
    if (!rep.minors_match) rep.note += "verdict taken from eigenvalues";
  } else {
    rep.note = "closed-form minors assume Phi''(0) = 0 and a diagonal Psi Hessian";
  }
  rep.verdict = rep.eigenvalues.minCoeff() > 0.0 ? Verdict::stable : Verdict::inconclusive;
  return rep;
}

std::vector<StabilityReport> analyze_sweep(const std::vector<std::array<double, 4>>& gammas,
                                           double radius, const EnergyCasimirSpec& spec) {
  std::vector<StabilityReport> out(gammas.size());
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t start = 0; start < gammas.size(); start += width) {
    const std::size_t stop = std::min(gammas.size(), start + width);
    std::vector<std::future<StabilityReport>> jobs;
    for (std::size_t k = start; k < stop; ++k)
      jobs.push_back(std::async(std::launch::async, [&, k] { return analyze_tetrahedron(gammas[k], radius, spec); }));
    for (std::size_t k = start; k < stop; ++k) out[k] = jobs[k - start].get();
  }
  return out;
}

}  // namespace vortex
