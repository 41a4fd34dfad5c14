#include "vortex/levels.hpp"

#include "vortex/error.hpp"
#include "vortex/pairs.hpp"

namespace vortex {

std::string to_string(Level l) {
  switch (l) {
    case Level::sphere: return "sphere";
    case Level::lifted: return "lifted";
    case Level::liepoisson: return "liepoisson";
    case Level::shape: return "shape";
  }
  return "";
}

Level level_from_string(const std::string& s) {
  if (s == "sphere") return Level::sphere;
  if (s == "lifted") return Level::lifted;
  if (s == "liepoisson") return Level::liepoisson;
  if (s == "shape") return Level::shape;
  throw Error(ErrorCode::config, "level: unknown level '" + s + "'");
}

Eigen::VectorXd pack_sphere(const SphereState& x) {
  Eigen::VectorXd y(3 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y.segment<3>(3 * i) = x[i];
  return y;
}

SphereState unpack_sphere(const Eigen::VectorXd& y) {
  SphereState x(y.size() / 3);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = y.segment<3>(3 * i);
  return x;
}

Eigen::VectorXd pack_lifted(const LiftedState& phi) {
  Eigen::VectorXd y(4 * phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    y.segment<4>(4 * i) << phi[i](0).real(), phi[i](0).imag(), phi[i](1).real(), phi[i](1).imag();
  return y;
}

LiftedState unpack_lifted(const Eigen::VectorXd& y) {
  LiftedState phi(y.size() / 4);
  for (std::size_t i = 0; i < phi.size(); ++i)
    phi[i] << cplx(y(4 * i), y(4 * i + 1)), cplx(y(4 * i + 2), y(4 * i + 3));
  return phi;
}

std::vector<std::string> state_columns(Level level, int n) {
  std::vector<std::string> cols;
  auto idx = [](int i) { return std::to_string(i + 1); };
  switch (level) {
    case Level::sphere:
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < 3; ++k) cols.push_back("x" + idx(i) + "_" + idx(k));
      break;
    case Level::lifted:
      for (int i = 0; i < n; ++i)
        for (const char* p : {"re_z_", "im_z_", "re_u_", "im_u_"}) cols.push_back(p + idx(i));
      break;
    case Level::liepoisson:
      for (int i = 0; i < n; ++i) cols.push_back("lam_" + idx(i));
      for (auto [i, j] : pair_list(n)) {
        cols.push_back("re_lam_" + idx(i) + "_" + idx(j));
        cols.push_back("im_lam_" + idx(i) + "_" + idx(j));
      }
      break;
    case Level::shape:
      for (int i = 0; i + 1 < n; ++i) cols.push_back("s_" + idx(i));
      for (auto [i, j] : pair_list(n - 1)) {
        cols.push_back("re_mu_" + idx(i) + "_" + idx(j));
        cols.push_back("im_mu_" + idx(i) + "_" + idx(j));
      }
      break;
  }
  return cols;
}

namespace {

std::string pair_suffix(int i, int j) { return std::to_string(i + 1) + "_" + std::to_string(j + 1); }

void add_f_monitors(std::vector<Monitor>& mons, int n, std::function<ShapePoint(const Eigen::VectorXd&)> to_shape) {
  if (n < 3) return;
  const auto pairs = pair_list(n - 1);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    mons.push_back({"f_" + pair_suffix(pairs[p].first, pairs[p].second),
                    [to_shape, p](const Eigen::VectorXd& y) { return f_constraints(to_shape(y))[p]; }});
}

}  // namespace

LevelSystem make_system(Level level, const Circulations& c, const SystemOptions& opts) {
  const int n = c.size();
  LevelSystem sys{level, c, {}, {}, {}, state_columns(level, n)};
  std::vector<Monitor>& mons = sys.monitors;
  switch (level) {
    case Level::sphere: {
      sys.rhs = [c](double, const Eigen::VectorXd& y) { return pack_sphere(rhs_sphere(unpack_sphere(y), c)); };
      mons.push_back({"H", [c](const Eigen::VectorXd& y) { return hamiltonian_r3(unpack_sphere(y), c); }});
      for (int j = 1; j <= n; ++j)
        mons.push_back({"C" + std::to_string(j), [c, j](const Eigen::VectorXd& y) {
                          return casimir(momentum_L(lift_state(unpack_sphere(y)), c), j, c);
                        }});
      for (int k = 0; k < 3; ++k)
        mons.push_back({"I_" + std::to_string(k + 1), [c, k](const Eigen::VectorXd& y) {
                          return moment_of_vorticity(unpack_sphere(y), c)(k);
                        }});
      if (opts.renormalize_sphere) {
        const double R = c.radius();
        sys.post_step = [R](Eigen::VectorXd& y) {
          SphereState x = unpack_sphere(y);
          if (!renormalize_sphere_state(x, R)) return false;
          y = pack_sphere(x);
          return true;
        };
      }
      break;
    }
    case Level::lifted: {
      sys.rhs = [c](double, const Eigen::VectorXd& y) { return pack_lifted(rhs_lifted(unpack_lifted(y), c)); };
      mons.push_back({"H", [c](const Eigen::VectorXd& y) { return hamiltonian_lifted(unpack_lifted(y), c); }});
      for (int j = 1; j <= n; ++j)
        mons.push_back({"C" + std::to_string(j), [c, j](const Eigen::VectorXd& y) {
                          return casimir(momentum_L(unpack_lifted(y), c), j, c);
                        }});
      for (int i = 0; i < n; ++i)
        mons.push_back({"J_" + std::to_string(i + 1), [c, i](const Eigen::VectorXd& y) {
                          return momentum_J(unpack_lifted(y), c)(i);
                        }});
      auto k_entry = [c](int a, int b, bool imag) {
        return [c, a, b, imag](const Eigen::VectorXd& y) {
          const cplx v = momentum_K(unpack_lifted(y), c)(a, b);
          return imag ? v.imag() : v.real();
        };
      };
      // K is anti-Hermitian: K_11, K_22 are imaginary.
      mons.push_back({"K_11", k_entry(0, 0, true)});
      mons.push_back({"K_22", k_entry(1, 1, true)});
      mons.push_back({"re_K_12", k_entry(0, 1, false)});
      mons.push_back({"im_K_12", k_entry(0, 1, true)});
      break;
    }
    case Level::liepoisson: {
      sys.rhs = [c, n](double, const Eigen::VectorXd& y) {
        return lp_rhs(AlgebraPoint::from_coordinates(y, n), c).coordinates();
      };
      mons.push_back({"H", [c, n](const Eigen::VectorXd& y) {
                        return collective_h(AlgebraPoint::from_coordinates(y, n), c);
                      }});
      for (int j = 1; j <= n; ++j)
        mons.push_back({"C" + std::to_string(j), [c, n, j](const Eigen::VectorXd& y) {
                          return casimir(AlgebraPoint::from_coordinates(y, n), j, c);
                        }});
      add_f_monitors(mons, n, [n](const Eigen::VectorXd& y) {
        return shape_from_algebra(AlgebraPoint::from_coordinates(y, n));
      });
      break;
    }
    case Level::shape: {
      if (n < 2) throw Error(ErrorCode::config, "level: shape dynamics needs at least 2 vortices");
      sys.rhs = [c, n](double, const Eigen::VectorXd& y) {
        return shape_rhs(ShapePoint::from_chart(y, n), c).chart();
      };
      mons.push_back({"H", [c, n](const Eigen::VectorXd& y) {
                        return shape_hamiltonian(ShapePoint::from_chart(y, n), c);
                      }});
      for (int j = 1; j <= n; ++j)
        mons.push_back({"C" + std::to_string(j), [c, n, j](const Eigen::VectorXd& y) {
                          return casimir_shape(ShapePoint::from_chart(y, n), j, c);
                        }});
      add_f_monitors(mons, n, [n](const Eigen::VectorXd& y) { return ShapePoint::from_chart(y, n); });
      if (opts.project_shape_constraints) {
        sys.post_step = [n](Eigen::VectorXd& y) {
          const Eigen::VectorXd p = project_constraints(ShapePoint::from_chart(y, n)).chart();
          if (p == y) return false;
          y = p;
          return true;
        };
      }
      break;
    }
  }
  return sys;
}

Eigen::VectorXd initial_state(Level level, const SphereState& x, const Circulations& c,
                              const std::vector<double>& phases) {
  check_sphere_state(x, c);
  hamiltonian_sphere(x, c);  // throws on coincident vortices
  switch (level) {
    case Level::sphere: return pack_sphere(x);
    case Level::lifted: return pack_lifted(lift_state(x, phases));
    case Level::liepoisson: return momentum_L(lift_state(x, phases), c).coordinates();
    case Level::shape: return shape_from_sphere(x, c).chart();
  }
  return {};
}

Eigen::VectorXd shape_chart_of(Level level, const Eigen::VectorXd& y, const Circulations& c) {
  const int n = c.size();
  switch (level) {
    case Level::sphere: return shape_from_sphere(unpack_sphere(y), c).chart();
    case Level::lifted: return shape_from_algebra(momentum_L(unpack_lifted(y), c)).chart();
    case Level::liepoisson: return shape_from_algebra(AlgebraPoint::from_coordinates(y, n)).chart();
    case Level::shape: return y;
  }
  return {};
}

SphereState sphere_of(Level level, const Eigen::VectorXd& y) {
  if (level == Level::sphere) return unpack_sphere(y);
  if (level == Level::lifted) return project_state(unpack_lifted(y));
  throw Error(ErrorCode::invalid_argument, "sphere positions are not recoverable from level " + to_string(level));
}

}  // namespace vortex
