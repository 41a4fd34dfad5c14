#pragma once

// The four state representations as flat real vectors, with their vector
// fields, column names and monitored invariants.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vortex/lifted.hpp"
#include "vortex/liepoisson.hpp"
#include "vortex/shape.hpp"
#include "vortex/sphere.hpp"
#include "vortex/timeint.hpp"

namespace vortex {

enum class Level { sphere, lifted, liepoisson, shape };

std::string to_string(Level l);
/// Throws ErrorCode::config for an unknown name.
Level level_from_string(const std::string& s);

/// Sphere: (x_1, x_2, x_3) per vortex, 3N entries.
Eigen::VectorXd pack_sphere(const SphereState& x);
SphereState unpack_sphere(const Eigen::VectorXd& y);

/// Lifted: (Re z, Im z, Re u, Im u) per vortex, 4N entries.
Eigen::VectorXd pack_lifted(const LiftedState& phi);
LiftedState unpack_lifted(const Eigen::VectorXd& y);

/// Column names of the packed state.
std::vector<std::string> state_columns(Level level, int n);

struct LevelSystem {
  Level level;
  Circulations circulations;
  RhsFn rhs;
  std::vector<Monitor> monitors;
  PostStepFn post_step;  // sphere renormalization, or constraint projection when enabled
  std::vector<std::string> columns;
};

struct SystemOptions {
  bool renormalize_sphere = true;
  bool project_shape_constraints = false;
};

/// Monitors: every level has H and C1..CN. Sphere adds I_1..I_3; lifted adds
/// J_1..J_N, K_11, K_22, re_K_12, im_K_12; liepoisson and shape add f_i_j.
LevelSystem make_system(Level level, const Circulations& c, const SystemOptions& opts = {});

/// Converts a sphere configuration into the initial vector of a level.
/// `phases` feeds the lift (empty means zero phases).
Eigen::VectorXd initial_state(Level level, const SphereState& x, const Circulations& c,
                              const std::vector<double>& phases = {});

/// Shape chart extracted from a packed state of any level.
Eigen::VectorXd shape_chart_of(Level level, const Eigen::VectorXd& y, const Circulations& c);

/// Sphere configuration from a packed sphere or lifted state.
SphereState sphere_of(Level level, const Eigen::VectorXd& y);

}  // namespace vortex
