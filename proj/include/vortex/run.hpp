#pragma once
// Configured runs: simulation, cross-level checks, stability reports and
// invariant recomputation from saved trajectories.
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vortex/geometry.hpp"
#include "vortex/levels.hpp"
#include "vortex/stability.hpp"
#include "vortex/timeint.hpp"

namespace vortex {

enum class InitialKind { tetrahedron, ring, random, positions, shape };

struct InitialSpec {
  InitialKind kind = InitialKind::positions;
  double colatitude = 1.5707963267948966;  // ring
  std::uint64_t seed = 0;                  // random
  SphereState positions;                   // as given, projected later
  std::vector<double> s;                   // shape data
  std::vector<cplx> mu;                    // lexicographic pairs of 1..N-1
};

struct Perturbation {
  double amplitude = 0.0;  // in units of R
  std::uint64_t seed = 0;
};

struct RunConfig {
  Level level = Level::sphere;
  double radius = 1.0;
  std::vector<double> gamma;
  InitialSpec initial;
  std::vector<double> phases;
  Perturbation perturbation;
  IntegratorConfig integrator;
  bool renormalize_sphere = true;
  bool project_shape_constraints = false;
  double tolerance = 1e-6;
  EnergyCasimirSpec stability;
  std::vector<std::array<double, 4>> sweep;  // extra circulation samples for stability
  std::string output_dir = "vortex_out";

  int n() const { return static_cast<int>(gamma.size()); }
};

/// Throws ErrorCode::config with a message naming the offending field.
RunConfig parse_run_config(const std::string& json_text);
/// Throws ErrorCode::io when the file cannot be read.
RunConfig load_run_config(const std::string& path);
/// Replaces the seed of the random preset and of the perturbation.
void override_seed(RunConfig& cfg, std::uint64_t seed);

/// Uniform draws from std::mt19937_64: u = (word >> 11) 2^-53, directions from
/// z = 2u_1 - 1 and phi = 2 pi u_2. Configurations with a pair closer than 0.1 R
/// or farther than 1.99 R are redrawn.
SphereState random_configuration(int n, double radius, std::uint64_t seed);
/// n equally spaced vortices on the circle of the given colatitude.
SphereState ring_configuration(int n, double radius, double colatitude);
/// Resolved initial positions: preset or given data, projected onto the
/// sphere, then perturbed. Throws ErrorCode::config for shape-only data.
SphereState initial_positions(const RunConfig& cfg);
/// Packed initial vector at cfg.level.
Eigen::VectorXd initial_vector(const RunConfig& cfg);

enum class RunStatus { ok = 0, config_error = 1, halted = 2, crosscheck_failed = 3 };

struct RunOutput {
  RunStatus status = RunStatus::ok;
  std::string summary_json;
  std::string text;
  std::vector<std::string> files;
};

/// Writes trajectory.csv and summary.json into cfg.output_dir.
RunOutput simulate(const RunConfig& cfg, bool write_files = true);
/// Sphere against projected lifted, lifted against Lie-Poisson, and
/// sphere-extracted shape against the shape level. Writes crosscheck.json.
RunOutput crosscheck(const RunConfig& cfg, bool write_files = true);
/// Stability report for cfg.gamma and every sweep entry. Writes stability.json.
RunOutput stability(const RunConfig& cfg, bool write_files = true);
/// Recomputes the monitors of cfg.level from a trajectory CSV.
/// Writes invariants.csv and invariants.json.
RunOutput invariants(const RunConfig& cfg, const std::string& csv_path, bool write_files = true);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);
std::string trajectory_csv(const TrajectoryRecord& rec, const std::vector<std::string>& state_columns);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
/// Throws ErrorCode::io or ErrorCode::config (malformed content).
CsvTable read_csv(const std::string& path);

}  // namespace vortex
