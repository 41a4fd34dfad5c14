// Command-line frontend over the C interface.
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vortex/vortex_c.h"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::string trajectory;
  bool json = false;
  bool no_files = false;
};

int fail(vtx_status s) {
  std::fprintf(stderr, "error (%s): %s\n", vtx_status_name(s), vtx_last_error());
  return 1;
}

int run(const std::string& verb, const Options& o) {
  vtx_config* cfg = nullptr;
  vtx_status s = vtx_config_from_file(o.config.c_str(), &cfg);
  if (s != VTX_OK) return fail(s);
  if (!o.out.empty()) vtx_config_set_output_dir(cfg, o.out.c_str());
  if (o.seed) vtx_config_set_seed(cfg, *o.seed);
  if (o.tolerance && (s = vtx_config_set_tolerance(cfg, *o.tolerance)) != VTX_OK) {
    vtx_config_free(cfg);
    return fail(s);
  }
  const int write = o.no_files ? 0 : 1;
  vtx_result* res = nullptr;
  if (verb == "simulate") s = vtx_simulate(cfg, write, &res);
  else if (verb == "crosscheck") s = vtx_crosscheck(cfg, write, &res);
  else if (verb == "stability") s = vtx_stability(cfg, write, &res);
  else s = vtx_invariants(cfg, o.trajectory.c_str(), write, &res);
  vtx_config_free(cfg);
  if (!res) return fail(s);
  std::fputs(o.json ? vtx_result_json(res) : vtx_result_text(res), stdout);
  if (o.json) std::fputc('\n', stdout);
  for (size_t k = 0; k < vtx_result_file_count(res); ++k) std::fprintf(stderr, "wrote %s\n", vtx_result_file(res, k));
  vtx_result_free(res);
  if (s == VTX_HALTED) std::fprintf(stderr, "integration halted\n");
  return s == VTX_OK || s == VTX_HALTED || s == VTX_CROSSCHECK_FAILED ? static_cast<int>(s) : fail(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point vortices on the sphere: simulation, cross-level checks and tetrahedron stability"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vtx_version()));
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->required();
    sub->add_option("--out", o.out, "output directory (overrides output.dir)");
    sub->add_option("--tolerance", o.tolerance, "crosscheck tolerance (default 1e-6)");
    sub->add_option("--seed", o.seed, "seed for the random preset and the perturbation");
    sub->add_flag("--json", o.json, "print the JSON summary instead of the table");
    sub->add_flag("--no-files", o.no_files, "do not write output files");
  };
  auto* sim = app.add_subcommand("simulate", "integrate one level and write trajectory.csv and summary.json");
  auto* cross = app.add_subcommand("crosscheck", "compare sphere, lifted, Lie-Poisson and shape trajectories");
  auto* stab = app.add_subcommand("stability", "energy-Casimir analysis of the tetrahedron");
  auto* inv = app.add_subcommand("invariants", "recompute invariants from a saved trajectory");
  for (auto* sub : {sim, cross, stab, inv}) common(sub);
  inv->add_option("trajectory", o.trajectory, "trajectory CSV written by simulate")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  for (auto* sub : {sim, cross, stab, inv})
    if (sub->parsed()) return run(sub->get_name(), o);
  return 1;
}
