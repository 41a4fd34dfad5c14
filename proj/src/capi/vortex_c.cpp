#include "vortex/vortex_c.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "vortex/run.hpp"
#include "vortex/shape.hpp"
#include "vortex/sphere.hpp"
#include "vortex/stability.hpp"

struct vtx_config {
  vortex::RunConfig cfg;
};

struct vtx_result {
  vortex::RunOutput out;
};

namespace {

thread_local std::string g_last_error;

vtx_status status_of(vortex::ErrorCode c) {
  using vortex::ErrorCode;
  switch (c) {
    case ErrorCode::config: return VTX_ERR_CONFIG;
    case ErrorCode::io: return VTX_ERR_IO;
    case ErrorCode::invalid_argument:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::zero_circulation:
    case ErrorCode::not_critical: return VTX_ERR_INVALID_ARGUMENT;
    default: return VTX_ERR_DOMAIN;
  }
}

template <class F>
vtx_status guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const vortex::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return VTX_ERR_INTERNAL;
}

vtx_status null_arg(const char* name) {
  g_last_error = std::string(name) + " must not be null";
  return VTX_ERR_INVALID_ARGUMENT;
}

vtx_status finish(vortex::RunOutput&& o, vtx_result** out) {
  const vtx_status s = static_cast<vtx_status>(o.status);
  *out = new vtx_result{std::move(o)};
  if (s == VTX_HALTED) g_last_error = "integration halted";
  if (s == VTX_CROSSCHECK_FAILED) g_last_error = "crosscheck deviation above tolerance";
  return s;
}

vortex::SphereState positions_of(size_t n, const double* p) {
  vortex::SphereState x(n);
  for (size_t i = 0; i < n; ++i) x[i] = vortex::Vec3(p[3 * i], p[3 * i + 1], p[3 * i + 2]);
  return x;
}

vortex::Circulations circulations_of(size_t n, const double* gamma, double radius) {
  return vortex::Circulations(std::vector<double>(gamma, gamma + n), radius);
}

}  // namespace

extern "C" {

const char* vtx_version(void) { return "1.0.0"; }

const char* vtx_last_error(void) { return g_last_error.c_str(); }

const char* vtx_status_name(vtx_status s) {
  switch (s) {
    case VTX_OK: return "ok";
    case VTX_ERR_CONFIG: return "config error";
    case VTX_HALTED: return "halted";
    case VTX_CROSSCHECK_FAILED: return "crosscheck failed";
    case VTX_ERR_IO: return "i/o error";
    case VTX_ERR_INVALID_ARGUMENT: return "invalid argument";
    case VTX_ERR_DOMAIN: return "domain error";
    case VTX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

vtx_status vtx_config_from_file(const char* path, vtx_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new vtx_config{vortex::load_run_config(path)};
    return VTX_OK;
  });
}

vtx_status vtx_config_from_string(const char* json, vtx_config** out) {
  if (!json) return null_arg("json");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new vtx_config{vortex::parse_run_config(json)};
    return VTX_OK;
  });
}

vtx_status vtx_config_set_seed(vtx_config* cfg, uint64_t seed) {
  if (!cfg) return null_arg("cfg");
  g_last_error.clear();
  vortex::override_seed(cfg->cfg, seed);
  return VTX_OK;
}

vtx_status vtx_config_set_output_dir(vtx_config* cfg, const char* dir) {
  if (!cfg) return null_arg("cfg");
  if (!dir) return null_arg("dir");
  g_last_error.clear();
  cfg->cfg.output_dir = dir;
  return VTX_OK;
}

vtx_status vtx_config_set_tolerance(vtx_config* cfg, double tolerance) {
  if (!cfg) return null_arg("cfg");
  if (!(tolerance > 0.0)) {
    g_last_error = "tolerance must be positive";
    return VTX_ERR_CONFIG;
  }
  g_last_error.clear();
  cfg->cfg.tolerance = tolerance;
  return VTX_OK;
}

void vtx_config_free(vtx_config* cfg) { delete cfg; }

vtx_status vtx_simulate(const vtx_config* cfg, int write_files, vtx_result** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { return finish(vortex::simulate(cfg->cfg, write_files != 0), out); });
}

vtx_status vtx_crosscheck(const vtx_config* cfg, int write_files, vtx_result** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { return finish(vortex::crosscheck(cfg->cfg, write_files != 0), out); });
}

vtx_status vtx_stability(const vtx_config* cfg, int write_files, vtx_result** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { return finish(vortex::stability(cfg->cfg, write_files != 0), out); });
}

vtx_status vtx_invariants(const vtx_config* cfg, const char* csv_path, int write_files, vtx_result** out) {
  if (!cfg) return null_arg("cfg");
  if (!csv_path) return null_arg("csv_path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { return finish(vortex::invariants(cfg->cfg, csv_path, write_files != 0), out); });
}

const char* vtx_result_json(const vtx_result* r) { return r ? r->out.summary_json.c_str() : ""; }

const char* vtx_result_text(const vtx_result* r) { return r ? r->out.text.c_str() : ""; }

size_t vtx_result_file_count(const vtx_result* r) { return r ? r->out.files.size() : 0; }

const char* vtx_result_file(const vtx_result* r, size_t k) {
  return r && k < r->out.files.size() ? r->out.files[k].c_str() : nullptr;
}

void vtx_result_free(vtx_result* r) { delete r; }

vtx_status vtx_sphere_velocity(size_t n, const double* gamma, double radius, const double* positions,
                               double* velocity_out) {
  if (!gamma || !positions || !velocity_out) return null_arg("gamma, positions and velocity_out");
  return guarded([&] {
    const auto c = circulations_of(n, gamma, radius);
    const auto x = positions_of(n, positions);
    vortex::check_sphere_state(x, c);
    const auto v = vortex::rhs_sphere(x, c);
    for (size_t i = 0; i < n; ++i)
      for (int k = 0; k < 3; ++k) velocity_out[3 * i + k] = v[i](k);
    return VTX_OK;
  });
}

vtx_status vtx_sphere_hamiltonian(size_t n, const double* gamma, double radius, const double* positions,
                                  double* h_out) {
  if (!gamma || !positions || !h_out) return null_arg("gamma, positions and h_out");
  return guarded([&] {
    const auto c = circulations_of(n, gamma, radius);
    const auto x = positions_of(n, positions);
    vortex::check_sphere_state(x, c);
    *h_out = vortex::hamiltonian_sphere(x, c);
    return VTX_OK;
  });
}

vtx_status vtx_shape_from_sphere(size_t n, const double* gamma, double radius, const double* positions,
                                 double* chart_out) {
  if (!gamma || !positions || !chart_out) return null_arg("gamma, positions and chart_out");
  return guarded([&] {
    const auto c = circulations_of(n, gamma, radius);
    const auto x = positions_of(n, positions);
    vortex::check_sphere_state(x, c);
    const Eigen::VectorXd y = vortex::shape_from_sphere(x, c).chart();
    for (Eigen::Index k = 0; k < y.size(); ++k) chart_out[k] = y(k);
    return VTX_OK;
  });
}

vtx_status vtx_tetrahedron_minors(const double gamma[4], const double psi_diag[3], double minors_out[9]) {
  if (!gamma || !psi_diag || !minors_out) return null_arg("gamma, psi_diag and minors_out");
  return guarded([&] {
    const auto d = vortex::hessian_minors_closed({gamma[0], gamma[1], gamma[2], gamma[3]},
                                                 Eigen::Vector3d(psi_diag[0], psi_diag[1], psi_diag[2]));
    for (int k = 0; k < 9; ++k) minors_out[k] = d[k];
    return VTX_OK;
  });
}

}  // extern "C"
