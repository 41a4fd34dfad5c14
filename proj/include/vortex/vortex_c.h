#ifndef VORTEX_C_H
#define VORTEX_C_H
/* C interface to the point-vortex toolkit. Every function returns a status;
   on failure vtx_last_error() describes the problem for the calling thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define VTX_API __declspec(dllexport)
#else
#define VTX_API __attribute__((visibility("default")))
#endif

typedef enum vtx_status {
  VTX_OK = 0,
  VTX_ERR_CONFIG = 1,
  VTX_HALTED = 2,
  VTX_CROSSCHECK_FAILED = 3,
  VTX_ERR_IO = 4,
  VTX_ERR_INVALID_ARGUMENT = 5,
  VTX_ERR_DOMAIN = 6,
  VTX_ERR_INTERNAL = 7
} vtx_status;

typedef struct vtx_config vtx_config;
typedef struct vtx_result vtx_result;

VTX_API const char* vtx_version(void);
/* Message of the last failing call on this thread, "" if none. */
VTX_API const char* vtx_last_error(void);
VTX_API const char* vtx_status_name(vtx_status s);

/* Run configuration (JSON document). */
VTX_API vtx_status vtx_config_from_file(const char* path, vtx_config** out);
VTX_API vtx_status vtx_config_from_string(const char* json, vtx_config** out);
VTX_API vtx_status vtx_config_set_seed(vtx_config* cfg, uint64_t seed);
VTX_API vtx_status vtx_config_set_output_dir(vtx_config* cfg, const char* dir);
VTX_API vtx_status vtx_config_set_tolerance(vtx_config* cfg, double tolerance);
VTX_API void vtx_config_free(vtx_config* cfg);

/* Commands. On VTX_OK, VTX_HALTED and VTX_CROSSCHECK_FAILED *out holds a
   result that the caller releases with vtx_result_free. write_files = 0
   suppresses output files. */
VTX_API vtx_status vtx_simulate(const vtx_config* cfg, int write_files, vtx_result** out);
VTX_API vtx_status vtx_crosscheck(const vtx_config* cfg, int write_files, vtx_result** out);
VTX_API vtx_status vtx_stability(const vtx_config* cfg, int write_files, vtx_result** out);
VTX_API vtx_status vtx_invariants(const vtx_config* cfg, const char* csv_path, int write_files, vtx_result** out);

VTX_API const char* vtx_result_json(const vtx_result* r);
VTX_API const char* vtx_result_text(const vtx_result* r);
VTX_API size_t vtx_result_file_count(const vtx_result* r);
VTX_API const char* vtx_result_file(const vtx_result* r, size_t k);
VTX_API void vtx_result_free(vtx_result* r);

/* Direct numerics. Positions are n rows of (x1, x2, x3) on the sphere of
   radius `radius`. */
VTX_API vtx_status vtx_sphere_velocity(size_t n, const double* gamma, double radius, const double* positions,
                                       double* velocity_out);
VTX_API vtx_status vtx_sphere_hamiltonian(size_t n, const double* gamma, double radius, const double* positions,
                                          double* h_out);
/* Shape chart (s_1..s_{n-1}, then Re mu_ij, Im mu_ij per pair); chart_out
   holds (n-1) + (n-1)(n-2) values. */
VTX_API vtx_status vtx_shape_from_sphere(size_t n, const double* gamma, double radius, const double* positions,
                                         double* chart_out);
/* Closed-form leading principal minors d_1..d_9 for the tetrahedron. */
VTX_API vtx_status vtx_tetrahedron_minors(const double gamma[4], const double psi_diag[3], double minors_out[9]);

#ifdef __cplusplus
}
#endif

#endif
