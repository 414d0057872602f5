/*
 * C interface of the blow-up laboratory shared library.
 *
 * Every function that can fail returns a bul_status; BUL_OK means success and
 * any other value is accompanied by a thread-local message available through
 * bul_last_error().  Objects returned through handle out-parameters stay
 * valid until passed to the matching destroy function; strings returned
 * through char** out-parameters are heap-allocated and must be released with
 * bul_string_free().
 *
 * The potential-theory checks (kernel identities, jump relations, integral
 * equation convergence, representation formulas, solver properties) are
 * driven through bul_verify(), which reports one verdict per check.
 */
#ifndef BLOWUPLAB_H
#define BLOWUPLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bul_status {
  BUL_OK = 0,
  BUL_ERR_INVALID_ARGUMENT = 1,
  BUL_ERR_CONFIG = 2,
  BUL_ERR_CFL = 3,
  BUL_ERR_SOLVER_FAULT = 4,
  BUL_ERR_VERIFY_FAIL = 5,
  BUL_ERR_UNSUPPORTED = 6,
  BUL_ERR_IO = 7,
  BUL_ERR_INTERNAL = 8
} bul_status;

/* Interface revision; incremented on incompatible changes. */
int bul_abi_version(void);

/* Message describing the last failing call on this thread ("" when none). */
const char* bul_last_error(void);

void bul_string_free(char* s);

/* ---- domains ------------------------------------------------------- */

typedef struct bul_domain bul_domain;

/* kind is "rectangle" (dims = sx sy), "box" (sx sy sz), "disk" or "ball"
 * (dims = radius). */
bul_status bul_domain_create(const char* kind, const double* dims,
                             size_t ndims, bul_domain** out);
void bul_domain_destroy(bul_domain* dom);

int bul_domain_dim(const bul_domain* dom);
bul_status bul_domain_boundary_measure(const bul_domain* dom, double* out);
bul_status bul_domain_volume(const bul_domain* dom, double* out);

/* ---- finite-difference threshold runs ------------------------------ */

typedef struct bul_fdm_result bul_fdm_result;

/* Marches the explicit scheme for du/dn = u^q on a patch of measure gamma1
 * (face < 0 picks the default face) until max u reaches threshold or t_max
 * runs out.  Rectangle and box domains only. */
bul_status bul_fdm_run(const bul_domain* dom, double gamma1, int face,
                       double q, double u0, double h, double k,
                       double threshold, double t_max, bul_fdm_result** out);
void bul_fdm_result_destroy(bul_fdm_result* res);

int bul_fdm_crossed(const bul_fdm_result* res);
bul_status bul_fdm_threshold_time(const bul_fdm_result* res, double* out);
bul_status bul_fdm_min_at_threshold(const bul_fdm_result* res, double* out);
bul_status bul_fdm_end_state(const bul_fdm_result* res, double* t_end,
                             double* max_end, double* min_end);
bul_status bul_fdm_min_over_run(const bul_fdm_result* res, double* out);
long long bul_fdm_steps(const bul_fdm_result* res);
size_t bul_fdm_series_size(const bul_fdm_result* res);
bul_status bul_fdm_series_sample(const bul_fdm_result* res, size_t index,
                                 double* t, double* max_value,
                                 double* min_value);

/* ---- boundary-integral threshold runs ------------------------------ */

typedef struct bul_bie_result bul_bie_result;

/* Volterra boundary-integral march of the same problem on a disk or ball,
 * with `levels` uniform time steps up to t_max and `nodes` boundary nodes. */
bul_status bul_bie_run(const bul_domain* dom, double gamma1, double q,
                       double u0, double t_max, int levels, int nodes,
                       double threshold, bul_bie_result** out);
void bul_bie_result_destroy(bul_bie_result* res);

int bul_bie_crossed(const bul_bie_result* res);
int bul_bie_truncated(const bul_bie_result* res);
bul_status bul_bie_threshold_time(const bul_bie_result* res, double* out);
bul_status bul_bie_end_time(const bul_bie_result* res, double* out);

/* ---- analytic bounds ----------------------------------------------- */

/* Upper bound on the threshold time for constant initial data u0 on the
 * patch problem. */
bul_status bul_upper_bound(const bul_domain* dom, double q, double u0,
                           double gamma1, double* out);

/* Small-patch lower bound with comparison constant c_constant; *vacuous is
 * set when the patch is too large for the estimate to say anything. */
bul_status bul_lower_bound(const bul_domain* dom, double q, double u0,
                           double gamma1, double c_constant, double* value,
                           int* vacuous);

/* ---- verification suites ------------------------------------------- */

/* Runs suite "kernels", "jumps", "bie", "representation", "fdm-properties",
 * or "all"; writes verify-<suite>.json into out_dir.  *passed reports the
 * overall verdict and json_out (optional) receives the document. */
bul_status bul_verify(const char* suite, const char* out_dir, int* passed,
                      char** json_out);

/* ---- experiment runner --------------------------------------------- */

typedef struct bul_run_config bul_run_config;

bul_status bul_config_load(const char* path, bul_run_config** out);
void bul_config_destroy(bul_run_config* cfg);

bul_status bul_config_set_c_constant(bul_run_config* cfg, double c_constant);

/* Writes the 16-hex-digit config digest (plus NUL) into buf. */
bul_status bul_config_digest(const bul_run_config* cfg, char* buf,
                             size_t buf_size);

/* Output directory precedence: flag_value (may be NULL or empty), then the
 * BLOWUPLAB_OUT environment variable, then the config file, then "runs". */
bul_status bul_config_resolve_out(const bul_run_config* cfg,
                                  const char* flag_value, char** out);

/* Runs the experiment (all sweep entries, or the single patch), writing one
 * record JSON, series CSV and chart per run into out_dir; summary_json
 * receives a digest of what was written. */
bul_status bul_run_experiment(const bul_run_config* cfg, const char* out_dir,
                              int jobs, char** summary_json);

/* Reruns the four preset patch-size sweeps and writes table1.csv..table4.csv
 * plus tables.json into out_dir. */
bul_status bul_reproduce_tables(const char* out_dir, int jobs,
                                char** summary_json);

/* Aggregates the records under records_dir into report.json and report.txt
 * in out_dir; report_json receives the JSON document. */
bul_status bul_report(const char* records_dir, const char* out_dir,
                      char** report_json);

/* Bound values for a loaded config, as JSON. */
bul_status bul_bounds_json(const bul_run_config* cfg, char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BLOWUPLAB_H */
