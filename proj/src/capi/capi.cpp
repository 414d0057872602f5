// C interface of the shared library: thin handle wrappers around the core,
// with exceptions converted to status codes and a thread-local message.
#include "blowuplab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/fdm.hpp"
#include "core/geometry.hpp"
#include "core/layer_potentials.hpp"
#include "core/runlab.hpp"

struct bul_domain {
  blowup::Domain dom;
};

struct bul_fdm_result {
  blowup::ThresholdReport rep;
};

struct bul_bie_result {
  blowup::NonlinearSolveResult sol;
};

struct bul_run_config {
  blowup::RunConfig cfg;
};

namespace {

thread_local std::string t_last_error;

bul_status status_from(blowup::ErrorKind kind) {
  return static_cast<bul_status>(static_cast<int>(kind));
}

// Runs fn, translating the library's error taxonomy into status codes.
template <typename Fn>
bul_status guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return BUL_OK;
  } catch (const blowup::Error& e) {
    t_last_error = e.what();
    return status_from(e.kind());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return BUL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return BUL_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown failure";
    return BUL_ERR_INTERNAL;
  }
}

bul_status invalid(const char* message) {
  t_last_error = message;
  return BUL_ERR_INVALID_ARGUMENT;
}

bul_status give_string(const std::string& s, char** out) {
  char* copy = static_cast<char*>(std::malloc(s.size() + 1));
  if (copy == nullptr) {
    t_last_error = "out of memory";
    return BUL_ERR_INTERNAL;
  }
  std::memcpy(copy, s.c_str(), s.size() + 1);
  *out = copy;
  return BUL_OK;
}

}  // namespace

extern "C" {

int bul_abi_version(void) { return 1; }

const char* bul_last_error(void) { return t_last_error.c_str(); }

void bul_string_free(char* s) { std::free(s); }

/* ---- domains ------------------------------------------------------- */

bul_status bul_domain_create(const char* kind, const double* dims,
                             size_t ndims, bul_domain** out) {
  if (out == nullptr) return invalid("out must not be null");
  *out = nullptr;
  if (kind == nullptr) return invalid("kind must not be null");
  if (dims == nullptr && ndims > 0) return invalid("dims must not be null");
  return guarded([&]() {
    const std::vector<double> d(dims, dims + ndims);
    *out = new bul_domain{blowup::make_domain(kind, d)};
  });
}

void bul_domain_destroy(bul_domain* dom) { delete dom; }

int bul_domain_dim(const bul_domain* dom) {
  return dom == nullptr ? 0 : dom->dom.dim;
}

bul_status bul_domain_boundary_measure(const bul_domain* dom, double* out) {
  if (dom == nullptr || out == nullptr)
    return invalid("dom and out must not be null");
  return guarded([&]() { *out = dom->dom.boundary_measure(); });
}

bul_status bul_domain_volume(const bul_domain* dom, double* out) {
  if (dom == nullptr || out == nullptr)
    return invalid("dom and out must not be null");
  return guarded([&]() { *out = dom->dom.volume(); });
}

/* ---- finite-difference threshold runs ------------------------------ */

bul_status bul_fdm_run(const bul_domain* dom, double gamma1, int face,
                       double q, double u0, double h, double k,
                       double threshold, double t_max, bul_fdm_result** out) {
  if (out == nullptr) return invalid("out must not be null");
  *out = nullptr;
  if (dom == nullptr) return invalid("dom must not be null");
  return guarded([&]() {
    blowup::SolverConfig sc;
    sc.domain = dom->dom;
    sc.part = blowup::partition_boundary(dom->dom, gamma1, face);
    sc.q = q;
    sc.u0_value = u0;
    sc.h = h;
    sc.k = k;
    sc.threshold = threshold;
    sc.t_max = t_max;
    sc.validate();
    *out = new bul_fdm_result{blowup::run_until_threshold(sc)};
  });
}

void bul_fdm_result_destroy(bul_fdm_result* res) { delete res; }

int bul_fdm_crossed(const bul_fdm_result* res) {
  return res != nullptr && res->rep.crossed ? 1 : 0;
}

bul_status bul_fdm_threshold_time(const bul_fdm_result* res, double* out) {
  if (res == nullptr || out == nullptr)
    return invalid("res and out must not be null");
  if (!res->rep.crossed)
    return invalid("the run did not cross the threshold");
  *out = res->rep.T0;
  return BUL_OK;
}

bul_status bul_fdm_min_at_threshold(const bul_fdm_result* res, double* out) {
  if (res == nullptr || out == nullptr)
    return invalid("res and out must not be null");
  if (!res->rep.crossed)
    return invalid("the run did not cross the threshold");
  *out = res->rep.m1_at_T0;
  return BUL_OK;
}

bul_status bul_fdm_end_state(const bul_fdm_result* res, double* t_end,
                             double* max_end, double* min_end) {
  if (res == nullptr) return invalid("res must not be null");
  if (t_end != nullptr) *t_end = res->rep.t_end;
  if (max_end != nullptr) *max_end = res->rep.M1_end;
  if (min_end != nullptr) *min_end = res->rep.m1_end;
  return BUL_OK;
}

bul_status bul_fdm_min_over_run(const bul_fdm_result* res, double* out) {
  if (res == nullptr || out == nullptr)
    return invalid("res and out must not be null");
  *out = res->rep.min_over_run;
  return BUL_OK;
}

long long bul_fdm_steps(const bul_fdm_result* res) {
  return res == nullptr ? 0 : res->rep.steps;
}

size_t bul_fdm_series_size(const bul_fdm_result* res) {
  return res == nullptr ? 0 : res->rep.series.size();
}

bul_status bul_fdm_series_sample(const bul_fdm_result* res, size_t index,
                                 double* t, double* max_value,
                                 double* min_value) {
  if (res == nullptr) return invalid("res must not be null");
  if (index >= res->rep.series.size())
    return invalid("series index out of range");
  const blowup::SeriesSample& s = res->rep.series[index];
  if (t != nullptr) *t = s.t;
  if (max_value != nullptr) *max_value = s.M1;
  if (min_value != nullptr) *min_value = s.m1;
  return BUL_OK;
}

/* ---- boundary-integral threshold runs ------------------------------ */

bul_status bul_bie_run(const bul_domain* dom, double gamma1, double q,
                       double u0, double t_max, int levels, int nodes,
                       double threshold, bul_bie_result** out) {
  if (out == nullptr) return invalid("out must not be null");
  *out = nullptr;
  if (dom == nullptr) return invalid("dom must not be null");
  return guarded([&]() {
    const blowup::BoundaryPartition part =
        blowup::partition_boundary(dom->dom, gamma1);
    *out = new bul_bie_result{blowup::solve_nonlinear_bie(
        dom->dom, part, q, u0, t_max, levels, nodes, threshold)};
  });
}

void bul_bie_result_destroy(bul_bie_result* res) { delete res; }

int bul_bie_crossed(const bul_bie_result* res) {
  return res != nullptr && res->sol.crossed ? 1 : 0;
}

int bul_bie_truncated(const bul_bie_result* res) {
  return res != nullptr && res->sol.truncated ? 1 : 0;
}

bul_status bul_bie_threshold_time(const bul_bie_result* res, double* out) {
  if (res == nullptr || out == nullptr)
    return invalid("res and out must not be null");
  if (!res->sol.crossed)
    return invalid("the run did not cross the threshold");
  *out = res->sol.T0;
  return BUL_OK;
}

bul_status bul_bie_end_time(const bul_bie_result* res, double* out) {
  if (res == nullptr || out == nullptr)
    return invalid("res and out must not be null");
  *out = res->sol.t_end;
  return BUL_OK;
}

/* ---- analytic bounds ----------------------------------------------- */

bul_status bul_upper_bound(const bul_domain* dom, double q, double u0,
                           double gamma1, double* out) {
  if (dom == nullptr || out == nullptr)
    return invalid("dom and out must not be null");
  return guarded([&]() {
    blowup::BoundInputs in;
    in.n = dom->dom.dim;
    in.q = q;
    in.M0 = u0;
    in.gamma1_measure = gamma1;
    in.u0_integral = blowup::constant_u0_integral(dom->dom, u0, q);
    *out = blowup::upper_bound(in);
  });
}

bul_status bul_lower_bound(const bul_domain* dom, double q, double u0,
                           double gamma1, double c_constant, double* value,
                           int* vacuous) {
  if (dom == nullptr || value == nullptr)
    return invalid("dom and value must not be null");
  return guarded([&]() {
    blowup::BoundInputs in;
    in.n = dom->dom.dim;
    in.q = q;
    in.M0 = u0;
    in.gamma1_measure = gamma1;
    in.C = c_constant;
    const blowup::LowerBoundValue lv = blowup::lower_bound(in);
    *value = lv.value;
    if (vacuous != nullptr) *vacuous = lv.vacuous ? 1 : 0;
  });
}

/* ---- verification suites ------------------------------------------- */

bul_status bul_verify(const char* suite, const char* out_dir, int* passed,
                      char** json_out) {
  if (suite == nullptr || out_dir == nullptr)
    return invalid("suite and out_dir must not be null");
  std::string text;
  bool all = true;
  const bul_status st = guarded([&]() {
    const std::vector<blowup::SuiteResult> suites =
        blowup::run_verify_command(suite, out_dir, &text);
    for (const blowup::SuiteResult& s : suites) all = all && s.all_passed();
  });
  if (st != BUL_OK) return st;
  if (passed != nullptr) *passed = all ? 1 : 0;
  if (json_out != nullptr) return give_string(text, json_out);
  return BUL_OK;
}

/* ---- experiment runner --------------------------------------------- */

bul_status bul_config_load(const char* path, bul_run_config** out) {
  if (out == nullptr) return invalid("out must not be null");
  *out = nullptr;
  if (path == nullptr) return invalid("path must not be null");
  return guarded(
      [&]() { *out = new bul_run_config{blowup::load_config(path)}; });
}

void bul_config_destroy(bul_run_config* cfg) { delete cfg; }

bul_status bul_config_set_c_constant(bul_run_config* cfg, double c_constant) {
  if (cfg == nullptr) return invalid("cfg must not be null");
  if (!(c_constant > 0.0)) return invalid("c_constant must be positive");
  cfg->cfg.c_constant = c_constant;
  return BUL_OK;
}

bul_status bul_config_digest(const bul_run_config* cfg, char* buf,
                             size_t buf_size) {
  if (cfg == nullptr || buf == nullptr)
    return invalid("cfg and buf must not be null");
  if (buf_size < 17) return invalid("buf must hold at least 17 bytes");
  std::string digest;
  const bul_status st =
      guarded([&]() { digest = blowup::config_digest(cfg->cfg); });
  if (st != BUL_OK) return st;
  std::memcpy(buf, digest.c_str(), digest.size() + 1);
  return BUL_OK;
}

bul_status bul_config_resolve_out(const bul_run_config* cfg,
                                  const char* flag_value, char** out) {
  if (cfg == nullptr || out == nullptr)
    return invalid("cfg and out must not be null");
  std::string dir;
  const bul_status st = guarded([&]() {
    dir = blowup::resolve_out_dir(flag_value == nullptr ? "" : flag_value,
                                  cfg->cfg);
  });
  if (st != BUL_OK) return st;
  return give_string(dir, out);
}

bul_status bul_run_experiment(const bul_run_config* cfg, const char* out_dir,
                              int jobs, char** summary_json) {
  if (cfg == nullptr || out_dir == nullptr)
    return invalid("cfg and out_dir must not be null");
  std::string summary;
  const bul_status st = guarded([&]() {
    const std::vector<blowup::RunRecord> records =
        blowup::run_experiment(cfg->cfg, out_dir, jobs);
    summary = blowup::records_summary_json(records);
  });
  if (st != BUL_OK) return st;
  if (summary_json != nullptr) return give_string(summary, summary_json);
  return BUL_OK;
}

bul_status bul_reproduce_tables(const char* out_dir, int jobs,
                                char** summary_json) {
  if (out_dir == nullptr) return invalid("out_dir must not be null");
  std::string summary;
  const bul_status st = guarded([&]() {
    const std::vector<blowup::TableResult> tables =
        blowup::reproduce_tables(out_dir, jobs);
    summary = blowup::tables_summary_json(tables);
  });
  if (st != BUL_OK) return st;
  if (summary_json != nullptr) return give_string(summary, summary_json);
  return BUL_OK;
}

bul_status bul_report(const char* records_dir, const char* out_dir,
                      char** report_json) {
  if (records_dir == nullptr || out_dir == nullptr)
    return invalid("records_dir and out_dir must not be null");
  std::string text;
  const bul_status st =
      guarded([&]() { text = blowup::make_report(records_dir, out_dir); });
  if (st != BUL_OK) return st;
  if (report_json != nullptr) return give_string(text, report_json);
  return BUL_OK;
}

bul_status bul_bounds_json(const bul_run_config* cfg, char** json_out) {
  if (cfg == nullptr || json_out == nullptr)
    return invalid("cfg and json_out must not be null");
  std::string text;
  const bul_status st =
      guarded([&]() { text = blowup::bounds_json(cfg->cfg); });
  if (st != BUL_OK) return st;
  return give_string(text, json_out);
}

} /* extern "C" */
