// Experiment runner: configuration files, digests, run records with series
// output, the four preset table sweeps, report aggregation, and the driver
// for the verification suites.
#pragma once

#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/geometry.hpp"
#include "core/verify.hpp"

namespace blowup {

struct RunConfig {
  std::string name;
  std::string backend = "fdm";  // fdm | bie
  Domain domain;
  double gamma1 = 0.0;  // |Gamma1|
  int face = -1;        // flux face index; -1 picks the default face
  double q = 2.0;
  double u0 = 0.05;  // constant initial data
  double h = 1.0 / 40;
  double k = 0.2 / 1600;
  double threshold = 10.0;
  double t_max = 1e6;
  double c_constant = 1.0;
  // Boundary-node flux tagging for the fdm backend: "cell-share" (dual-cell
  // shares, partial weight when a patch edge lands on a node) or "node-block"
  // (whole nodes by half-open interval).
  std::string patch_rule = "cell-share";
  std::vector<double> sweep;  // optional |Gamma1| ladder, strictly decreasing
  std::string out_dir;        // optional output directory from the config
};

// Parses the key = value configuration text ('#' and ';' comments, optional
// [section] headers).  Unknown keys, missing required keys, inconsistent
// values, and a time step over the stability bound are rejected at load time.
RunConfig parse_config_text(const std::string& text,
                            const std::string& name_hint);
RunConfig load_config(const std::string& path);

// Canonical one-line-per-key rendering of the physics-relevant fields, and
// its FNV-1a 64-bit digest (16 hex digits).  The output directory does not
// enter the digest.
std::string canonical_config_text(const RunConfig& cfg);
std::string config_digest(const RunConfig& cfg);

// Output directory precedence: explicit flag, then BLOWUPLAB_OUT, then the
// config's own entry, then "runs".
std::string resolve_out_dir(const std::string& flag_value,
                            const RunConfig& cfg);

struct BoundReport {
  bool upper_applicable = false;
  double upper = 0.0;
  bool lower_applicable = false;
  LowerBoundValue lower;
  bool whole_boundary_applicable = false;  // needs full-boundary patch, M0 >= 1
  double whole_boundary = 0.0;
  bool ps_applicable = false;  // full-boundary patch only
  double ps = 0.0;             // energy-function bound for this dimension
  double ps_m = 0.0;           // comparison exponent used
};
BoundReport evaluate_bounds(const RunConfig& cfg);

struct RunRecord {
  RunConfig config;
  std::string digest;
  bool crossed = false;
  bool overflowed = false;
  bool truncated = false;  // integral-equation march stopped contracting
  double T0 = 0.0;
  double m1_at_T0 = 0.0;
  double t_end = 0.0;
  double M1_end = 0.0;
  long long steps = 0;
  BoundReport bounds;
  double wall_seconds = 0.0;
  std::string record_path;
  std::string series_path;
  std::string chart_path;
};

// Executes the experiment: every sweep entry when a sweep is present, else
// the single gamma1.  Each run writes <name>-<digest>.json, a step series
// CSV (step, t, M1, m1) and an M1(t) chart into out_dir; identical configs
// land on identical paths.  jobs > 1 runs sweep entries concurrently.
std::vector<RunRecord> run_experiment(const RunConfig& cfg,
                                      const std::string& out_dir, int jobs);

// Rebuilds the config embedded in a written record; the digest of the result
// must match the one stored alongside it (returned through digest_out).
RunConfig config_from_record(const std::string& record_path,
                             std::string* digest_out = nullptr);

// One-object JSON summary of a batch of records (paths, threshold times,
// bound values), for callers that do not read the per-run files.
std::string records_summary_json(const std::vector<RunRecord>& records);

struct TableRow {
  double gamma1 = 0.0;
  bool crossed = false;
  double T0 = 0.0;
  bool has_order = false;  // first row has no predecessor
  double order = 0.0;
  double m1_at_T0 = 0.0;
  double min_over_run = 0.0;  // smallest value at any node of any step
  double upper = 0.0;
  LowerBoundValue lower;
};

struct TableResult {
  std::string table;  // table1 .. table4
  int dim = 2;
  double q = 2.0;
  std::vector<TableRow> rows;
  double fitted = 0.0;  // least-squares order over the sweep
  std::string csv_path;
};

// The four preset sweeps (2-D and 3-D, q = 2 and 3) with the reference grid
// parameters; writes table<i>.csv with columns
// (gamma1, T0, order, m1_at_T0, upper_bound, lower_bound_C1) plus a combined
// tables.json.  index selects one table (1..4); jobs parallelizes rows.
TableResult reproduce_table(int index, const std::string& out_dir, int jobs);
std::vector<TableResult> reproduce_tables(const std::string& out_dir,
                                          int jobs);

// JSON rendering of a set of reproduced tables (the content of tables.json).
std::string tables_summary_json(const std::vector<TableResult>& tables);

// Aggregates every record in records_dir into report.json and report.txt
// under out_dir (grouped by dimension and exponent, with pairwise and fitted
// orders) and returns the JSON text.  Fails when no records are present.
std::string make_report(const std::string& records_dir,
                        const std::string& out_dir);

// Runs the named suite or "all", writes verify-<suite>.json into out_dir;
// json_text, when non-null, receives the verdict document that was written.
std::vector<SuiteResult> run_verify_command(const std::string& suite,
                                            const std::string& out_dir,
                                            std::string* json_text = nullptr);

// JSON rendering of evaluate_bounds for the bounds subcommand.
std::string bounds_json(const RunConfig& cfg);

}  // namespace blowup
