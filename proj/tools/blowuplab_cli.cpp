// Command-line front end.  Talks to the library exclusively through the C
// interface in blowuplab.h; everything else here is argument handling and
// printing.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 stability-bound
// violation, 4 solver fault, 5 verification failure.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "blowuplab.h"

namespace {

using nlohmann::json;

int exit_code_for(bul_status st) {
  switch (st) {
    case BUL_OK:
      return 0;
    case BUL_ERR_CFL:
      return 3;
    case BUL_ERR_SOLVER_FAULT:
    case BUL_ERR_INTERNAL:
      return 4;
    case BUL_ERR_VERIFY_FAIL:
      return 5;
    default:
      return 2;  // invalid argument, config, unsupported, io
  }
}

int report_failure(bul_status st) {
  std::fprintf(stderr, "error: %s\n", bul_last_error());
  return exit_code_for(st);
}

// Owns a string handed out by the library.
struct OwnedString {
  char* value = nullptr;
  ~OwnedString() { bul_string_free(value); }
  std::string str() const { return value == nullptr ? "" : value; }
};

struct OwnedConfig {
  bul_run_config* value = nullptr;
  ~OwnedConfig() { bul_config_destroy(value); }
};

// Output directory when no config file is involved: flag, then environment,
// then "runs".
std::string fallback_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv("BLOWUPLAB_OUT");
  if (env != nullptr && *env != '\0') return env;
  return "runs";
}

std::string number_or_dash(const json& v) {
  if (!v.is_number()) return "-";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
  return buf;
}

int cmd_run(const std::string& config_path, const std::string& out_flag,
            int jobs, double c_constant) {
  OwnedConfig cfg;
  bul_status st = bul_config_load(config_path.c_str(), &cfg.value);
  if (st != BUL_OK) return report_failure(st);
  if (c_constant > 0.0) {
    st = bul_config_set_c_constant(cfg.value, c_constant);
    if (st != BUL_OK) return report_failure(st);
  }
  OwnedString out_dir;
  st = bul_config_resolve_out(cfg.value, out_flag.c_str(), &out_dir.value);
  if (st != BUL_OK) return report_failure(st);

  OwnedString summary;
  st = bul_run_experiment(cfg.value, out_dir.value, jobs, &summary.value);
  if (st != BUL_OK) return report_failure(st);

  const json doc = json::parse(summary.str());
  for (const json& r : doc.at("records")) {
    if (r.value("crossed", false))
      std::printf("gamma1 %-10s T0 %-12s upper %-12s -> %s\n",
                  number_or_dash(r.at("gamma1")).c_str(),
                  number_or_dash(r.at("T0")).c_str(),
                  number_or_dash(r.at("upper_bound")).c_str(),
                  r.at("record_json").get<std::string>().c_str());
    else
      std::printf("gamma1 %-10s no crossing by t = %s -> %s\n",
                  number_or_dash(r.at("gamma1")).c_str(),
                  number_or_dash(r.at("t_end")).c_str(),
                  r.at("record_json").get<std::string>().c_str());
  }
  std::printf("%zu record(s) written to %s\n", doc.at("records").size(),
              out_dir.value);
  return 0;
}

int cmd_reproduce_tables(const std::string& out_flag, int jobs) {
  const std::string out_dir = fallback_out(out_flag);
  OwnedString summary;
  const bul_status st =
      bul_reproduce_tables(out_dir.c_str(), jobs, &summary.value);
  if (st != BUL_OK) return report_failure(st);

  const json doc = json::parse(summary.str());
  for (const json& table : doc.at("tables")) {
    std::printf("%s (%d-D, q = %s): fitted order %s\n",
                table.at("table").get<std::string>().c_str(),
                table.at("dim").get<int>(),
                number_or_dash(table.at("q")).c_str(),
                number_or_dash(table.at("fitted_order")).c_str());
    for (const json& row : table.at("rows"))
      std::printf("  gamma1 %-8s T0 %-10s order %-8s m1 %-10s upper %s\n",
                  number_or_dash(row.at("gamma1")).c_str(),
                  number_or_dash(row.at("T0")).c_str(),
                  number_or_dash(row.at("order")).c_str(),
                  number_or_dash(row.at("m1_at_T0")).c_str(),
                  number_or_dash(row.at("upper_bound")).c_str());
  }
  std::printf("tables written to %s\n", out_dir.c_str());
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_flag) {
  const std::string out_dir = fallback_out(out_flag);
  int passed = 0;
  OwnedString verdict;
  const bul_status st =
      bul_verify(suite.c_str(), out_dir.c_str(), &passed, &verdict.value);
  if (st != BUL_OK) return report_failure(st);

  const json doc = json::parse(verdict.str());
  for (const json& s : doc.at("suites")) {
    int ok = 0;
    const json& checks = s.at("checks");
    for (const json& c : checks) {
      const bool good = c.value("passed", false);
      if (good) ++ok;
      std::printf("[%s] %s/%s  value %.10g  target %.10g +- %.3g\n",
                  good ? " ok " : "FAIL",
                  s.at("suite").get<std::string>().c_str(),
                  c.at("name").get<std::string>().c_str(),
                  c.at("value").get<double>(), c.at("target").get<double>(),
                  c.at("tolerance").get<double>());
      if (!good)
        std::printf("       %s\n", c.value("detail", "").c_str());
    }
    std::printf("suite %s: %d/%zu checks passed\n",
                s.at("suite").get<std::string>().c_str(), ok, checks.size());
  }
  std::printf("verdict written to %s/verify-%s.json\n", out_dir.c_str(),
              suite.c_str());
  return passed != 0 ? 0 : 5;
}

int cmd_report(const std::string& out_flag) {
  const std::string dir = fallback_out(out_flag);
  OwnedString doc;
  const bul_status st = bul_report(dir.c_str(), dir.c_str(), &doc.value);
  if (st != BUL_OK) return report_failure(st);
  std::ifstream txt(dir + "/report.txt");
  std::ostringstream buf;
  buf << txt.rdbuf();
  std::fputs(buf.str().c_str(), stdout);
  std::printf("report written to %s/report.json\n", dir.c_str());
  return 0;
}

int cmd_bounds(const std::string& config_path, double c_constant) {
  OwnedConfig cfg;
  bul_status st = bul_config_load(config_path.c_str(), &cfg.value);
  if (st != BUL_OK) return report_failure(st);
  if (c_constant > 0.0) {
    st = bul_config_set_c_constant(cfg.value, c_constant);
    if (st != BUL_OK) return report_failure(st);
  }
  OwnedString doc;
  st = bul_bounds_json(cfg.value, &doc.value);
  if (st != BUL_OK) return report_failure(st);
  std::fputs(doc.value, stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for boundary-driven heat blow-up",
               "blowuplab"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string suite = "all";
  int jobs = 1;
  double c_constant = 0.0;  // 0 keeps the config's value

  CLI::App* run = app.add_subcommand(
      "run", "run the experiment described by a config file");
  run->add_option("--config", config_path, "config file path")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--jobs", jobs, "parallel sweep jobs")
      ->check(CLI::PositiveNumber);
  run->add_option("--c-constant", c_constant,
                  "comparison constant for the lower bound");

  CLI::App* tables = app.add_subcommand(
      "reproduce-tables", "rerun the four preset patch-size sweeps");
  tables->add_option("--out", out_dir, "output directory");
  tables->add_option("--jobs", jobs, "parallel jobs per table")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand(
      "verify", "run a verification suite and report each check");
  verify
      ->add_option("--suite", suite,
                   "kernels, jumps, bie, representation, fdm-properties, all")
      ->required();
  verify->add_option("--out", out_dir, "output directory for the verdict");

  CLI::App* report = app.add_subcommand(
      "report", "aggregate the run records in the output directory");
  report->add_option("--out", out_dir,
                     "directory holding the records (default: runs)");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "evaluate the analytic bounds for a config file");
  bounds->add_option("--config", config_path, "config file path")->required();
  bounds->add_option("--c-constant", c_constant,
                     "comparison constant for the lower bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, jobs, c_constant);
    if (tables->parsed()) return cmd_reproduce_tables(out_dir, jobs);
    if (verify->parsed()) return cmd_verify(suite, out_dir);
    if (report->parsed()) return cmd_report(out_dir);
    if (bounds->parsed()) return cmd_bounds(config_path, c_constant);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 2;
}
