#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/runlab.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace blowup;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kTinyConfig =
    "name = tiny\n"
    "backend = fdm\n"
    "domain = rectangle\n"
    "sides = 1 1\n"
    "gamma1 = 0.5\n"
    "q = 2\n"
    "u0 = 0.05\n"
    "h = 0.1\n"
    "k = 0.002\n"
    "threshold = 2\n"
    "t_max = 100\n";

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("config parsing accepts the documented keys and nothing else") {
  const RunConfig cfg = parse_config_text(kTinyConfig, "fallback");
  CHECK(cfg.name == "tiny");
  CHECK(cfg.backend == "fdm");
  CHECK(cfg.domain.dim == 2);
  CHECK(cfg.gamma1 == 0.5);
  CHECK(cfg.threshold == 2.0);

  // the file name supplies a name when the key is absent
  const RunConfig unnamed = parse_config_text(
      "domain = rectangle\nsides = 1 1\ngamma1 = 0.5\nh = 0.1\nk = 0.002\n",
      "fallback");
  CHECK(unnamed.name == "fallback");

  // comments and sweep separators
  const RunConfig swept = parse_config_text(
      "domain = rectangle  # unit square\n"
      "sides = 1 1\n"
      "; full-width ladder\n"
      "sweep = 0.5, 0.25\n"
      "gamma1 = 0.5\nh = 0.1\nk = 0.002\n",
      "swept");
  REQUIRE(swept.sweep.size() == 2);
  CHECK(swept.sweep[0] == 0.5);
  CHECK(swept.sweep[1] == 0.25);

  auto expect_kind = [](const std::string& text, ErrorKind kind) {
    try {
      parse_config_text(text, "t");
      return false;
    } catch (const Error& e) {
      return e.kind() == kind;
    }
  };

  CHECK(expect_kind("domain = rectangle\nsides = 1 1\ncolor = red\n",
                    ErrorKind::config));
  CHECK(expect_kind("domain = rectangle\nsides = 1 1\nq = 2\nq = 3\n",
                    ErrorKind::config));
  CHECK(expect_kind("domain = rectangle\nsides = 1 1\nradius = 1\n",
                    ErrorKind::config));
  CHECK(expect_kind("domain = rectangle\nsides = 1 1\nq = banana\n",
                    ErrorKind::config));
  // stability is checked at load time, with its own kind
  CHECK(expect_kind(
      "domain = rectangle\nsides = 1 1\ngamma1 = 0.5\nh = 0.1\nk = 0.01\n",
      ErrorKind::cfl));
  // an unstable step in an unsupported backend still reads as config trouble
  CHECK(expect_kind("domain = rectangle\nsides = 1 1\nbackend = magic\n",
                    ErrorKind::config));
}

TEST_CASE("digests are stable, canonical, and blind to the output directory") {
  RunConfig cfg = parse_config_text(kTinyConfig, "t");
  const std::string digest = config_digest(cfg);
  CHECK(digest.size() == 16);
  CHECK(digest.find_first_not_of("0123456789abcdef") == std::string::npos);

  // the canonical text reparses to the same digest
  const RunConfig again = parse_config_text(canonical_config_text(cfg), "t");
  CHECK(config_digest(again) == digest);

  RunConfig moved = cfg;
  moved.out_dir = "elsewhere";
  CHECK(config_digest(moved) == digest);

  RunConfig wider = cfg;
  wider.gamma1 = 0.25;
  CHECK(config_digest(wider) != digest);
}

TEST_CASE("output directory resolution order") {
  RunConfig cfg = parse_config_text(kTinyConfig, "t");
  unsetenv("BLOWUPLAB_OUT");
  CHECK(resolve_out_dir("", cfg) == "runs");
  cfg.out_dir = "from-config";
  CHECK(resolve_out_dir("", cfg) == "from-config");
  setenv("BLOWUPLAB_OUT", "from-env", 1);
  CHECK(resolve_out_dir("", cfg) == "from-env");
  CHECK(resolve_out_dir("from-flag", cfg) == "from-flag");
  unsetenv("BLOWUPLAB_OUT");
}

TEST_CASE("a tiny experiment leaves a complete record set behind") {
  const fs::path dir = fresh_dir("runlab-single");
  const RunConfig cfg = parse_config_text(kTinyConfig, "t");
  const std::vector<RunRecord> records = run_experiment(cfg, dir.string(), 1);
  REQUIRE(records.size() == 1);

  const RunRecord& rec = records[0];
  CHECK(rec.crossed);
  CHECK(rec.T0 > 0.0);
  CHECK(rec.digest == config_digest(cfg));
  CHECK(rec.bounds.upper_applicable);
  CHECK(rec.T0 < rec.bounds.upper);
  CHECK(fs::exists(rec.record_path));
  CHECK(fs::exists(rec.series_path));
  CHECK(fs::exists(rec.chart_path));

  // the series leads with its column header
  const std::string series = slurp(rec.series_path);
  CHECK(series.rfind("step,t,M1,m1\n", 0) == 0);

  // the record round-trips to the exact same configuration
  std::string recorded_digest;
  const RunConfig back = config_from_record(rec.record_path, &recorded_digest);
  CHECK(recorded_digest == rec.digest);
  CHECK(config_digest(back) == rec.digest);

  // the record itself is well-formed JSON with the run outcome
  const json doc = json::parse(slurp(rec.record_path));
  CHECK(doc.at("schema_version").get<int>() == 1);
  CHECK(doc.at("outputs").at("crossed").get<bool>());
  CHECK(doc.at("outputs").at("T0").get<double>() == doctest::Approx(rec.T0));

  // summaries parse as JSON too
  CHECK(json::parse(records_summary_json(records)).is_object());
}

TEST_CASE("a sweep fans out into one record per patch measure") {
  const fs::path dir = fresh_dir("runlab-sweep");
  RunConfig cfg = parse_config_text(kTinyConfig, "t");
  cfg.sweep = {0.5, 0.25};
  const std::vector<RunRecord> records = run_experiment(cfg, dir.string(), 1);
  REQUIRE(records.size() == 2);
  CHECK(records[0].config.gamma1 == 0.5);
  CHECK(records[1].config.gamma1 == 0.25);
  // each row records itself as a standalone run, so the digests differ
  CHECK(records[0].digest != records[1].digest);
  CHECK(records[0].config.sweep.empty());
  CHECK(records[1].config.sweep.empty());
  // a smaller patch needs longer to cross
  CHECK(records[0].T0 < records[1].T0);

  // the report collects both rows into one group with a fitted order
  const std::string report = make_report(dir.string(), dir.string());
  const json doc = json::parse(report);
  REQUIRE(doc.at("groups").size() == 1);
  const json& group = doc.at("groups")[0];
  CHECK(group.at("rows").size() == 2);
  CHECK(group.at("fitted_order").get<double>() > 0.5);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "report.txt"));
}

TEST_CASE("reports refuse directories without records") {
  const fs::path dir = fresh_dir("runlab-empty");
  bool io_kind = false;
  try {
    make_report(dir.string(), dir.string());
  } catch (const Error& e) {
    io_kind = e.kind() == ErrorKind::io;
  }
  CHECK(io_kind);
  CHECK_THROWS_AS(reproduce_table(5, dir.string(), 1), Error);
}

TEST_CASE("bounds summaries carry the analytic values") {
  const RunConfig cfg = parse_config_text(kTinyConfig, "t");
  const BoundReport bounds = evaluate_bounds(cfg);
  CHECK(bounds.upper_applicable);
  // integral of u0^(1-q) over the unit square divided by (q - 1) times the
  // patch measure: (1 / 0.05) / (1 * 0.5)
  CHECK(bounds.upper == doctest::Approx(40.0).epsilon(1e-13));
  CHECK(bounds.lower_applicable);
  CHECK(!bounds.whole_boundary_applicable);

  const json doc = json::parse(bounds_json(cfg));
  CHECK(doc.at("bounds").at("upper").get<double>() ==
        doctest::Approx(bounds.upper));
  CHECK(doc.at("digest").get<std::string>() == config_digest(cfg));
}

TEST_CASE("verification verdicts are written beside the runs") {
  const fs::path dir = fresh_dir("runlab-verify");
  std::string payload;
  const std::vector<SuiteResult> suites =
      run_verify_command("jumps", dir.string(), &payload);
  REQUIRE(suites.size() == 1);
  CHECK(suites[0].all_passed());
  CHECK(fs::exists(dir / "verify-jumps.json"));
  const json doc = json::parse(payload);
  CHECK(doc.at("passed").get<bool>());
  CHECK(doc.at("suites")[0].at("checks").size() == suites[0].checks.size());

  CHECK_THROWS_AS(run_verify_command("bogus", dir.string(), nullptr), Error);
}
