#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "blowuplab.h"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("interface basics") {
  CHECK(bul_abi_version() == 1);
  CHECK(std::string(bul_last_error()).empty());
  bul_string_free(nullptr);  // harmless on null
}

TEST_CASE("domain handles") {
  const double sides[2] = {1.0, 1.0};
  bul_domain* dom = nullptr;
  REQUIRE(bul_domain_create("rectangle", sides, 2, &dom) == BUL_OK);
  CHECK(bul_domain_dim(dom) == 2);

  double measure = 0.0, volume = 0.0;
  CHECK(bul_domain_boundary_measure(dom, &measure) == BUL_OK);
  CHECK(measure == doctest::Approx(4.0));
  CHECK(bul_domain_volume(dom, &volume) == BUL_OK);
  CHECK(volume == doctest::Approx(1.0));
  bul_domain_destroy(dom);

  bul_domain* bad = nullptr;
  CHECK(bul_domain_create("triangle", sides, 2, &bad) != BUL_OK);
  CHECK(!std::string(bul_last_error()).empty());
  CHECK(bad == nullptr);
  CHECK(bul_domain_create("rectangle", sides, 2, nullptr) ==
        BUL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("finite-difference runs through the C surface") {
  const double sides[2] = {1.0, 1.0};
  bul_domain* dom = nullptr;
  REQUIRE(bul_domain_create("rectangle", sides, 2, &dom) == BUL_OK);

  bul_fdm_result* res = nullptr;
  REQUIRE(bul_fdm_run(dom, 0.5, -1, 2.0, 0.05, 0.1, 0.002, 2.0, 100.0,
                      &res) == BUL_OK);
  CHECK(bul_fdm_crossed(res) == 1);

  double t0 = 0.0, m1 = 0.0;
  CHECK(bul_fdm_threshold_time(res, &t0) == BUL_OK);
  CHECK(t0 > 0.0);
  CHECK(bul_fdm_min_at_threshold(res, &m1) == BUL_OK);
  CHECK(m1 >= 0.05);

  double t_end = 0.0, max_end = 0.0, min_end = 0.0;
  CHECK(bul_fdm_end_state(res, &t_end, &max_end, &min_end) == BUL_OK);
  CHECK(max_end >= 2.0);
  CHECK(bul_fdm_steps(res) > 0);

  const size_t samples = bul_fdm_series_size(res);
  REQUIRE(samples >= 2);
  double ta = 0.0, ma = 0.0, mia = 0.0, tb = 0.0, mb = 0.0, mib = 0.0;
  CHECK(bul_fdm_series_sample(res, 0, &ta, &ma, &mia) == BUL_OK);
  CHECK(bul_fdm_series_sample(res, samples - 1, &tb, &mb, &mib) == BUL_OK);
  CHECK(tb > ta);
  CHECK(mb >= ma);
  CHECK(bul_fdm_series_sample(res, samples, &ta, &ma, &mia) != BUL_OK);
  bul_fdm_result_destroy(res);

  // an unstable step is refused with the dedicated status
  bul_fdm_result* unstable = nullptr;
  CHECK(bul_fdm_run(dom, 0.5, -1, 2.0, 0.05, 0.1, 0.01, 2.0, 100.0,
                    &unstable) == BUL_ERR_CFL);
  CHECK(unstable == nullptr);
  bul_domain_destroy(dom);
}

TEST_CASE("integral-equation runs through the C surface") {
  const double radius[1] = {1.0};
  bul_domain* disk = nullptr;
  REQUIRE(bul_domain_create("disk", radius, 1, &disk) == BUL_OK);

  bul_bie_result* res = nullptr;
  const double whole = 2.0 * 3.14159265358979323846;
  REQUIRE(bul_bie_run(disk, whole, 2.0, 0.5, 2.0, 400, 32, 2.0, &res) ==
          BUL_OK);
  CHECK(bul_bie_crossed(res) == 1);
  CHECK(bul_bie_truncated(res) == 0);
  double t0 = 0.0, t_end = 0.0;
  CHECK(bul_bie_threshold_time(res, &t0) == BUL_OK);
  CHECK(bul_bie_end_time(res, &t_end) == BUL_OK);
  CHECK(t0 > 0.0);
  CHECK(t0 <= t_end);
  bul_bie_result_destroy(res);

  // the grid backend's domain is refused here
  const double sides[2] = {1.0, 1.0};
  bul_domain* sq = nullptr;
  REQUIRE(bul_domain_create("rectangle", sides, 2, &sq) == BUL_OK);
  bul_bie_result* bad = nullptr;
  CHECK(bul_bie_run(sq, 0.5, 2.0, 0.5, 2.0, 100, 32, 2.0, &bad) != BUL_OK);
  bul_domain_destroy(sq);
  bul_domain_destroy(disk);
}

TEST_CASE("analytic bounds through the C surface") {
  const double sides[2] = {1.0, 1.0};
  bul_domain* dom = nullptr;
  REQUIRE(bul_domain_create("rectangle", sides, 2, &dom) == BUL_OK);

  double upper = 0.0;
  CHECK(bul_upper_bound(dom, 2.0, 0.05, 0.5, &upper) == BUL_OK);
  CHECK(upper == doctest::Approx(40.0).epsilon(1e-13));
  CHECK(bul_upper_bound(dom, 2.0, 0.05, 0.0, &upper) != BUL_OK);

  double value = 0.0;
  int vacuous = 0;
  CHECK(bul_lower_bound(dom, 2.0, 0.05, 0.5, 1.0, &value, &vacuous) == BUL_OK);
  CHECK(vacuous == 0);
  CHECK(value == doctest::Approx(3.56034777455456).epsilon(1e-10));
  bul_domain_destroy(dom);
}

TEST_CASE("configs, digests, and experiments through the C surface") {
  const fs::path dir = fresh_dir("capi-run");
  const fs::path cfg_path = dir / "tiny.cfg";
  {
    std::ofstream out(cfg_path);
    out << "backend = fdm\ndomain = rectangle\nsides = 1 1\n"
        << "gamma1 = 0.5\nq = 2\nu0 = 0.05\nh = 0.1\nk = 0.002\n"
        << "threshold = 2\nt_max = 100\n";
  }

  bul_run_config* cfg = nullptr;
  REQUIRE(bul_config_load(cfg_path.string().c_str(), &cfg) == BUL_OK);

  char digest[17] = {0};
  CHECK(bul_config_digest(cfg, digest, sizeof digest) == BUL_OK);
  CHECK(std::strlen(digest) == 16);
  char small[8];
  CHECK(bul_config_digest(cfg, small, sizeof small) ==
        BUL_ERR_INVALID_ARGUMENT);

  CHECK(bul_config_set_c_constant(cfg, 0.0) != BUL_OK);
  CHECK(bul_config_set_c_constant(cfg, 2.0) == BUL_OK);

  char* resolved = nullptr;
  CHECK(bul_config_resolve_out(cfg, "chosen", &resolved) == BUL_OK);
  CHECK(std::string(resolved) == "chosen");
  bul_string_free(resolved);

  char* summary = nullptr;
  REQUIRE(bul_run_experiment(cfg, dir.string().c_str(), 1, &summary) ==
          BUL_OK);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"records\"") != std::string::npos);
  bul_string_free(summary);

  char* bounds = nullptr;
  CHECK(bul_bounds_json(cfg, &bounds) == BUL_OK);
  CHECK(std::string(bounds).find("\"upper\"") != std::string::npos);
  bul_string_free(bounds);
  bul_config_destroy(cfg);

  // records written above feed the report entry point
  char* report = nullptr;
  CHECK(bul_report(dir.string().c_str(), dir.string().c_str(), &report) ==
        BUL_OK);
  CHECK(std::string(report).find("\"groups\"") != std::string::npos);
  bul_string_free(report);

  bul_run_config* missing = nullptr;
  CHECK(bul_config_load((dir / "absent.cfg").string().c_str(), &missing) ==
        BUL_ERR_IO);
}

TEST_CASE("verification through the C surface") {
  const fs::path dir = fresh_dir("capi-verify");
  int passed = -1;
  char* doc = nullptr;
  REQUIRE(bul_verify("jumps", dir.string().c_str(), &passed, &doc) == BUL_OK);
  CHECK(passed == 1);
  REQUIRE(doc != nullptr);
  CHECK(std::string(doc).find("\"checks\"") != std::string::npos);
  bul_string_free(doc);
  CHECK(fs::exists(dir / "verify-jumps.json"));

  CHECK(bul_verify("bogus", dir.string().c_str(), &passed, nullptr) ==
        BUL_ERR_INVALID_ARGUMENT);
}
