#include "core/runlab.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "core/errors.hpp"
#include "core/fdm.hpp"
#include "core/layer_potentials.hpp"

namespace blowup {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])) != 0) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])) != 0) --b;
  return s.substr(a, b - a);
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_number(const std::string& key, const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end != nullptr && std::isspace(static_cast<unsigned char>(*end)) != 0)
    ++end;
  if (end == begin || *end != '\0' || !std::isfinite(v))
    fail(ErrorKind::config,
         "config key '" + key + "' needs a finite number, got '" + text + "'");
  return v;
}

int parse_integer(const std::string& key, const std::string& text) {
  const double v = parse_number(key, text);
  if (v != std::floor(v) || std::fabs(v) > 1e9)
    fail(ErrorKind::config,
         "config key '" + key + "' needs an integer, got '" + text + "'");
  return static_cast<int>(v);
}

std::vector<double> parse_number_list(const std::string& key,
                                      const std::string& text) {
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream in(spaced);
  std::vector<double> out;
  std::string token;
  while (in >> token) out.push_back(parse_number(key, token));
  if (out.empty())
    fail(ErrorKind::config, "config key '" + key + "' needs at least one number");
  return out;
}

const char* kind_name(DomainKind kind) {
  switch (kind) {
    case DomainKind::rectangle: return "rectangle";
    case DomainKind::box: return "box";
    case DomainKind::disk: return "disk";
    case DomainKind::ball: return "ball";
  }
  return "rectangle";
}

bool is_boxlike(const Domain& dom) {
  return dom.kind == DomainKind::rectangle || dom.kind == DomainKind::box;
}

SolverConfig solver_config_for(const RunConfig& rc, double gamma1) {
  SolverConfig sc;
  sc.domain = rc.domain;
  sc.part = partition_boundary(rc.domain, gamma1, rc.face);
  sc.q = rc.q;
  sc.u0_value = rc.u0;
  sc.h = rc.h;
  sc.k = rc.k;
  sc.threshold = rc.threshold;
  sc.t_max = rc.t_max;
  sc.patch_rule = rc.patch_rule == "node-block" ? PatchRule::node_block
                                                : PatchRule::cell_share;
  return sc;
}

int bie_node_count(const RunConfig& rc) {
  const double per = rc.domain.boundary_measure();
  int nodes = static_cast<int>(std::llround(per / rc.h));
  return std::max(nodes, 8);
}

long long bie_level_count(const RunConfig& rc) {
  return std::llround(rc.t_max / rc.k);
}

// The dense per-gap kernel storage grows like levels * nodes^2, so the
// integral-equation backend rejects at load time anything that would not fit.
void check_bie_budget(const RunConfig& rc) {
  const int nodes = bie_node_count(rc);
  const long long levels = bie_level_count(rc);
  if (levels < 1)
    fail(ErrorKind::config, "bie backend needs t_max of at least one time step");
  const double cells = static_cast<double>(levels) * nodes * nodes;
  if (levels > 20000 || cells > 1.25e8)
    fail(ErrorKind::config,
         "bie backend: " + std::to_string(levels) + " time levels at " +
             std::to_string(nodes) +
             " nodes exceeds the kernel storage budget; increase h or k, or "
             "reduce t_max");
}

void validate_config(const RunConfig& cfg) {
  if (cfg.name.empty()) fail(ErrorKind::config, "config needs a non-empty name");
  if (cfg.backend != "fdm" && cfg.backend != "bie")
    fail(ErrorKind::config,
         "backend must be 'fdm' or 'bie', got '" + cfg.backend + "'");
  if (!(cfg.q > 1.0))
    fail(ErrorKind::config, "q must exceed 1, got " + fmt_g12(cfg.q));
  if (!(cfg.u0 >= 0.0)) fail(ErrorKind::config, "u0 must be nonnegative");
  if (!(cfg.h > 0.0)) fail(ErrorKind::config, "h must be positive");
  if (!(cfg.k > 0.0)) fail(ErrorKind::config, "k must be positive");
  if (!(cfg.threshold > 0.0))
    fail(ErrorKind::config, "threshold must be positive");
  if (!(cfg.t_max > 0.0)) fail(ErrorKind::config, "t_max must be positive");
  if (!(cfg.c_constant > 0.0))
    fail(ErrorKind::config, "c_constant must be positive");
  if (cfg.patch_rule != "cell-share" && cfg.patch_rule != "node-block")
    fail(ErrorKind::config,
         "patch_rule must be 'cell-share' or 'node-block', got '" +
             cfg.patch_rule + "'");
  if (cfg.backend == "bie" && cfg.patch_rule != "cell-share")
    fail(ErrorKind::config,
         "patch_rule applies to the fdm backend's grid only");

  const double per = cfg.domain.boundary_measure();
  if (cfg.gamma1 < 0.0 || cfg.gamma1 > per * (1.0 + 1e-12))
    fail(ErrorKind::config, "gamma1 = " + fmt_g12(cfg.gamma1) +
                                " lies outside [0, boundary measure = " +
                                fmt_g12(per) + "]");
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
    if (!(cfg.sweep[i] > 0.0) || cfg.sweep[i] > per * (1.0 + 1e-12))
      fail(ErrorKind::config,
           "sweep entry " + fmt_g12(cfg.sweep[i]) +
               " lies outside (0, boundary measure = " + fmt_g12(per) + "]");
    if (i > 0 && !(cfg.sweep[i] < cfg.sweep[i - 1]))
      fail(ErrorKind::config, "sweep values must be strictly decreasing");
  }

  if (cfg.backend == "fdm") {
    if (!is_boxlike(cfg.domain))
      fail(ErrorKind::config, "the fdm backend needs a rectangle or box domain");
    const double cap = cfg.h * cfg.h / (2.0 * cfg.domain.dim);
    if (cfg.k > cap * (1.0 + 1e-12))
      fail(ErrorKind::cfl, "time step k = " + fmt_g12(cfg.k) +
                               " exceeds the stability bound h^2/(2 dim) = " +
                               fmt_g12(cap));
    // Partition feasibility for every requested patch size, plus the grid
    // checks (side divisibility) on the base configuration.
    partition_boundary(cfg.domain, cfg.gamma1, cfg.face);
    for (double g : cfg.sweep) partition_boundary(cfg.domain, g, cfg.face);
    solver_config_for(cfg, cfg.gamma1).validate();
  } else {
    if (!cfg.domain.is_smooth())
      fail(ErrorKind::config, "the bie backend needs a disk or ball domain");
    partition_boundary(cfg.domain, cfg.gamma1, cfg.face);
    for (double g : cfg.sweep) partition_boundary(cfg.domain, g, cfg.face);
    check_bie_budget(cfg);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorKind::io, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorKind::io, "read error on '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::io, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out.good()) fail(ErrorKind::io, "write error on '" + path + "'");
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    fail(ErrorKind::io,
         "cannot create directory '" + dir + "': " + ec.message());
}

// Record and series files take their names from the config, so squeeze the
// name down to a portable token first.
std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (std::isalnum(static_cast<unsigned char>(c)) != 0) ||
                    c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '-');
  }
  if (out.empty()) out = "run";
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out.push_back(c);
  }
  return out;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["backend"] = cfg.backend;
  j["domain"] = kind_name(cfg.domain.kind);
  if (is_boxlike(cfg.domain)) {
    std::vector<double> sides(cfg.domain.sides.begin(),
                              cfg.domain.sides.begin() + cfg.domain.dim);
    j["sides"] = sides;
  } else {
    j["radius"] = cfg.domain.radius;
  }
  j["gamma1"] = cfg.gamma1;
  j["face"] = cfg.face;
  j["q"] = cfg.q;
  j["u0"] = cfg.u0;
  j["h"] = cfg.h;
  j["k"] = cfg.k;
  j["threshold"] = cfg.threshold;
  j["t_max"] = cfg.t_max;
  j["c_constant"] = cfg.c_constant;
  j["patch_rule"] = cfg.patch_rule;
  if (!cfg.sweep.empty()) j["sweep"] = cfg.sweep;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  cfg.name = j.at("name").get<std::string>();
  cfg.backend = j.at("backend").get<std::string>();
  const std::string kind = j.at("domain").get<std::string>();
  std::vector<double> dims;
  if (kind == "rectangle" || kind == "box")
    dims = j.at("sides").get<std::vector<double>>();
  else
    dims = {j.at("radius").get<double>()};
  cfg.domain = make_domain(kind, dims);
  cfg.gamma1 = j.at("gamma1").get<double>();
  cfg.face = j.value("face", -1);
  cfg.q = j.at("q").get<double>();
  cfg.u0 = j.at("u0").get<double>();
  cfg.h = j.at("h").get<double>();
  cfg.k = j.at("k").get<double>();
  cfg.threshold = j.at("threshold").get<double>();
  cfg.t_max = j.at("t_max").get<double>();
  cfg.c_constant = j.value("c_constant", 1.0);
  cfg.patch_rule = j.value("patch_rule", std::string("cell-share"));
  cfg.sweep = j.value("sweep", std::vector<double>{});
  return cfg;
}

json bounds_to_json(const BoundReport& rep) {
  json b;
  b["upper"] = rep.upper_applicable ? json(rep.upper) : json();
  b["lower"] = rep.lower_applicable ? json(rep.lower.value) : json();
  b["lower_vacuous"] =
      rep.lower_applicable ? json(rep.lower.vacuous) : json();
  b["whole_boundary"] =
      rep.whole_boundary_applicable ? json(rep.whole_boundary) : json();
  b["ps"] = rep.ps_applicable ? json(rep.ps) : json();
  b["ps_m"] = rep.ps_m;
  return b;
}

std::string series_csv_text(const std::vector<SeriesSample>& series,
                            double k) {
  std::ostringstream out;
  out << "step,t,M1,m1\n";
  for (const SeriesSample& s : series)
    out << std::llround(s.t / k) << ',' << fmt_g17(s.t) << ','
        << fmt_g17(s.M1) << ',' << fmt_g17(s.m1) << '\n';
  return out.str();
}

std::string chart_svg_text(const std::string& title,
                           const std::vector<SeriesSample>& series) {
  const double width = 640.0;
  const double height = 400.0;
  const double left = 64.0;
  const double right = 620.0;
  const double top = 36.0;
  const double bottom = 360.0;
  double t_max = 0.0;
  double v_max = 0.0;
  for (const SeriesSample& s : series) {
    t_max = std::max(t_max, s.t);
    v_max = std::max(v_max, s.M1);
  }
  if (t_max <= 0.0) t_max = 1.0;
  if (v_max <= 0.0) v_max = 1.0;
  const auto px = [&](double t) {
    return left + (right - left) * (t_max > 0.0 ? t / t_max : 0.0);
  };
  const auto py = [&](double v) {
    return bottom - (bottom - top) * (v_max > 0.0 ? v / v_max : 0.0);
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << left << "\" y=\"22\" font-family=\"sans-serif\" "
         "font-size=\"14\" fill=\"#222\">"
      << xml_escape(title) << "</text>\n";
  char buf[64];
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" ", left,
                bottom, right, bottom);
  out << buf << "stroke=\"#444\" stroke-width=\"1\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" ", left,
                bottom, left, top);
  out << buf << "stroke=\"#444\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << left << "\" y=\"" << bottom + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">0"
         "</text>\n";
  out << "<text x=\"" << right - 40 << "\" y=\"" << bottom + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">t = "
      << fmt_g12(t_max) << "</text>\n";
  out << "<text x=\"6\" y=\"" << bottom
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">0"
         "</text>\n";
  out << "<text x=\"6\" y=\"" << top + 4
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">"
      << fmt_g12(v_max) << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#2563eb\" stroke-width=\"1.5\" "
         "points=\"";
  for (const SeriesSample& s : series) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.t), py(s.M1));
    out << buf;
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

json record_to_json(const RunRecord& rec) {
  json j;
  j["schema_version"] = 1;
  j["name"] = rec.config.name;
  j["digest"] = rec.digest;
  j["config"] = config_to_json(rec.config);
  json out;
  out["crossed"] = rec.crossed;
  out["overflowed"] = rec.overflowed;
  out["truncated"] = rec.truncated;
  out["T0"] = rec.crossed ? json(rec.T0) : json();
  out["m1_at_T0"] = rec.crossed ? json(rec.m1_at_T0) : json();
  out["t_end"] = rec.t_end;
  out["M1_end"] = rec.M1_end;
  out["steps"] = rec.steps;
  out["series_csv"] = fs::path(rec.series_path).filename().string();
  out["chart_svg"] = fs::path(rec.chart_path).filename().string();
  j["outputs"] = out;
  j["bounds"] = bounds_to_json(rec.bounds);
  j["wall_seconds"] = rec.wall_seconds;
  return j;
}

// Runs body(0..count-1), spread over up to jobs worker threads.  The first
// exception wins and is rethrown after every worker has stopped.
void parallel_rows(std::size_t count, int jobs,
                   const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(std::max(jobs, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

// One complete run of a single-patch configuration: solve, bounds, series
// CSV, chart, record JSON.  Outputs are keyed by the config digest so a
// repeat of the same configuration overwrites its own files.
RunRecord execute_single(const RunConfig& rc, const std::string& out_dir) {
  RunRecord rec;
  rec.config = rc;
  rec.digest = config_digest(rc);
  const auto start = std::chrono::steady_clock::now();

  std::vector<SeriesSample> series;
  if (rc.backend == "fdm") {
    const SolverConfig sc = solver_config_for(rc, rc.gamma1);
    const ThresholdReport rep = run_until_threshold(sc);
    rec.crossed = rep.crossed;
    rec.overflowed = rep.overflowed;
    rec.T0 = rep.T0;
    rec.m1_at_T0 = rep.m1_at_T0;
    rec.t_end = rep.t_end;
    rec.M1_end = rep.M1_end;
    rec.steps = rep.steps;
    series = rep.series;
  } else {
    check_bie_budget(rc);
    const BoundaryPartition part =
        partition_boundary(rc.domain, rc.gamma1, rc.face);
    const int levels = static_cast<int>(bie_level_count(rc));
    const NonlinearSolveResult sol =
        solve_nonlinear_bie(rc.domain, part, rc.q, rc.u0, rc.t_max, levels,
                            bie_node_count(rc), rc.threshold);
    rec.crossed = sol.crossed;
    rec.truncated = sol.truncated;
    rec.T0 = sol.T0;
    rec.t_end = sol.t_end;
    rec.steps = static_cast<long long>(sol.times.size()) - 1;
    series.reserve(sol.times.size());
    for (std::size_t m = 0; m < sol.times.size(); ++m) {
      const auto& v = sol.boundary_values[m];
      SeriesSample s;
      s.t = sol.times[m];
      s.M1 = *std::max_element(v.begin(), v.end());
      s.m1 = *std::min_element(v.begin(), v.end());
      s.boundary_max = s.M1;
      series.push_back(s);
    }
    rec.M1_end = series.empty() ? rc.u0 : series.back().M1;
    if (rec.crossed) {
      rec.m1_at_T0 = rc.u0;
      for (std::size_t m = 1; m < series.size(); ++m) {
        if (series[m].M1 >= rc.threshold) {
          const double dt = series[m].t - series[m - 1].t;
          const double theta =
              dt > 0.0 ? (rec.T0 - series[m - 1].t) / dt : 1.0;
          rec.m1_at_T0 =
              series[m - 1].m1 + theta * (series[m].m1 - series[m - 1].m1);
          break;
        }
      }
    }
  }

  rec.bounds = evaluate_bounds(rc);
  const auto stop = std::chrono::steady_clock::now();
  rec.wall_seconds =
      std::chrono::duration<double>(stop - start).count();

  const std::string base =
      sanitize_name(rc.name) + "-" + rec.digest.substr(0, 8);
  rec.record_path = (fs::path(out_dir) / (base + ".json")).string();
  rec.series_path = (fs::path(out_dir) / (base + "-series.csv")).string();
  rec.chart_path = (fs::path(out_dir) / (base + "-M1.svg")).string();
  // Both backends advance in uniform steps of k, so the step column is t/k.
  write_text_file(rec.series_path, series_csv_text(series, rc.k));
  write_text_file(rec.chart_path, chart_svg_text(rc.name, series));
  write_text_file(rec.record_path, record_to_json(rec).dump(2) + "\n");
  return rec;
}

struct TablePreset {
  const char* table;
  int dim;
  double q;
  double h;
  double k;
  std::array<double, 4> measures;
};

const TablePreset kTablePresets[4] = {
    {"table1", 2, 2.0, 1.0 / 40, 1.25e-4, {0.5, 0.25, 0.125, 0.075}},
    {"table2", 2, 3.0, 1.0 / 40, 1.25e-4, {0.5, 0.25, 0.125, 0.075}},
    {"table3", 3, 2.0, 1.0 / 10, 1.0e-3, {0.49, 0.25, 0.16, 0.09}},
    {"table4", 3, 3.0, 1.0 / 10, 1.0e-3, {0.49, 0.25, 0.16, 0.09}},
};

std::string table_csv_text(const TableResult& res) {
  std::ostringstream out;
  out << "gamma1,T0,order,m1_at_T0,upper_bound,lower_bound_C1\n";
  for (const TableRow& row : res.rows) {
    out << fmt_g12(row.gamma1) << ',';
    out << (row.crossed ? fmt_g12(row.T0) : std::string()) << ',';
    out << (row.has_order ? fmt_g12(row.order) : std::string()) << ',';
    out << (row.crossed ? fmt_g12(row.m1_at_T0) : std::string()) << ',';
    out << fmt_g12(row.upper) << ',';
    out << fmt_g12(row.lower.value) << '\n';
  }
  return out.str();
}

json table_to_json(const TableResult& res) {
  json rows = json::array();
  for (const TableRow& row : res.rows) {
    json r;
    r["gamma1"] = row.gamma1;
    r["T0"] = row.crossed ? json(row.T0) : json();
    r["order"] = row.has_order ? json(row.order) : json();
    r["m1_at_T0"] = row.crossed ? json(row.m1_at_T0) : json();
    r["upper_bound"] = row.upper;
    r["lower_bound_C1"] = row.lower.value;
    r["lower_vacuous"] = row.lower.vacuous;
    rows.push_back(r);
  }
  json j;
  j["table"] = res.table;
  j["dim"] = res.dim;
  j["q"] = res.q;
  j["rows"] = rows;
  j["fitted_order"] = res.fitted;
  return j;
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& name_hint) {
  static const std::set<std::string> kKnownKeys = {
      "name", "backend", "domain", "sides", "radius",     "gamma1",
      "face", "q",       "u0",     "h",     "k",          "threshold",
      "t_max", "c_constant", "patch_rule", "sweep", "out"};

  std::map<std::string, std::string> kv;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.resize(cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::config, "config line " + std::to_string(lineno) +
                                  ": expected 'key = value', got '" + line +
                                  "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(ErrorKind::config, "config line " + std::to_string(lineno) +
                                  ": empty key or value");
    if (kKnownKeys.count(key) == 0)
      fail(ErrorKind::config, "unknown config key '" + key + "'");
    if (!kv.emplace(key, value).second)
      fail(ErrorKind::config, "duplicate config key '" + key + "'");
  }

  const auto has = [&](const char* key) { return kv.count(key) != 0; };
  const auto get = [&](const char* key) { return kv.at(key); };

  RunConfig cfg;
  cfg.name = has("name") ? get("name") : name_hint;
  if (cfg.name.empty()) cfg.name = "run";
  if (has("backend")) cfg.backend = get("backend");

  if (!has("domain")) fail(ErrorKind::config, "config needs a 'domain' key");
  const std::string kind = get("domain");
  if (kind == "rectangle" || kind == "box") {
    if (!has("sides"))
      fail(ErrorKind::config, "domain '" + kind + "' needs a 'sides' key");
    if (has("radius"))
      fail(ErrorKind::config, "'radius' only applies to disk and ball domains");
    const std::vector<double> sides = parse_number_list("sides", get("sides"));
    const std::size_t want = kind == "rectangle" ? 2 : 3;
    if (sides.size() != want)
      fail(ErrorKind::config, "domain '" + kind + "' needs " +
                                  std::to_string(want) + " side lengths, got " +
                                  std::to_string(sides.size()));
    cfg.domain = make_domain(kind, sides);
  } else if (kind == "disk" || kind == "ball") {
    if (!has("radius"))
      fail(ErrorKind::config, "domain '" + kind + "' needs a 'radius' key");
    if (has("sides"))
      fail(ErrorKind::config,
           "'sides' only applies to rectangle and box domains");
    cfg.domain = make_domain(kind, {parse_number("radius", get("radius"))});
  } else {
    fail(ErrorKind::config,
         "domain must be rectangle, box, disk, or ball, got '" + kind + "'");
  }

  if (has("gamma1")) cfg.gamma1 = parse_number("gamma1", get("gamma1"));
  if (has("face")) cfg.face = parse_integer("face", get("face"));
  if (has("q")) cfg.q = parse_number("q", get("q"));
  if (has("u0")) cfg.u0 = parse_number("u0", get("u0"));
  if (has("h")) cfg.h = parse_number("h", get("h"));
  if (has("k")) cfg.k = parse_number("k", get("k"));
  if (has("threshold")) cfg.threshold = parse_number("threshold", get("threshold"));
  if (has("t_max")) cfg.t_max = parse_number("t_max", get("t_max"));
  if (has("c_constant"))
    cfg.c_constant = parse_number("c_constant", get("c_constant"));
  if (has("patch_rule")) cfg.patch_rule = get("patch_rule");
  if (has("sweep")) cfg.sweep = parse_number_list("sweep", get("sweep"));
  if (has("out")) cfg.out_dir = get("out");

  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  return parse_config_text(text, fs::path(path).stem().string());
}

std::string canonical_config_text(const RunConfig& cfg) {
  std::ostringstream out;
  out << "backend=" << cfg.backend << '\n';
  out << "c_constant=" << fmt_g17(cfg.c_constant) << '\n';
  out << "domain=" << kind_name(cfg.domain.kind) << '\n';
  out << "face=" << cfg.face << '\n';
  out << "gamma1=" << fmt_g17(cfg.gamma1) << '\n';
  out << "h=" << fmt_g17(cfg.h) << '\n';
  out << "k=" << fmt_g17(cfg.k) << '\n';
  out << "name=" << cfg.name << '\n';
  out << "patch_rule=" << cfg.patch_rule << '\n';
  out << "q=" << fmt_g17(cfg.q) << '\n';
  if (is_boxlike(cfg.domain)) {
    out << "sides=";
    for (int a = 0; a < cfg.domain.dim; ++a)
      out << (a > 0 ? " " : "") << fmt_g17(cfg.domain.sides[a]);
    out << '\n';
  } else {
    out << "radius=" << fmt_g17(cfg.domain.radius) << '\n';
  }
  if (!cfg.sweep.empty()) {
    out << "sweep=";
    for (std::size_t i = 0; i < cfg.sweep.size(); ++i)
      out << (i > 0 ? " " : "") << fmt_g17(cfg.sweep[i]);
    out << '\n';
  }
  out << "t_max=" << fmt_g17(cfg.t_max) << '\n';
  out << "threshold=" << fmt_g17(cfg.threshold) << '\n';
  out << "u0=" << fmt_g17(cfg.u0) << '\n';
  return out.str();
}

std::string config_digest(const RunConfig& cfg) {
  const std::string text = canonical_config_text(cfg);
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string resolve_out_dir(const std::string& flag_value,
                            const RunConfig& cfg) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("BLOWUPLAB_OUT");
  if (env != nullptr && *env != '\0') return env;
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  return "runs";
}

BoundReport evaluate_bounds(const RunConfig& cfg) {
  BoundReport rep;
  BoundInputs in;
  in.n = cfg.domain.dim;
  in.q = cfg.q;
  in.M0 = cfg.u0;
  in.gamma1_measure = cfg.gamma1;
  in.C = cfg.c_constant;
  in.m = 2.0 * (cfg.q - 1.0);
  rep.ps_m = in.m;
  if (cfg.gamma1 > 0.0 && cfg.u0 > 0.0) {
    in.u0_integral = constant_u0_integral(cfg.domain, cfg.u0, cfg.q);
    rep.upper = upper_bound(in);
    rep.upper_applicable = true;
    rep.lower = lower_bound(in);
    rep.lower_applicable = true;
  }
  const BoundaryPartition part =
      partition_boundary(cfg.domain, cfg.gamma1, cfg.face);
  if (part.covers_whole_boundary(cfg.domain)) {
    if (cfg.u0 >= 1.0) {
      rep.whole_boundary = whole_boundary_lower_bound(in);
      rep.whole_boundary_applicable = true;
    }
    if (cfg.u0 > 0.0) {
      const double c = cfg.u0;
      const PsLowerBounds ps =
          ps_lower_bounds(in, [c](const Pt&) { return c; }, cfg.domain);
      rep.ps = cfg.domain.dim == 3 ? ps.n3 : ps.n2;
      rep.ps_applicable = true;
    }
  }
  return rep;
}

std::vector<RunRecord> run_experiment(const RunConfig& cfg,
                                      const std::string& out_dir, int jobs) {
  validate_config(cfg);
  ensure_directory(out_dir);
  std::vector<double> patch_sizes =
      cfg.sweep.empty() ? std::vector<double>{cfg.gamma1} : cfg.sweep;
  std::vector<RunRecord> records(patch_sizes.size());
  parallel_rows(patch_sizes.size(), jobs, [&](std::size_t i) {
    RunConfig rc = cfg;
    rc.gamma1 = patch_sizes[i];
    // Each record describes exactly the run it performed, so the embedded
    // config carries the row's patch size and no sweep.
    rc.sweep.clear();
    records[i] = execute_single(rc, out_dir);
  });
  return records;
}

std::string records_summary_json(const std::vector<RunRecord>& records) {
  json list = json::array();
  for (const RunRecord& rec : records) {
    json r;
    r["name"] = rec.config.name;
    r["digest"] = rec.digest;
    r["gamma1"] = rec.config.gamma1;
    r["crossed"] = rec.crossed;
    r["T0"] = rec.crossed ? json(rec.T0) : json();
    r["m1_at_T0"] = rec.crossed ? json(rec.m1_at_T0) : json();
    r["t_end"] = rec.t_end;
    r["steps"] = rec.steps;
    r["upper_bound"] =
        rec.bounds.upper_applicable ? json(rec.bounds.upper) : json();
    r["record_json"] = rec.record_path;
    r["series_csv"] = rec.series_path;
    r["chart_svg"] = rec.chart_path;
    r["wall_seconds"] = rec.wall_seconds;
    list.push_back(r);
  }
  json j;
  j["records"] = list;
  return j.dump(2) + "\n";
}

RunConfig config_from_record(const std::string& record_path,
                             std::string* digest_out) {
  const std::string text = read_text_file(record_path);
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::io,
         "record '" + record_path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("config"))
    fail(ErrorKind::io,
         "record '" + record_path + "' has no embedded config");
  RunConfig cfg;
  try {
    cfg = config_from_json(j.at("config"));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::io, "record '" + record_path +
                            "' has a malformed config: " + e.what());
  }
  if (digest_out != nullptr) *digest_out = j.value("digest", "");
  return cfg;
}

TableResult reproduce_table(int index, const std::string& out_dir, int jobs) {
  if (index < 1 || index > 4)
    fail(ErrorKind::invalid_argument, "table index must be between 1 and 4");
  const TablePreset& preset = kTablePresets[index - 1];
  ensure_directory(out_dir);

  TableResult res;
  res.table = preset.table;
  res.dim = preset.dim;
  res.q = preset.q;
  res.rows.resize(preset.measures.size());

  const Domain dom = preset.dim == 2 ? make_rectangle(1.0, 1.0)
                                     : make_box(1.0, 1.0, 1.0);
  parallel_rows(preset.measures.size(), jobs, [&](std::size_t i) {
    const double gamma1 = preset.measures[i];
    SolverConfig sc;
    sc.domain = dom;
    sc.part = partition_boundary(dom, gamma1);
    sc.q = preset.q;
    sc.u0_value = 0.05;
    sc.h = preset.h;
    sc.k = preset.k;
    sc.threshold = 10.0;
    sc.t_max = 1e6;
    // The reference tables tag patch nodes by half-open index ranges, so the
    // presets march under that rule to land on the published digits.
    sc.patch_rule = PatchRule::node_block;
    const ThresholdReport rep = run_until_threshold(sc);

    TableRow row;
    row.gamma1 = gamma1;
    row.crossed = rep.crossed;
    row.T0 = rep.T0;
    row.m1_at_T0 = rep.m1_at_T0;
    row.min_over_run = rep.min_over_run;
    BoundInputs in;
    in.n = preset.dim;
    in.q = preset.q;
    in.M0 = 0.05;
    in.gamma1_measure = gamma1;
    in.C = 1.0;
    in.u0_integral = constant_u0_integral(dom, 0.05, preset.q);
    row.upper = upper_bound(in);
    row.lower = lower_bound(in);
    res.rows[i] = row;
  });

  // Pairwise slopes between consecutive crossed rows, then the global fit.
  std::vector<std::size_t> crossed_rows;
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    if (!res.rows[i].crossed) continue;
    crossed_rows.push_back(i);
    pairs.emplace_back(res.rows[i].gamma1, res.rows[i].T0);
  }
  if (pairs.size() >= 2) {
    const std::vector<double> orders = order_estimate(pairs);
    for (std::size_t j = 0; j + 1 < crossed_rows.size(); ++j) {
      res.rows[crossed_rows[j + 1]].order = orders[j];
      res.rows[crossed_rows[j + 1]].has_order = true;
    }
    res.fitted = fitted_order(pairs);
  }

  for (const TableRow& row : res.rows) {
    if (row.crossed && !(row.T0 < row.upper))
      fail(ErrorKind::verify_fail,
           res.table + " row gamma1 = " + fmt_g12(row.gamma1) +
               ": threshold time " + fmt_g12(row.T0) +
               " is not below the upper bound " + fmt_g12(row.upper));
  }

  res.csv_path = (fs::path(out_dir) / (res.table + ".csv")).string();
  write_text_file(res.csv_path, table_csv_text(res));
  return res;
}

std::vector<TableResult> reproduce_tables(const std::string& out_dir,
                                          int jobs) {
  std::vector<TableResult> tables;
  tables.reserve(4);
  for (int index = 1; index <= 4; ++index)
    tables.push_back(reproduce_table(index, out_dir, jobs));
  write_text_file((fs::path(out_dir) / "tables.json").string(),
                  tables_summary_json(tables));
  return tables;
}

std::string tables_summary_json(const std::vector<TableResult>& tables) {
  json combined;
  combined["tables"] = json::array();
  for (const TableResult& res : tables)
    combined["tables"].push_back(table_to_json(res));
  return combined.dump(2) + "\n";
}

std::string make_report(const std::string& records_dir,
                        const std::string& out_dir) {
  if (!fs::is_directory(records_dir))
    fail(ErrorKind::io,
         "records directory '" + records_dir + "' does not exist");

  struct Entry {
    std::string name;
    std::string digest;
    double gamma1 = 0.0;
    bool crossed = false;
    double T0 = 0.0;
    double m1_at_T0 = 0.0;
    bool has_upper = false;
    double upper = 0.0;
  };
  std::map<std::pair<int, double>, std::vector<Entry>> groups;

  for (const fs::directory_entry& item : fs::directory_iterator(records_dir)) {
    if (!item.is_regular_file() || item.path().extension() != ".json")
      continue;
    json j;
    try {
      j = json::parse(read_text_file(item.path().string()));
    } catch (const std::exception&) {
      continue;  // not a record; directories may hold other JSON files
    }
    if (!j.is_object() || j.value("schema_version", 0) != 1 ||
        !j.contains("config") || !j.contains("outputs"))
      continue;
    RunConfig cfg;
    try {
      cfg = config_from_json(j.at("config"));
    } catch (const std::exception&) {
      continue;
    }
    const json& out = j.at("outputs");
    Entry e;
    e.name = cfg.name;
    e.digest = j.value("digest", "");
    e.gamma1 = cfg.gamma1;
    e.crossed = out.value("crossed", false);
    if (e.crossed && out.contains("T0") && out.at("T0").is_number()) {
      e.T0 = out.at("T0").get<double>();
      if (out.contains("m1_at_T0") && out.at("m1_at_T0").is_number())
        e.m1_at_T0 = out.at("m1_at_T0").get<double>();
    } else {
      e.crossed = false;
    }
    if (j.contains("bounds") && j.at("bounds").contains("upper") &&
        j.at("bounds").at("upper").is_number()) {
      e.upper = j.at("bounds").at("upper").get<double>();
      e.has_upper = true;
    }
    groups[{cfg.domain.dim, cfg.q}].push_back(e);
  }

  if (groups.empty())
    fail(ErrorKind::io, "no run records found in '" + records_dir + "'");

  json report;
  report["groups"] = json::array();
  std::ostringstream txt;
  std::size_t total = 0;
  for (const auto& g : groups) total += g.second.size();
  txt << "run report: " << total << " record" << (total == 1 ? "" : "s")
      << " in " << groups.size() << " group" << (groups.size() == 1 ? "" : "s")
      << "\n";

  for (auto& [key, entries] : groups) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) {
                       return a.gamma1 > b.gamma1;
                     });
    // The order fit needs one point per patch size; later duplicates of the
    // same gamma1 stay in the listing but not in the fit.
    std::vector<std::pair<double, double>> pairs;
    std::vector<const Entry*> fit_entries;
    for (const Entry& e : entries) {
      if (!e.crossed) continue;
      if (!pairs.empty() && !(e.gamma1 < pairs.back().first)) continue;
      pairs.emplace_back(e.gamma1, e.T0);
      fit_entries.push_back(&e);
    }
    std::vector<double> orders;
    bool has_fit = false;
    double fitted = 0.0;
    if (pairs.size() >= 2) {
      orders = order_estimate(pairs);
      fitted = fitted_order(pairs);
      has_fit = true;
    }
    std::map<std::string, double> order_by_digest;
    for (std::size_t j = 0; j + 1 < fit_entries.size(); ++j)
      order_by_digest[fit_entries[j + 1]->digest] = orders[j];

    json rows = json::array();
    txt << "\ndim=" << key.first << " q=" << fmt_g12(key.second) << ": "
        << entries.size() << " record" << (entries.size() == 1 ? "" : "s")
        << "\n";
    char line[160];
    std::snprintf(line, sizeof line, "  %-12s %-12s %-10s %-12s %-12s %s\n",
                  "gamma1", "T0", "order", "m1_at_T0", "upper", "name");
    txt << line;
    for (const Entry& e : entries) {
      json r;
      r["name"] = e.name;
      r["digest"] = e.digest;
      r["gamma1"] = e.gamma1;
      r["T0"] = e.crossed ? json(e.T0) : json();
      r["m1_at_T0"] = e.crossed ? json(e.m1_at_T0) : json();
      r["upper_bound"] = e.has_upper ? json(e.upper) : json();
      const auto it = order_by_digest.find(e.digest);
      const bool has_order = e.crossed && it != order_by_digest.end();
      r["order"] = has_order ? json(it->second) : json();
      rows.push_back(r);
      std::snprintf(line, sizeof line, "  %-12s %-12s %-10s %-12s %-12s %s\n",
                    fmt_g12(e.gamma1).c_str(),
                    e.crossed ? fmt_g12(e.T0).c_str() : "-",
                    has_order ? fmt_g12(it->second).c_str() : "-",
                    e.crossed ? fmt_g12(e.m1_at_T0).c_str() : "-",
                    e.has_upper ? fmt_g12(e.upper).c_str() : "-",
                    e.name.c_str());
      txt << line;
    }
    json group;
    group["dim"] = key.first;
    group["q"] = key.second;
    group["rows"] = rows;
    group["fitted_order"] = has_fit ? json(fitted) : json();
    report["groups"].push_back(group);
    if (has_fit) txt << "  fitted order: " << fmt_g12(fitted) << "\n";
  }

  ensure_directory(out_dir);
  const std::string json_text = report.dump(2) + "\n";
  write_text_file((fs::path(out_dir) / "report.json").string(), json_text);
  write_text_file((fs::path(out_dir) / "report.txt").string(), txt.str());
  return json_text;
}

std::vector<SuiteResult> run_verify_command(const std::string& suite,
                                            const std::string& out_dir,
                                            std::string* json_text) {
  const std::vector<SuiteResult> suites = run_verification(suite);
  json doc;
  doc["suite"] = suite;
  bool all = true;
  json parts = json::array();
  for (const SuiteResult& s : suites) {
    json checks = json::array();
    for (const CheckResult& c : s.checks) {
      json e;
      e["name"] = c.name;
      e["value"] = c.value;
      e["target"] = c.target;
      e["tolerance"] = c.tolerance;
      e["passed"] = c.passed;
      e["detail"] = c.detail;
      checks.push_back(e);
    }
    json part;
    part["suite"] = s.suite;
    part["passed"] = s.all_passed();
    part["checks"] = checks;
    parts.push_back(part);
    all = all && s.all_passed();
  }
  doc["passed"] = all;
  doc["suites"] = parts;
  ensure_directory(out_dir);
  const std::string text = doc.dump(2) + "\n";
  write_text_file((fs::path(out_dir) / ("verify-" + suite + ".json")).string(),
                  text);
  if (json_text != nullptr) *json_text = text;
  return suites;
}

std::string bounds_json(const RunConfig& cfg) {
  validate_config(cfg);
  const BoundReport rep = evaluate_bounds(cfg);
  json j;
  j["name"] = cfg.name;
  j["digest"] = config_digest(cfg);
  j["dim"] = cfg.domain.dim;
  j["q"] = cfg.q;
  j["u0"] = cfg.u0;
  j["gamma1"] = cfg.gamma1;
  j["c_constant"] = cfg.c_constant;
  j["bounds"] = bounds_to_json(rep);
  return j.dump(2) + "\n";
}

}  // namespace blowup
