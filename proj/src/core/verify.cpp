#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "core/fdm.hpp"
#include "core/geometry.hpp"
#include "core/heat_kernel.hpp"
#include "core/layer_potentials.hpp"
#include "core/num.hpp"
#include "core/representation.hpp"
#include "core/volume.hpp"

namespace blowup {
namespace {

constexpr double kPi = M_PI;

CheckResult check_close(const std::string& name, double value, double target,
                        double tol, const std::string& detail = "") {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.target = target;
  c.tolerance = tol;
  c.passed = std::isfinite(value) && std::abs(value - target) <= tol;
  c.detail = detail;
  return c;
}

// One-sided checks; target records the bound and tolerance stays 0.
CheckResult check_below(const std::string& name, double value, double bound,
                        const std::string& detail = "") {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.target = bound;
  c.passed = std::isfinite(value) && value < bound;
  c.detail = detail.empty() ? "value must stay below the target" : detail;
  return c;
}

CheckResult check_above(const std::string& name, double value, double bound,
                        const std::string& detail = "") {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.target = bound;
  c.passed = std::isfinite(value) && value > bound;
  c.detail = detail.empty() ? "value must stay above the target" : detail;
  return c;
}

CheckResult check_flag(const std::string& name, bool ok, double value,
                       const std::string& detail) {
  CheckResult c;
  c.name = name;
  c.value = value;
  c.target = 1.0;
  c.passed = ok;
  c.detail = detail;
  return c;
}

const double kTwoSqrtPi = 3.54490770181103205;

// Reference values of the merging-singularity products
// |x-z|^(1/2) int_B |x-y|^(-3/4) |y-z|^(-3/4) dS on the unit circle, for
// separation angles 2^-k, k = 1..8; the products approach a finite limit as
// the points merge.
const double kMergingProducts[8] = {16.72755375, 17.06276014, 17.30684745,
                                    17.48127428, 17.60508236, 17.69274754,
                                    17.75476645, 17.79862795};

// Straight-line extrapolation h -> 0 of the flat-face offset integrals
// J(h) = erfc(h / (2 sqrt(t))) / 2 over the same offset ladder the disk
// checks use; the on-boundary integrand vanishes identically there.
double flat_face_extrapolation(double t, double h0, int count) {
  std::vector<double> hs(count), js(count);
  for (int i = 0; i < count; ++i) {
    hs[i] = h0 * std::pow(2.0, -i);
    js[i] = 0.5 * std::erfc(hs[i] / (2.0 * std::sqrt(t)));
  }
  return fit_line(hs, js).intercept;
}

SpaceFn constant_field(double c) {
  return [c](const Pt&) { return c; };
}

std::size_t nearest_node(const BoundaryQuadrature& quad, const Pt& x) {
  std::size_t best = 0;
  double bd = dist(x, quad.nodes[0], quad.dim);
  for (std::size_t j = 1; j < quad.size(); ++j) {
    const double d = dist(x, quad.nodes[j], quad.dim);
    if (d < bd) {
      bd = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

bool SuiteResult::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.passed) return false;
  return true;
}

std::size_t SuiteResult::failure_count() const {
  std::size_t n = 0;
  for (const CheckResult& c : checks)
    if (!c.passed) ++n;
  return n;
}

SuiteResult verify_kernels() {
  SuiteResult suite;
  suite.suite = "kernels";

  {
    const Pt lo2 = pt(-10.0, -10.0), hi2 = pt(10.0, 10.0);
    const double m2 =
        box_potential(lo2, hi2, 2, constant_field(1.0), pt(0.1, -0.2), 0.25);
    suite.checks.push_back(
        check_close("fundamental-solution-mass-2d", m2, 1.0, 1e-8));
    Pt lo3 = pt(-10.0, -10.0, -10.0), hi3 = pt(10.0, 10.0, 10.0);
    const double m3 = box_potential(lo3, hi3, 3, constant_field(1.0),
                                    pt(0.1, -0.2, 0.05), 0.25, 12);
    suite.checks.push_back(
        check_close("fundamental-solution-mass-3d", m3, 1.0, 1e-8));
  }

  for (int n : {2, 3}) {
    const Pt zs[3] = {pt(0.3, 0.2, 0.1), pt(1.0, -0.5, 0.4), pt(-1.4, 0.8, -0.6)};
    double worst = 0.0;
    for (const Pt& z : zs) {
      for (double t : {0.05, 0.5}) {
        const Pt g = grad_phi(z, t, n);
        const double dh = 1e-5;
        for (int a = 0; a < n; ++a) {
          Pt zp = z, zm = z;
          zp[a] += dh;
          zm[a] -= dh;
          const double fd = (phi(zp, t, n) - phi(zm, t, n)) / (2.0 * dh);
          worst = std::max(worst, std::abs(g[a] - fd));
        }
      }
    }
    suite.checks.push_back(check_close(
        n == 2 ? "gradient-identity-2d" : "gradient-identity-3d", worst, 0.0,
        1e-6, "max deviation from centered differences"));
  }

  {
    const Domain disk = make_disk(0.7, pt(0.3, -0.2));
    const Domain ball = make_ball(0.9, pt(-0.1, 0.2, 0.4));
    double worst = 0.0;
    const double angs[3][2] = {{0.0, 0.3}, {1.0, 2.5}, {2.0, 2.1}};
    for (const auto& a : angs) {
      const Pt x = pt(0.3 + 0.7 * std::cos(a[0]), -0.2 + 0.7 * std::sin(a[0]));
      const Pt y = pt(0.3 + 0.7 * std::cos(a[1]), -0.2 + 0.7 * std::sin(a[1]));
      worst = std::max(worst,
                       std::abs(geom_defect(disk, x, y).ratio - 1.0 / 1.4));
    }
    suite.checks.push_back(
        check_close("geometry-defect-circle", worst, 0.0, 1e-12));
    worst = 0.0;
    const double sph[3][4] = {{0.2, 0.4, 1.3, 2.2}, {1.1, 2.0, 0.4, 0.9},
                              {2.4, 1.1, 1.8, 2.9}};
    for (const auto& a : sph) {
      const Pt x = pt(-0.1 + 0.9 * std::sin(a[0]) * std::cos(a[1]),
                      0.2 + 0.9 * std::sin(a[0]) * std::sin(a[1]),
                      0.4 + 0.9 * std::cos(a[0]));
      const Pt y = pt(-0.1 + 0.9 * std::sin(a[2]) * std::cos(a[3]),
                      0.2 + 0.9 * std::sin(a[2]) * std::sin(a[3]),
                      0.4 + 0.9 * std::cos(a[2]));
      worst = std::max(worst,
                       std::abs(geom_defect(ball, x, y).ratio - 1.0 / 1.8));
    }
    suite.checks.push_back(
        check_close("geometry-defect-sphere", worst, 0.0, 1e-12));
  }

  {
    const Domain disk = make_disk(0.7, pt(0.3, -0.2));
    const Pt xb = pt(0.3 + 0.7 * std::cos(0.3), -0.2 + 0.7 * std::sin(0.3));
    const SurfaceHeatIntegral s2 = surface_heat_integral(disk, xb, 1e-4);
    suite.checks.push_back(check_close(
        "boundary-heat-limit-2d", s2.value, kTwoSqrtPi, 1e-3,
        s2.under_resolved ? "rule reported under-resolution" : ""));
    const Domain ball = make_ball(0.9, pt(0.0, 0.0, 0.0));
    const Pt yb = pt(0.9 * std::sin(1.1) * std::cos(0.4),
                     0.9 * std::sin(1.1) * std::sin(0.4), 0.9 * std::cos(1.1));
    const SurfaceHeatIntegral s3 = surface_heat_integral(ball, yb, 1e-4);
    suite.checks.push_back(check_close(
        "boundary-heat-limit-3d", s3.value, 4.0 * kPi, 4.0 * kPi * 1e-3,
        s3.under_resolved ? "rule reported under-resolution" : ""));
  }

  {
    const Domain disk = make_disk(1.0);
    const Pt x = pt(1.0, 0.0);
    double max_product = 0.0, max_dev = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double sep = std::pow(2.0, -k);
      const Pt z = pt(std::cos(sep), std::sin(sep));
      const double integral = singular_surface_integral(disk, x, z, 0.75, 0.75);
      const double product = integral * std::sqrt(dist(x, z, 2));
      max_product = std::max(max_product, product);
      max_dev = std::max(max_dev, std::abs(product - kMergingProducts[k - 1]));
    }
    suite.checks.push_back(check_below(
        "merging-singularity-bounded", max_product, 20.0,
        "products must stay bounded as the singular points merge"));
    suite.checks.push_back(
        check_close("merging-singularity-reference", max_dev, 0.0, 0.05,
                    "max deviation from the reference products"));
    const double inv_sqrt =
        singular_surface_integral(disk, x, pt(-1.0, 0.0), 0.5, 0.0);
    suite.checks.push_back(check_close("circle-inverse-sqrt-integral", inv_sqrt,
                                       7.4162987092054877, 1e-5));
  }

  return suite;
}

SuiteResult verify_jumps() {
  SuiteResult suite;
  suite.suite = "jumps";
  const Domain dom = make_disk(1.0);
  const BoundaryPartition part = partition_boundary(dom, kPi);
  const BoundaryQuadrature quad = boundary_quadrature(dom, part, 512);
  const double t = 0.5;
  std::vector<double> hs(5);
  for (int i = 0; i < 5; ++i) hs[i] = 0.32 * std::pow(2.0, -i);
  const NodeTimeFn density = [&quad](std::size_t j, double) {
    return quad.gamma1_fraction[j];
  };

  const Pt mid = quad.nodes[nearest_node(quad, pt(-1.0, 0.0))];
  const JumpResult jm = jump_check(dom, quad, density, mid, t, hs, 1);
  suite.checks.push_back(check_close("patch-midpoint-jump", jm.jump, 0.5, 0.01,
                                     "half the density inside the patch"));

  const Pt iface = quad.nodes[nearest_node(quad, part.interface_points(dom)[0])];
  const JumpResult ji = jump_check(dom, quad, density, iface, t, hs, 1);
  suite.checks.push_back(check_close("interface-jump", ji.jump, 0.25, 0.01,
                                     "half the one-sided mean at the interface"));

  const double flat = flat_face_extrapolation(t, 0.32, 5);
  suite.checks.push_back(check_close("flat-face-jump", flat, 0.5, 1e-3,
                                     "closed-form half-space face"));
  return suite;
}

SuiteResult verify_bie() {
  SuiteResult suite;
  suite.suite = "bie";
  const Domain dom = make_disk(1.0);
  const BoundaryPartition none = partition_boundary(dom, 0.0);

  {
    // Manufactured solution: a free-space kernel centered outside the domain,
    // started at its own initial slice restricted to the enclosing box.
    const Pt x0 = pt(1.5, 0.0);
    const double t0 = 0.1;
    LinearBVPData data;
    data.psi = [x0, t0](const Pt& y) { return phi(sub(y, x0), t0, 2); };
    data.g = [x0, t0](const Pt& x, double t) {
      return dot(grad_phi(sub(x, x0), t + t0, 2), x, 2);
    };
    data.psi_box_lo = pt(-2.0, -2.0);
    data.psi_box_hi = pt(2.0, 2.0);
    const double T = 0.5;
    const Pt samples[5] = {pt(0.0, 0.0), pt(0.5, 0.1), pt(-0.4, 0.3),
                           pt(0.2, -0.6), pt(0.6, 0.5)};
    const int sizes[3][2] = {{32, 50}, {64, 100}, {128, 200}};
    double errs[3] = {0.0, 0.0, 0.0};
    for (int lv = 0; lv < 3; ++lv) {
      const LinearSolveResult sol =
          solve_linear_bie(dom, none, data, T, sizes[lv][1], sizes[lv][0]);
      double num = 0.0, den = 0.0;
      for (const Pt& x : samples) {
        for (double t : {0.5 * T, T}) {
          const double exact = phi(sub(x, x0), t + t0, 2);
          const double got = linear_solution_value(dom, data, sol, x, t);
          num = std::max(num, std::abs(got - exact));
          den = std::max(den, std::abs(exact));
        }
      }
      errs[lv] = num / den;
    }
    suite.checks.push_back(check_close(
        "manufactured-solution-error", errs[2], 0.0, 0.02,
        "max relative interior error at the finest march"));
    const double worst_ratio =
        std::min(errs[0] / errs[1], errs[1] / errs[2]);
    suite.checks.push_back(check_above(
        "manufactured-error-decreasing", worst_ratio, 1.0,
        "error must drop at every simultaneous refinement"));
  }

  {
    // Causality: changing the data after a time only moves the density after
    // that time.
    LinearBVPData data;
    data.psi = constant_field(0.0);
    data.psi_box_lo = pt(-2.0, -2.0);
    data.psi_box_hi = pt(2.0, 2.0);
    data.g = [](const Pt& x, double t) { return 0.3 + 0.1 * x[0] + t; };
    const LinearSolveResult a = solve_linear_bie(dom, none, data, 0.3, 12, 24);
    data.g = [](const Pt& x, double t) {
      return 0.3 + 0.1 * x[0] + t + (t > 0.2 ? 1.0 : 0.0);
    };
    const LinearSolveResult b = solve_linear_bie(dom, none, data, 0.3, 12, 24);
    double early = 0.0;
    for (std::size_t m = 0; m <= 8; ++m)
      for (std::size_t i = 0; i < a.quad.size(); ++i)
        early = std::max(early, std::abs(a.density.values[m][i] -
                                         b.density.values[m][i]));
    suite.checks.push_back(check_close(
        "causality", early, 0.0, 0.0,
        "density below the perturbation time must be untouched"));
  }

  {
    // Contraction margin of the within-level kernel action.
    const BoundaryQuadrature quad = boundary_quadrature(dom, none, 64);
    BoundaryDensity ones;
    ones.dt = 0.01;
    ones.values.assign(2, std::vector<double>(quad.size(), 1.0));
    double row_sum = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i)
      row_sum = std::max(row_sum,
                         std::abs(apply_kernel(dom, quad, ones, {}, i, 1)));
    suite.checks.push_back(check_below(
        "within-level-contraction", row_sum, 1.0,
        "sup row sum of the within-level kernel must contract"));
  }

  {
    const BoundaryPartition full = partition_boundary(dom, 2.0 * kPi);
    const NonlinearSolveResult grow =
        solve_nonlinear_bie(dom, full, 2.0, 0.05, 2.0, 100, 32, 1e9);
    double min_inc = 0.0;
    bool first = true;
    for (std::size_t m = 1; m < grow.boundary_values.size(); ++m)
      for (std::size_t i = 0; i < grow.quad.size(); ++i) {
        const double inc =
            grow.boundary_values[m][i] - grow.boundary_values[m - 1][i];
        if (first || inc < min_inc) min_inc = inc;
        first = false;
      }
    suite.checks.push_back(check_above(
        "nonlinear-monotone-growth", min_inc, -1e-10,
        "boundary values must not decrease under pure outflux of heat"));

    const NonlinearSolveResult still =
        solve_nonlinear_bie(dom, none, 2.0, 0.05, 2.0, 100, 32, 1e9);
    double drift = 0.0;
    for (const auto& lev : still.boundary_values)
      for (double v : lev) drift = std::max(drift, std::abs(v - 0.05));
    suite.checks.push_back(check_close(
        "nonlinear-empty-patch-constant", drift, 0.0, 1e-13,
        "with no flux patch the solution stays at its initial value"));

    const BoundaryPartition half = partition_boundary(dom, kPi);
    const NonlinearSolveResult fast =
        solve_nonlinear_bie(dom, full, 2.0, 0.05, 12.0, 600, 48, 0.07);
    const NonlinearSolveResult slow =
        solve_nonlinear_bie(dom, half, 2.0, 0.05, 12.0, 600, 48, 0.07);
    std::string detail = "whole-boundary flux must cross first";
    bool ok = fast.crossed && slow.crossed && fast.T0 < slow.T0;
    if (!fast.crossed || !slow.crossed) detail = "a march missed the threshold";
    suite.checks.push_back(check_flag("nonlinear-patch-ordering", ok,
                                      slow.T0 - fast.T0, detail));
  }

  {
    // Robin problem with nonnegative data keeps a nonnegative solution.
    LinearBVPData data;
    data.psi = constant_field(0.1);
    data.psi_box_lo = pt(-2.0, -2.0);
    data.psi_box_hi = pt(2.0, 2.0);
    data.g = [](const Pt&, double) { return 0.05; };
    data.beta.assign(32, 0.5);
    const LinearSolveResult sol = solve_linear_bie(dom, none, data, 0.4, 40, 32);
    double min_u = 1e300;
    const Pt pts[4] = {pt(0.0, 0.0), pt(0.5, 0.0), pt(0.0, -0.7),
                       pt(-0.3, 0.3)};
    for (const Pt& x : pts)
      for (double t : {0.2, 0.4})
        min_u = std::min(min_u, linear_solution_value(dom, data, sol, x, t));
    suite.checks.push_back(check_above(
        "robin-sign-preservation", min_u, -1e-10,
        "nonnegative data must keep the solution nonnegative"));
  }

  return suite;
}

SuiteResult verify_representation() {
  SuiteResult suite;
  suite.suite = "representation";
  const Domain dom = make_disk(1.0);
  const BoundaryPartition half = partition_boundary(dom, kPi);
  const NonlinearSolveResult sol =
      solve_nonlinear_bie(dom, half, 2.0, 0.05, 2.0, 200, 64, 1e9);
  const SolutionTrace trace = trace_from_solve(sol, 2.0, 0.05);
  const double t = 1.5;

  {
    const Pt pts[6] = {pt(0.0, 0.0),  pt(0.5, 0.0),  pt(-0.5, 0.0),
                       pt(0.0, 0.5),  pt(0.0, -0.5), pt(-0.3, 0.4)};
    double num = 0.0, den = 0.0;
    for (const Pt& x : pts) {
      const double direct =
          0.05 + single_layer(dom, sol.quad, sol.density, x, t);
      const double rep = interior_representation(dom, trace, x, t).value;
      num = std::max(num, std::abs(rep - direct));
      den = std::max(den, std::abs(direct));
    }
    suite.checks.push_back(check_close(
        "interior-self-consistency", num / den, 0.0, 0.03,
        "representation vs the march's own evaluation"));
  }

  {
    double num = 0.0, den = 0.0;
    const std::size_t lev = 150;  // t = 1.5 with dt = 0.01
    for (std::size_t i = 0; i < sol.quad.size(); i += 8) {
      const double direct = sol.boundary_values[lev][i];
      const double rep = boundary_representation(dom, trace, sol.quad.nodes[i], t);
      num = std::max(num, std::abs(rep - direct));
      den = std::max(den, std::abs(direct));
    }
    suite.checks.push_back(check_close(
        "boundary-self-consistency", num / den, 0.0, 0.03,
        "doubled on-boundary identity vs the recorded trace"));
  }

  {
    const double lim = initial_trace_limit(
        dom, constant_field(1.0), pt(1.0, 0.0), {1e-3, 2.5e-3, 5e-3, 1e-2});
    suite.checks.push_back(check_close(
        "initial-half-trace", lim, 0.5, 1e-3,
        "short-time boundary limit of the initial potential"));
  }

  {
    const RepresentationValue near =
        interior_representation(dom, trace, pt(0.99, 0.0), t);
    suite.checks.push_back(check_flag(
        "near-boundary-flag", near.near_boundary, near.near_boundary ? 1 : 0,
        "points within a panel width must be flagged"));
  }

  return suite;
}

SuiteResult verify_fdm_properties() {
  SuiteResult suite;
  suite.suite = "fdm-properties";
  const Domain square = make_rectangle(1.0, 1.0);

  SolverConfig base;
  base.domain = square;
  base.part = partition_boundary(square, 0.5);
  base.q = 2.0;
  base.u0_value = 0.05;
  base.h = 1.0 / 20;
  base.k = 0.2 * base.h * base.h;
  base.threshold = 0.1;
  base.t_max = 1e4;

  ThresholdReport rise;
  {
    rise = run_until_threshold(base);
    suite.checks.push_back(check_above(
        "positivity-preserved", rise.min_over_run, 0.05 - 1e-12,
        rise.crossed ? "smallest value over the whole run"
                     : "march missed the threshold"));
    const double frac = rise.crossed ? (rise.t_end - rise.T0) / base.k : -1.0;
    suite.checks.push_back(check_flag(
        "threshold-interpolation", rise.crossed && frac >= 0.0 && frac <= 1.0,
        frac, "T0 must interpolate the bracketing steps"));
    suite.checks.push_back(check_below(
        "series-bounded", static_cast<double>(rise.series.size()), 8200.0,
        "recorded series must stay within its decimation cap"));
  }

  {
    SolverConfig cfg = base;
    cfg.part = partition_boundary(square, 0.0);
    cfg.threshold = 1e9;
    cfg.t_max = 1.0;
    RunOptions opt;
    opt.balance_times = {0.25, 0.5, 1.0};
    const ThresholdReport rep = run_until_threshold(cfg, opt);
    const std::vector<double> res = mass_balance_residuals(rep.balance);
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, std::abs(r));
    suite.checks.push_back(check_close(
        "closed-box-balance", worst, 0.0, 1e-12,
        "with no flux patch the balance must close to rounding"));
  }

  {
    double worst[2] = {0.0, 0.0};
    for (int lv = 0; lv < 2; ++lv) {
      SolverConfig cfg = base;
      cfg.h = (lv == 0) ? 1.0 / 20 : 1.0 / 40;
      cfg.k = 0.2 * cfg.h * cfg.h;
      cfg.threshold = 1e9;
      cfg.t_max = 0.5;
      RunOptions opt;
      opt.balance_times = {0.25, 0.5};
      const ThresholdReport rep = run_until_threshold(cfg, opt);
      for (double r : mass_balance_residuals(rep.balance))
        worst[lv] = std::max(worst[lv], std::abs(r));
    }
    suite.checks.push_back(check_above(
        "balance-residual-refinement", worst[0] / worst[1], 2.0,
        "flux-quadrature residual must shrink under grid halving"));
  }

  {
    SolverConfig with_src = base;
    with_src.source = constant_field(0.05);
    const DominanceVerdict v = compare_runs(with_src, base, 0.5);
    suite.checks.push_back(check_flag(
        "source-dominance", v.holds, v.holds ? 0.0 : v.value_b - v.value_a,
        "adding interior heat must not lower any node"));
    SolverConfig richer = base;
    richer.u0_value = 0.08;
    const DominanceVerdict w = compare_runs(richer, base, 0.5);
    suite.checks.push_back(check_flag(
        "initial-data-dominance", w.holds, w.holds ? 0.0 : w.value_b - w.value_a,
        "larger initial data must dominate"));
  }

  {
    SolverConfig bad = base;
    bad.k = bad.h * bad.h / 4.0 * 1.05;
    bool caught = false;
    try {
      bad.validate();
    } catch (const Error& e) {
      caught = e.kind() == ErrorKind::cfl;
    }
    suite.checks.push_back(check_flag(
        "cfl-guard", caught, caught ? 1 : 0,
        "a time step over the stability bound must be rejected"));
  }

  {
    TestFunction phi;
    phi.value = [](const Pt& x, double t) {
      return (1.0 + 0.3 * x[0] + x[0] * x[0]) *
             (1.0 - 0.2 * x[1] + x[1] * x[1]) * (1.0 + 0.5 * t);
    };
    phi.dt = [](const Pt& x, double) {
      return (1.0 + 0.3 * x[0] + x[0] * x[0]) *
             (1.0 - 0.2 * x[1] + x[1] * x[1]) * 0.5;
    };
    phi.laplacian = [](const Pt& x, double t) {
      return 2.0 * ((1.0 - 0.2 * x[1] + x[1] * x[1]) +
                    (1.0 + 0.3 * x[0] + x[0] * x[0])) *
             (1.0 + 0.5 * t);
    };
    phi.normal_derivative = [](const Pt& x, double t, const Pt& n) {
      const double fx = 0.3 + 2.0 * x[0];
      const double gy = -0.2 + 2.0 * x[1];
      return ((fx * (1.0 - 0.2 * x[1] + x[1] * x[1])) * n[0] +
              ((1.0 + 0.3 * x[0] + x[0] * x[0]) * gy) * n[1]) *
             (1.0 + 0.5 * t);
    };
    double res[2] = {0.0, 0.0};
    for (int lv = 0; lv < 2; ++lv) {
      SolverConfig cfg = base;
      cfg.h = (lv == 0) ? 1.0 / 20 : 1.0 / 40;
      cfg.k = 0.2 * cfg.h * cfg.h;
      res[lv] = weak_form_residual(cfg, phi, 0.25);
    }
    suite.checks.push_back(check_above(
        "weak-identity-refinement", res[0] / res[1], 2.0,
        "interior identity residual must shrink under grid halving"));
  }

  return suite;
}

std::vector<SuiteResult> run_verification(const std::string& name) {
  std::vector<SuiteResult> out;
  if (name == "kernels" || name == "all") out.push_back(verify_kernels());
  if (name == "jumps" || name == "all") out.push_back(verify_jumps());
  if (name == "bie" || name == "all") out.push_back(verify_bie());
  if (name == "representation" || name == "all")
    out.push_back(verify_representation());
  if (name == "fdm-properties" || name == "all")
    out.push_back(verify_fdm_properties());
  if (out.empty())
    fail(ErrorKind::invalid_argument, "unknown verification suite: " + name);
  return out;
}

}  // namespace blowup
