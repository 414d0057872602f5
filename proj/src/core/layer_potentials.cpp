#include "core/layer_potentials.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/heat_kernel.hpp"
#include "core/volume.hpp"

namespace blowup {
namespace {

// Finite limit of (z . n(x)) / |z|^2 as z -> 0 along the boundary; zero on
// the flat faces of a rectangle or box.
double curvature_half(const Domain& dom) {
  return dom.is_smooth() ? 1.0 / (2.0 * dom.radius) : 0.0;
}

double pow_q(double v, double q) {
  if (q == 2.0) return v * v;
  if (q == 3.0) return v * v * v;
  return std::pow(v, q);
}

void require_smooth(const Domain& dom, const char* op) {
  if (!dom.is_smooth())
    fail(ErrorKind::unsupported,
         std::string(op) + " requires a disk or ball domain");
}

// Dense per-gap matrices of the exact time-panel kernel integrals.  With
// uniform levels the panel [t_{j-1}, t_j] seen from level m depends only on
// the gap g = m - j, so one matrix per gap serves the whole march.  Row i of
// gap g holds, per column j,
//   -2 w_j [ int_{g dt}^{(g+1) dt} (DPhi)(x_i - y_j, s) . n(x_i) ds
//            + beta_i int_{g dt}^{(g+1) dt} Phi(x_i - y_j, s) ds ]
// in layer mode, or w_j int Phi in trace mode.  The diagonal uses the closed
// self-panel limits.  Gaps are appended on demand so an early stop never pays
// for the unused tail.
class KernelCache {
 public:
  enum class Mode { layer, trace };

  KernelCache(const Domain& dom, const BoundaryQuadrature& quad, double dt,
              std::vector<double> beta, Mode mode)
      : quad_(quad),
        beta_(std::move(beta)),
        dt_(dt),
        kappa_half_(curvature_half(dom)),
        n_(quad.dim),
        mode_(mode) {}

  std::size_t size() const { return quad_.size(); }

  const double* gap(std::size_t g) {
    while (built_ <= g) append_gap();
    return data_.data() + g * size() * size();
  }

 private:
  void append_gap() {
    const std::size_t N = size();
    const double s1 = static_cast<double>(built_) * dt_;
    const double s2 = s1 + dt_;
    data_.resize(data_.size() + N * N);
    double* block = data_.data() + built_ * N * N;
    for (std::size_t i = 0; i < N; ++i) {
      const Pt& xi = quad_.nodes[i];
      const Pt& ni = quad_.normals[i];
      const double bi = beta_.empty() ? 0.0 : beta_[i];
      for (std::size_t j = 0; j < N; ++j) {
        const double w = quad_.weights[j];
        double entry;
        if (mode_ == Mode::trace) {
          entry = (i == j)
                      ? phi_time_integral_self_average(w, s1, s2, n_)
                      : phi_time_integral(dist2(xi, quad_.nodes[j]), s1, s2, n_);
          entry *= w;
        } else {
          double core;
          if (i == j) {
            core = dphi_normal_time_integral_limit(kappa_half_, s1, s2, n_);
            if (bi != 0.0)
              core += bi * phi_time_integral_self_average(w, s1, s2, n_);
          } else {
            Pt z = sub(xi, quad_.nodes[j]);
            const double r2 = norm2sq(z, n_);
            core = dphi_normal_time_integral(dot(z, ni, n_), r2, s1, s2, n_);
            if (bi != 0.0) core += bi * phi_time_integral(r2, s1, s2, n_);
          }
          entry = -2.0 * w * core;
        }
        block[i * N + j] = entry;
      }
    }
    ++built_;
  }

  static double dist2(const Pt& a, const Pt& b) {
    Pt z = sub(a, b);
    return norm2sq(z, 3);
  }

  const BoundaryQuadrature& quad_;
  std::vector<double> beta_;
  double dt_;
  double kappa_half_;
  int n_;
  Mode mode_;
  std::vector<double> data_;
  std::size_t built_ = 0;
};

// hist_i += sum_{g=1}^{m-1} sum_j M_g[i][j] value[m-g][j].
void accumulate_history(KernelCache& ker,
                        const std::vector<std::vector<double>>& value,
                        std::size_t m, std::vector<double>& hist) {
  const std::size_t N = ker.size();
  for (std::size_t g = 1; g < m; ++g) {
    const double* block = ker.gap(g);
    const std::vector<double>& past = value[m - g];
    for (std::size_t i = 0; i < N; ++i) {
      const double* row = block + i * N;
      double acc = 0.0;
      for (std::size_t j = 0; j < N; ++j) acc += row[j] * past[j];
      hist[i] += acc;
    }
  }
}

// Fixed-point sweeps for phi = C0 phi + rhs at one level.  Returns false if
// the update has not contracted to 1e-10 (relative to the value scale) within
// the iteration cap.
bool sweep_level(const double* C0, std::size_t N, const std::vector<double>& rhs,
                 std::vector<double>& phi) {
  std::vector<double> next(N);
  for (int it = 0; it < 50; ++it) {
    double diff = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double* row = C0 + i * N;
      double acc = rhs[i];
      for (std::size_t j = 0; j < N; ++j) acc += row[j] * phi[j];
      next[i] = acc;
      diff = std::max(diff, std::abs(acc - phi[i]));
      scale = std::max(scale, std::abs(acc));
    }
    phi.swap(next);
    if (!std::isfinite(diff)) return false;
    if (diff <= 1e-10 * scale) return true;
  }
  return false;
}

void check_march_sizes(double T, int levels, int nodes) {
  if (!(T > 0.0)) fail(ErrorKind::invalid_argument, "final time must be positive");
  if (levels < 1)
    fail(ErrorKind::invalid_argument, "need at least one time level");
  if (nodes < 8)
    fail(ErrorKind::invalid_argument, "need at least 8 boundary nodes");
}

}  // namespace

double single_layer(const Domain& dom, const BoundaryQuadrature& quad,
                    const BoundaryDensity& density, const Pt& x, double t) {
  (void)dom;
  const std::size_t N = quad.size();
  const std::size_t M = density.levels();
  if (M < 1 || density.dt <= 0.0)
    fail(ErrorKind::invalid_argument, "density has no time levels");
  if (density.values[0].size() != N)
    fail(ErrorKind::invalid_argument,
         "density node count does not match the quadrature");
  const double dt = density.dt;
  if (!(t > 0.0) || t > static_cast<double>(M) * dt * (1.0 + 1e-9))
    fail(ErrorKind::invalid_argument,
         "evaluation time outside the density's level range");

  // Node index x coincides with, if any; that panel gets the flat average.
  std::size_t self = N;
  const double tol = 1e-9 * std::max(1.0, quad.spacing);
  for (std::size_t j = 0; j < N; ++j) {
    if (dist(x, quad.nodes[j], quad.dim) < tol) {
      self = j;
      break;
    }
  }

  double total = 0.0;
  for (std::size_t lev = 1; lev <= M; ++lev) {
    const double lo = static_cast<double>(lev - 1) * dt;
    if (lo >= t - 1e-12 * dt) break;
    const double hi = std::min(static_cast<double>(lev) * dt, t);
    const double s1 = t - hi;
    const double s2 = t - lo;
    const std::vector<double>& val = density.values[lev];
    for (std::size_t j = 0; j < N; ++j) {
      const double w = quad.weights[j];
      double kernel;
      if (j == self) {
        kernel = phi_time_integral_self_average(w, s1, s2, quad.dim);
      } else {
        Pt z = sub(x, quad.nodes[j]);
        kernel = phi_time_integral(norm2sq(z, quad.dim), s1, s2, quad.dim);
      }
      total += w * kernel * val[j];
    }
  }
  return total;
}

double apply_kernel(const Domain& dom, const BoundaryQuadrature& quad,
                    const BoundaryDensity& density,
                    const std::vector<double>& beta, std::size_t i,
                    std::size_t level) {
  const std::size_t N = quad.size();
  if (i >= N) fail(ErrorKind::invalid_argument, "node index out of range");
  if (level < 1 || level > density.levels())
    fail(ErrorKind::invalid_argument, "level index out of range");
  if (!beta.empty() && beta.size() != N)
    fail(ErrorKind::invalid_argument,
         "beta sample count does not match the quadrature");
  KernelCache ker(dom, quad, density.dt, beta, KernelCache::Mode::layer);
  double acc = 0.0;
  for (std::size_t g = 0; g < level; ++g) {
    const double* row = ker.gap(g) + i * N;
    const std::vector<double>& past = density.values[level - g];
    for (std::size_t j = 0; j < N; ++j) acc += row[j] * past[j];
  }
  return acc;
}

LinearSolveResult solve_linear_bie(const Domain& dom,
                                   const BoundaryPartition& part,
                                   const LinearBVPData& data, double T,
                                   int levels, int nodes) {
  require_smooth(dom, "the integral-equation march");
  check_march_sizes(T, levels, nodes);
  if (!data.g) fail(ErrorKind::invalid_argument, "boundary data g is required");
  if (!data.psi)
    fail(ErrorKind::invalid_argument, "initial field psi is required");
  for (int d = 0; d < dom.dim; ++d) {
    if (!(data.psi_box_lo[d] < dom.box_lo()[d] &&
          data.psi_box_hi[d] > dom.box_hi()[d]))
      fail(ErrorKind::invalid_argument,
           "enclosing box must strictly contain the closed domain");
  }

  LinearSolveResult out;
  out.quad = boundary_quadrature(dom, part, nodes);
  const BoundaryQuadrature& quad = out.quad;
  const std::size_t N = quad.size();
  if (!data.beta.empty() && data.beta.size() != N)
    fail(ErrorKind::invalid_argument,
         "beta sample count does not match the quadrature");

  const double dt = T / levels;
  const int n = quad.dim;

  // Free term per level and node:
  //   H = 2 g - 2 d/dn [initial potential of psi] - 2 beta [initial potential].
  // Six panels per axis resolve the smooth initial fields this march accepts;
  // the precompute runs nodes x levels of these integrals, so the default
  // rule would dominate the whole solve.
  const int kFreeTermPanels = 6;
  auto free_term = [&](std::size_t i, double t) {
    const Pt& xi = quad.nodes[i];
    double h = 2.0 * data.g(xi, t) -
               2.0 * box_dphi_normal(data.psi_box_lo, data.psi_box_hi, n,
                                     data.psi, xi, quad.normals[i], t,
                                     kFreeTermPanels);
    if (!data.beta.empty() && data.beta[i] != 0.0)
      h -= 2.0 * data.beta[i] *
           box_potential(data.psi_box_lo, data.psi_box_hi, n, data.psi, xi, t,
                         kFreeTermPanels);
    return h;
  };

  BoundaryDensity& density = out.density;
  density.dt = dt;
  density.values.assign(static_cast<std::size_t>(levels) + 1,
                        std::vector<double>(N, 0.0));
  // Level 0 carries the short-time limit of the free term, which the panel
  // quadrature itself never touches.
  const double t_small = dt * 1e-6;
  for (std::size_t i = 0; i < N; ++i)
    density.values[0][i] = free_term(i, t_small);

  KernelCache ker(dom, quad, dt, data.beta, KernelCache::Mode::layer);
  std::vector<double> rhs(N);
  for (std::size_t m = 1; m <= static_cast<std::size_t>(levels); ++m) {
    const double t = static_cast<double>(m) * dt;
    for (std::size_t i = 0; i < N; ++i) rhs[i] = free_term(i, t);
    accumulate_history(ker, density.values, m, rhs);
    density.values[m] = density.values[m - 1];
    if (!sweep_level(ker.gap(0), N, rhs, density.values[m]))
      fail(ErrorKind::solver_fault,
           "fixed-point sweep failed to contract at level " + std::to_string(m));
  }
  return out;
}

double linear_solution_value(const Domain& dom, const LinearBVPData& data,
                             const LinearSolveResult& sol, const Pt& x,
                             double t) {
  double u = box_potential(data.psi_box_lo, data.psi_box_hi, sol.quad.dim,
                           data.psi, x, t);
  u += single_layer(dom, sol.quad, sol.density, x, t);
  return u;
}

NonlinearSolveResult solve_nonlinear_bie(const Domain& dom,
                                         const BoundaryPartition& part,
                                         double q, double u0, double T,
                                         int levels, int nodes,
                                         double threshold) {
  require_smooth(dom, "the integral-equation march");
  check_march_sizes(T, levels, nodes);
  if (!(q > 1.0))
    fail(ErrorKind::invalid_argument, "flux exponent q must exceed 1");
  if (u0 < 0.0)
    fail(ErrorKind::invalid_argument, "initial value must be nonnegative");
  if (!(threshold > 0.0))
    fail(ErrorKind::invalid_argument, "threshold must be positive");

  NonlinearSolveResult out;
  out.quad = boundary_quadrature(dom, part, nodes);
  const BoundaryQuadrature& quad = out.quad;
  const std::size_t N = quad.size();
  const double dt = T / levels;
  out.density.dt = dt;
  out.density.values.assign(1, std::vector<double>(N, 0.0));
  out.boundary_values.assign(1, std::vector<double>(N, u0));
  out.times.assign(1, 0.0);

  // A constant initial field extends to all of space with zero normal
  // derivative and unit initial potential, so the free term reduces to the
  // boundary flux and the trace to u0 plus the single layer.
  for (std::size_t i = 0; i < N; ++i)
    out.density.values[0][i] =
        2.0 * quad.gamma1_fraction[i] * pow_q(u0, q);

  if (u0 >= threshold) {
    out.crossed = true;
    out.T0 = 0.0;
    return out;
  }

  KernelCache flux_ker(dom, quad, dt, {}, KernelCache::Mode::layer);
  KernelCache trace_ker(dom, quad, dt, {}, KernelCache::Mode::trace);

  std::vector<double> hist(N), shist(N), g_vals(N), rhs(N), v_next(N);
  double prev_max = u0;
  for (std::size_t m = 1; m <= static_cast<std::size_t>(levels); ++m) {
    hist.assign(N, 0.0);
    shist.assign(N, 0.0);
    accumulate_history(flux_ker, out.density.values, m, hist);
    accumulate_history(trace_ker, out.density.values, m, shist);

    std::vector<double> phi = out.density.values[m - 1];
    std::vector<double> v = out.boundary_values[m - 1];
    const double* C0 = flux_ker.gap(0);
    const double* D0 = trace_ker.gap(0);
    bool converged = false;
    for (int it = 0; it < 50 && !converged; ++it) {
      for (std::size_t i = 0; i < N; ++i)
        g_vals[i] = quad.gamma1_fraction[i] * pow_q(v[i], q);
      for (std::size_t i = 0; i < N; ++i) rhs[i] = 2.0 * g_vals[i] + hist[i];
      double diff = 0.0;
      double scale = 1.0;
      std::vector<double> phi_next(N);
      for (std::size_t i = 0; i < N; ++i) {
        const double* row = C0 + i * N;
        double acc = rhs[i];
        for (std::size_t j = 0; j < N; ++j) acc += row[j] * phi[j];
        phi_next[i] = acc;
        diff = std::max(diff, std::abs(acc - phi[i]));
      }
      for (std::size_t i = 0; i < N; ++i) {
        const double* row = D0 + i * N;
        double acc = u0 + shist[i];
        for (std::size_t j = 0; j < N; ++j) acc += row[j] * phi_next[j];
        v_next[i] = acc;
        diff = std::max(diff, std::abs(acc - v[i]));
        scale = std::max(scale, std::abs(acc));
      }
      phi.swap(phi_next);
      v = v_next;
      if (!std::isfinite(diff)) break;
      converged = diff <= 1e-10 * scale;
    }
    if (!converged) {
      out.truncated = true;
      break;
    }

    out.density.values.push_back(phi);
    out.boundary_values.push_back(v);
    const double t = static_cast<double>(m) * dt;
    out.times.push_back(t);
    out.t_end = t;

    const double mx = *std::max_element(v.begin(), v.end());
    if (mx >= threshold) {
      out.crossed = true;
      double theta = 1.0;
      if (mx > prev_max)
        theta = std::clamp((threshold - prev_max) / (mx - prev_max), 0.0, 1.0);
      out.T0 = t - dt + theta * dt;
      break;
    }
    prev_max = mx;
  }
  return out;
}

JumpResult jump_check(const Domain& dom, const BoundaryQuadrature& quad,
                      const NodeTimeFn& phi, const Pt& x, double t,
                      const std::vector<double>& h_seq, int time_levels) {
  if (!(t > 0.0)) fail(ErrorKind::invalid_argument, "time must be positive");
  if (h_seq.size() < 2)
    fail(ErrorKind::invalid_argument, "need at least two offsets");
  for (double h : h_seq)
    if (!(h > 0.0))
      fail(ErrorKind::invalid_argument, "offsets must be positive");
  if (time_levels < 1)
    fail(ErrorKind::invalid_argument, "need at least one time level");
  if (!phi) fail(ErrorKind::invalid_argument, "density is required");

  const std::size_t N = quad.size();
  const int n = quad.dim;
  std::size_t ix = N;
  for (std::size_t j = 0; j < N; ++j) {
    if (dist(x, quad.nodes[j], n) < 1e-9 * std::max(1.0, quad.spacing)) {
      ix = j;
      break;
    }
  }
  if (ix == N)
    fail(ErrorKind::invalid_argument,
         "evaluation point must be a quadrature node");
  const Pt& nx = quad.normals[ix];
  const double dt = t / time_levels;
  const double kappa_half = curvature_half(dom);

  // Offset or on-boundary value of the normal-kernel integral with the
  // density frozen at each panel's right endpoint.  self < N marks the node
  // whose panel takes the closed-form limit.
  auto integral_at = [&](const Pt& p, std::size_t self) {
    double total = 0.0;
    for (int lev = 1; lev <= time_levels; ++lev) {
      // The final panel must reach s1 = 0 exactly so the closed-form limit
      // takes its jump branch.
      const double s1 = (lev == time_levels) ? 0.0 : t - lev * dt;
      const double s2 = t - (lev - 1) * dt;
      const double tau = lev * dt;
      for (std::size_t j = 0; j < N; ++j) {
        double kernel;
        if (j == self) {
          kernel = dphi_normal_time_integral_limit(kappa_half, s1, s2, n);
        } else {
          Pt z = sub(p, quad.nodes[j]);
          kernel = dphi_normal_time_integral(dot(z, nx, n), norm2sq(z, n), s1,
                                             s2, n);
        }
        total += quad.weights[j] * kernel * phi(j, tau);
      }
    }
    return total;
  };

  JumpResult out;
  out.offsets = h_seq;
  for (double h : h_seq) {
    Pt xh = normal_offset(dom, x, h);
    out.values.push_back(integral_at(xh, N));
  }
  for (std::size_t k = 2; k < out.values.size(); ++k) {
    const double d1 = out.values[k - 1] - out.values[k - 2];
    const double d2 = out.values[k] - out.values[k - 1];
    if (d1 * d2 < 0.0)
      fail(ErrorKind::verify_fail,
           "offset integrals are not monotone in h; the boundary rule is "
           "under-resolved for this extrapolation");
  }
  out.extrapolated_limit = fit_line(out.offsets, out.values).intercept;
  out.direct_integral = integral_at(x, ix);
  out.jump = out.extrapolated_limit - out.direct_integral;
  return out;
}

}  // namespace blowup
