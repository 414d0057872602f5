#include "core/representation.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "core/errors.hpp"
#include "core/heat_kernel.hpp"

namespace blowup {
namespace {

double pow_q(double v, double q) {
  if (q == 2.0) return v * v;
  if (q == 3.0) return v * v * v;
  return std::pow(v, q);
}

void check_trace(const SolutionTrace& trace, double t) {
  if (trace.levels() < 1 || trace.dt <= 0.0)
    fail(ErrorKind::invalid_argument, "trace has no time levels");
  if (trace.values[0].size() != trace.quad.size())
    fail(ErrorKind::invalid_argument,
         "trace node count does not match its quadrature");
  if (!trace.u0)
    fail(ErrorKind::invalid_argument, "trace is missing the initial field");
  const double span = static_cast<double>(trace.levels()) * trace.dt;
  if (!(t > 0.0) || t > span * (1.0 + 1e-9))
    fail(ErrorKind::invalid_argument,
         "evaluation time outside the trace's level range");
}

// Layer terms of the representation at x: flux single layer over Gamma1 plus
// the double layer over the whole boundary, both with right-endpoint frozen
// trace values.  self < N marks a node coinciding with x, whose panels take
// the closed-form singular treatments.
double layer_terms(const Domain& dom, const SolutionTrace& trace, const Pt& x,
                   double t, std::size_t self) {
  const BoundaryQuadrature& quad = trace.quad;
  const std::size_t N = quad.size();
  const int n = quad.dim;
  const double dt = trace.dt;
  // Limit of (z . n_y)/r^2 as the source node approaches x along a circle or
  // sphere: the boundary bends away from the chord, so the source-normal
  // kernel sees -kappa/2 (the field-normal kernel of the flux march sees the
  // opposite sign).
  const double kappa_half = dom.is_smooth() ? -1.0 / (2.0 * dom.radius) : 0.0;

  double total = 0.0;
  for (std::size_t lev = 1; lev <= trace.levels(); ++lev) {
    const double lo = static_cast<double>(lev - 1) * dt;
    if (lo >= t - 1e-12 * dt) break;
    const double hi = std::min(static_cast<double>(lev) * dt, t);
    const double s1 = t - hi;
    const double s2 = t - lo;
    const std::vector<double>& u = trace.values[lev];
    for (std::size_t j = 0; j < N; ++j) {
      const double w = quad.weights[j];
      double sl, dl;
      if (j == self) {
        sl = phi_time_integral_self_average(w, s1, s2, n);
        dl = dphi_normal_time_integral_limit(kappa_half, s1, s2, n);
      } else {
        Pt z = sub(x, quad.nodes[j]);
        const double r2 = norm2sq(z, n);
        sl = phi_time_integral(r2, s1, s2, n);
        dl = dphi_normal_time_integral(dot(z, quad.normals[j], n), r2, s1, s2,
                                       n);
      }
      total += w * (quad.gamma1_fraction[j] * sl * pow_q(u[j], trace.q) +
                    dl * u[j]);
    }
  }
  return total;
}

std::size_t find_node(const BoundaryQuadrature& quad, const Pt& x) {
  const double tol = 1e-9 * std::max(1.0, quad.spacing);
  for (std::size_t j = 0; j < quad.size(); ++j)
    if (dist(x, quad.nodes[j], quad.dim) < tol) return j;
  return quad.size();
}

}  // namespace

SolutionTrace trace_from_solve(const NonlinearSolveResult& sol, double q,
                               double u0) {
  SolutionTrace trace;
  trace.quad = sol.quad;
  trace.dt = sol.density.dt;
  trace.q = q;
  trace.u0 = [u0](const Pt&) { return u0; };
  trace.values = sol.boundary_values;
  return trace;
}

RepresentationValue interior_representation(const Domain& dom,
                                            const SolutionTrace& trace,
                                            const Pt& x, double t) {
  check_trace(trace, t);
  if (!dom.contains(x) || dom.boundary_distance(x) <= 0.0)
    fail(ErrorKind::invalid_argument,
         "evaluation point must lie strictly inside the domain");
  RepresentationValue out;
  out.near_boundary = dom.boundary_distance(x) < trace.quad.spacing;
  out.value = initial_potential(dom, trace.u0, x, t) +
              layer_terms(dom, trace, x, t, trace.quad.size());
  return out;
}

double boundary_representation(const Domain& dom, const SolutionTrace& trace,
                               const Pt& x, double t) {
  check_trace(trace, t);
  const std::size_t self = find_node(trace.quad, x);
  if (self == trace.quad.size())
    fail(ErrorKind::invalid_argument,
         "evaluation point must be a quadrature node");
  return 2.0 * (initial_potential(dom, trace.u0, x, t) +
                layer_terms(dom, trace, x, t, self));
}

double initial_trace_limit(const Domain& dom, const SpaceFn& u0, const Pt& x,
                           const std::vector<double>& t_seq) {
  if (!u0) fail(ErrorKind::invalid_argument, "initial field is required");
  if (t_seq.size() < 2)
    fail(ErrorKind::invalid_argument, "need at least two sample times");
  std::vector<double> roots, vals;
  roots.reserve(t_seq.size());
  vals.reserve(t_seq.size());
  for (double t : t_seq) {
    if (!(t > 0.0))
      fail(ErrorKind::invalid_argument, "sample times must be positive");
    roots.push_back(std::sqrt(t));
    vals.push_back(initial_potential(dom, u0, x, t));
  }
  return fit_line(roots, vals).intercept;
}

}  // namespace blowup
