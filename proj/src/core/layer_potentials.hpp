// Single-layer heat potentials on a panel quadrature and the Volterra
// boundary-integral solvers built from them: the linear Neumann/Robin march,
// the nonlinear boundary-flux march, and the normal-derivative jump check.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "core/geometry.hpp"
#include "core/num.hpp"
#include "core/volume.hpp"

namespace blowup {

// Boundary density sampled on the nodes of a BoundaryQuadrature at uniform
// time levels t_m = m * dt.  values[m][i] is the density at node i and level
// m; level 0 holds the short-time limit and is never touched by the product
// integration, which freezes each density at the right endpoint of its panel.
struct BoundaryDensity {
  double dt = 0.0;
  std::vector<std::vector<double>> values;

  std::size_t levels() const { return values.empty() ? 0 : values.size() - 1; }
};

// Density evaluator indexed by quadrature node, used where a plain space-time
// function cannot express interface conventions (node i, time tau).
using NodeTimeFn = std::function<double(std::size_t, double)>;

// Data for the linear problem u_t = Laplace u, u(.,0) = psi,
// du/dn + beta u = g on the boundary.  The volume term is supported only as
// identically zero.  psi must be defined on the whole enclosing box
// [psi_box_lo, psi_box_hi], which has to contain the closed domain strictly;
// beta is sampled per quadrature node and held constant in time (empty means
// beta = 0).
struct LinearBVPData {
  std::function<double(const Pt&, double)> g;
  std::vector<double> beta;
  SpaceFn psi;
  Pt psi_box_lo = pt(0, 0);
  Pt psi_box_hi = pt(0, 0);
};

struct LinearSolveResult {
  BoundaryQuadrature quad;
  BoundaryDensity density;
};

struct NonlinearSolveResult {
  BoundaryQuadrature quad;
  BoundaryDensity density;  // boundary flux density phi
  // Boundary trace v = u restricted to the nodes, same layout as density.
  std::vector<std::vector<double>> boundary_values;
  std::vector<double> times;  // t_m for each stored level
  bool crossed = false;       // boundary max reached the threshold
  bool truncated = false;     // fixed-point sweeps stopped contracting
  double T0 = 0.0;            // interpolated crossing time when crossed
  double t_end = 0.0;         // last completed level
};

struct JumpResult {
  double extrapolated_limit = 0.0;  // h -> 0 value of the offset integrals
  double direct_integral = 0.0;     // principal-value integral on the boundary
  double jump = 0.0;                // extrapolated_limit - direct_integral
  std::vector<double> offsets;      // the h sequence actually used
  std::vector<double> values;       // offset integral at each h
};

// Single-layer potential of the density at (x, t): the sum over time panels
// and nodes of the exact panel integrals of Phi, with the density frozen at
// each panel's right endpoint.  t must lie in (0, levels * dt]; a final
// partial panel is handled exactly.  When x coincides with a quadrature node
// the singular panel uses the flat-panel average of the kernel.
double single_layer(const Domain& dom, const BoundaryQuadrature& quad,
                    const BoundaryDensity& density, const Pt& x, double t);

// Action of the Volterra kernel on the density at node i and level m:
// int_0^{t_m} int_B K(x_i, t_m; y, tau) phi(y, tau) dS dtau with
// K = -2 [ (grad Phi)(x - y, t - tau) . n(x) + beta(x) Phi(x - y, t - tau) ].
// Pass an empty beta for the pure Neumann kernel.
double apply_kernel(const Domain& dom, const BoundaryQuadrature& quad,
                    const BoundaryDensity& density,
                    const std::vector<double>& beta, std::size_t i,
                    std::size_t level);

// Marches the linear problem to time T with the given number of uniform time
// levels and boundary nodes.  Smooth domains only.  Fails with solver_fault
// if a per-level fixed-point sweep does not contract.
LinearSolveResult solve_linear_bie(const Domain& dom,
                                   const BoundaryPartition& part,
                                   const LinearBVPData& data, double T,
                                   int levels, int nodes);

// Solution values of a linear solve: initial potential of psi over the
// enclosing box plus the single layer of the computed density.  Valid for x
// inside the domain or on its boundary (boundary points must be nodes).
double linear_solution_value(const Domain& dom, const LinearBVPData& data,
                             const LinearSolveResult& sol, const Pt& x,
                             double t);

// Marches u_t = Laplace u, u(.,0) = u0 (constant), du/dn = u^q on Gamma1 and
// 0 elsewhere (half weight at the interface), stopping when the boundary
// trace reaches the threshold, the level count is exhausted, or the inner
// sweeps stop contracting near blow-up (reported, not thrown).
NonlinearSolveResult solve_nonlinear_bie(const Domain& dom,
                                         const BoundaryPartition& part,
                                         double q, double u0, double T,
                                         int levels, int nodes,
                                         double threshold);

// Normal-derivative jump of the double-layer-type integral
// J(x') = int_0^t int_B (grad Phi)(x' - y, t - tau) . n(x) phi(y, tau) dS dtau
// as x' = x - h n(x) approaches the boundary node x along the inward normal:
// evaluates J at each offset in h_seq, extrapolates h -> 0 by a straight-line
// fit, and compares with the principal-value integral at x itself.  The time
// integral uses time_levels uniform panels (right-endpoint freezing), which is
// exact for densities constant in time.  Fails with verify_fail when the
// offset values are not monotone in h, the sign of an under-resolved rule.
JumpResult jump_check(const Domain& dom, const BoundaryQuadrature& quad,
                      const NodeTimeFn& phi, const Pt& x, double t,
                      const std::vector<double>& h_seq, int time_levels = 64);

}  // namespace blowup
