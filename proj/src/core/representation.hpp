// Reconstruction of the solution from its recorded boundary trace: the
// interior formula (initial potential plus flux single layer plus double
// layer), the doubled on-boundary identity, and the short-time limit of the
// initial potential.
#pragma once

#include <vector>

#include "core/geometry.hpp"
#include "core/layer_potentials.hpp"
#include "core/num.hpp"
#include "core/volume.hpp"

namespace blowup {

// Boundary values of a solution on quadrature nodes at uniform time levels,
// together with the data the representation formulas need: the flux exponent
// and the initial field (defined on the closed domain).
struct SolutionTrace {
  BoundaryQuadrature quad;
  double dt = 0.0;
  double q = 2.0;
  SpaceFn u0;
  std::vector<std::vector<double>> values;  // [level][node]

  std::size_t levels() const { return values.empty() ? 0 : values.size() - 1; }
};

// Packages the boundary values of an integral-equation run as a trace.
SolutionTrace trace_from_solve(const NonlinearSolveResult& sol, double q,
                               double u0);

struct RepresentationValue {
  double value = 0.0;
  // x lies within one panel width of the boundary, where the panel rule for
  // the near-singular layers loses accuracy.
  bool near_boundary = false;
};

// u(x, t) for x strictly inside the domain:
//   initial potential of u0
//   + int_0^t int_{Gamma1} Phi(x - y, t - tau) u^q dS dtau
//   + int_0^t int_{boundary} (DPhi)(x - y, t - tau) . n(y) u dS dtau
// with the trace frozen at each panel's right endpoint.  t must lie on or
// between the trace's time levels.
RepresentationValue interior_representation(const Domain& dom,
                                            const SolutionTrace& trace,
                                            const Pt& x, double t);

// The same three terms doubled, with the double layer taken as a principal
// value, valid for x on the boundary; the result should reproduce u(x, t).
// x must coincide with a quadrature node.
double boundary_representation(const Domain& dom, const SolutionTrace& trace,
                               const Pt& x, double t);

// Short-time limit of the initial potential at a boundary point: evaluates it
// at each time in t_seq and extrapolates t -> 0 with a straight-line fit in
// sqrt(t).  Against a continuous u0 the limit is u0(x) / 2 on a smooth
// boundary.
double initial_trace_limit(const Domain& dom, const SpaceFn& u0, const Pt& x,
                           const std::vector<double>& t_seq);

}  // namespace blowup
