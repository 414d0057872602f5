// Explicit forward-Euler finite differences for the heat equation on a
// rectangle or box, with the power-law Neumann flux u^q applied on a face
// patch through second-order ghost mirrors.  Provides threshold-time
// detection, discrete balance and weak-form residuals, and lockstep
// comparison of ordered runs.
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "core/geometry.hpp"
#include "core/volume.hpp"

namespace blowup {

// How boundary nodes acquire their flux share.  cell_share resolves a patch
// edge through the node's dual cell, so an edge landing on a node contributes
// a partial weight (see interface_coeff); node_block instead tags whole nodes
// by the half-open interval [edge_lo, edge_hi), the convention of index-range
// patch loops, which shifts the block half a cell when an edge sits on a
// node.  The two rules coincide whenever the patch edges fall between nodes.
enum class PatchRule { cell_share, node_block };

struct SolverConfig {
  Domain domain;  // rectangle (2-D) or box (3-D)
  BoundaryPartition part;
  double q = 2.0;
  double u0_value = 0.05;  // constant initial data
  SpaceFn u0;              // optional field initial data; overrides u0_value
  SpaceFn source;          // optional interior source, default none
  double h = 1.0 / 40;
  double k = 0.2 / 1600;
  double threshold = 10.0;
  double t_max = 1e6;
  PatchRule patch_rule = PatchRule::cell_share;
  // Flux weight at patch-edge nodes under cell_share: 0.5 uses the exact
  // share of the node's dual cell inside the patch (1/2 on an edge, 1/4 at a
  // box-face corner); 0 and 1 round that share down/up to the nearest of
  // {0, 1}.  Ignored by node_block, which has no partial nodes.
  double interface_coeff = 0.5;

  // Checks parameter ranges, the CFL restriction k <= h^2/(2 dim), and that
  // h divides every side length.
  void validate() const;
};

struct GridState {
  double t = 0.0;
  long long step_index = 0;
  int dim = 2;
  std::array<int, 3> npts = {0, 0, 1};  // nodes per axis ([2] stays 1 in 2-D)
  std::vector<double> u;                // row-major, axis 0 slowest
};

struct SeriesSample {
  double t = 0.0;
  double M1 = 0.0;  // max over all nodes
  double m1 = 0.0;  // min over all nodes
  double boundary_max = 0.0;
};

struct BalanceSample {
  double t = 0.0;
  double mass = 0.0;           // trapezoid-weighted integral of u
  double flux_integral = 0.0;  // int_0^t int_Gamma1 u^q dS dtau
};

struct ThresholdReport {
  bool crossed = false;
  bool overflowed = false;  // hit the 1e6 guard before reaching the threshold
  double T0 = 0.0;          // interpolated crossing time (valid when crossed)
  double m1_at_T0 = 0.0;    // interpolated min at the crossing
  double t_end = 0.0;
  double M1_end = 0.0;
  double m1_end = 0.0;
  double min_over_run = 0.0;  // smallest value seen at any node of any step
  long long steps = 0;
  std::vector<SeriesSample> series;
  std::vector<BalanceSample> balance;
};

GridState make_initial_state(const SolverConfig& cfg);

// One forward-Euler update of the 5-point (2-D) or 7-point (3-D) stencil with
// ghost closures u_ghost = u_mirror + 2h * flux at the step's start values.
GridState step(const GridState& s, const SolverConfig& cfg);

struct RunOptions {
  // Series recording stride in steps; 0 keeps a bounded self-decimating
  // series of at most a few thousand samples.
  long long series_stride = 0;
  // Times at which to record (mass, flux integral) pairs; enables the
  // per-step flux accumulation.
  std::vector<double> balance_times;
};

// Marches until max u reaches the threshold (T0 linearly interpolated
// between the bracketing steps) or t_max runs out.
ThresholdReport run_until_threshold(const SolverConfig& cfg,
                                    const RunOptions& opt = {});

// Residuals of the integrated balance identity between consecutive samples:
// [mass(t2) - mass(t1)] - [flux(t2) - flux(t1)], normalized by mass(t2).
std::vector<double> mass_balance_residuals(
    const std::vector<BalanceSample>& samples);

// Smooth space-time test function with the derivative samples the weak-form
// identity needs.
struct TestFunction {
  std::function<double(const Pt&, double)> value;
  std::function<double(const Pt&, double)> dt;
  std::function<double(const Pt&, double)> laplacian;
  // (x, t, outward face normal); evaluated face-wise so domain corners are
  // visited once per adjoining face.
  std::function<double(const Pt&, double, const Pt&)> normal_derivative;
};

// Discrete gap |LHS - RHS| of the identity
//   int_0^T int (phi_t + lap phi) u = [int phi u]_0^T
//     - int_0^T int_Gamma1 phi u^q dS + int_0^T int_bdry u dphi/dn dS
// for a fresh run of cfg over [0, t_end].
double weak_form_residual(const SolverConfig& cfg, const TestFunction& phi,
                          double t_end);

struct DominanceVerdict {
  bool holds = true;
  long long step = -1;  // first violating step (-1 when holds)
  std::size_t node = 0;
  double value_a = 0.0;
  double value_b = 0.0;
  double t_end = 0.0;  // time actually compared up to
};

// Marches two configs on identical grids in lockstep and checks
// u_a >= u_b - 1e-12 at every node of every step until t_end.
DominanceVerdict compare_runs(const SolverConfig& a, const SolverConfig& b,
                              double t_end);

}  // namespace blowup
