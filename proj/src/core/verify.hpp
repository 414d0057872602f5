// Verification suites.  Each check measures one quantity, compares it with a
// target under a tolerance, and records the outcome; a suite bundles the
// checks for one area of the library so the runner and the tests can share
// them.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace blowup {

struct CheckResult {
  std::string name;
  double value = 0.0;      // measured quantity
  double target = 0.0;     // what it should be
  double tolerance = 0.0;  // allowed absolute deviation (0 means strict bound)
  bool passed = false;
  std::string detail;  // extra context, mainly for failures
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::size_t failure_count() const;
};

// Fundamental-solution identities: unit mass, the gradient formula, the
// boundary defect ratio, the short-time boundary heat limit, and boundedness
// of the merging-singularity integrals.
SuiteResult verify_kernels();

// Normal-derivative jump of the double-layer-type integral: half the density
// at interior patch points, a quarter at the interface, and the flat-face
// closed form.
SuiteResult verify_jumps();

// Integral-equation march: manufactured-solution convergence, causality,
// contraction margin of the within-level kernel, nonlinear flux behavior, and
// Robin sign preservation.
SuiteResult verify_bie();

// Representation formulas against the integral-equation solution they should
// reproduce, plus the short-time half-trace limit of the initial potential.
SuiteResult verify_representation();

// Finite-difference march: positivity, mass balance, comparison principles,
// the stability guard, and the interior identity residual.
SuiteResult verify_fdm_properties();

// name selects one suite (kernels, jumps, bie, representation,
// fdm-properties) or "all".  Unknown names fail with invalid_argument.
std::vector<SuiteResult> run_verification(const std::string& name);

}  // namespace blowup
