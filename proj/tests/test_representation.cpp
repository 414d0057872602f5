#include <cmath>
#include <cstddef>

#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "core/layer_potentials.hpp"
#include "core/representation.hpp"
#include "doctest.h"

using namespace blowup;

TEST_CASE("short-time boundary limit of the initial potential") {
  const Domain disk = make_disk(1.0);
  const SpaceFn tilted = [](const Pt& y) { return 1.0 + 0.5 * y[0]; };
  const std::vector<double> times = {1e-3, 2.5e-3, 5e-3, 1e-2};

  // a smooth field leaves half its boundary value in the limit
  const double lim = initial_trace_limit(disk, tilted, pt(1.0, 0.0), times);
  CHECK(lim == doctest::Approx(0.75).epsilon(5e-3));

  CHECK_THROWS_AS(initial_trace_limit(disk, tilted, pt(1.0, 0.0), {1e-3}),
                  Error);
  CHECK_THROWS_AS(
      initial_trace_limit(disk, tilted, pt(1.0, 0.0), {0.0, 1e-3}), Error);
}

TEST_CASE("trace plumbing, guards, and the doubled identity") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition half = partition_boundary(disk, M_PI);
  const NonlinearSolveResult sol =
      solve_nonlinear_bie(disk, half, 2.0, 0.05, 0.4, 40, 32, 1e9);
  const SolutionTrace trace = trace_from_solve(sol, 2.0, 0.05);
  CHECK(trace.levels() == 40);
  CHECK(trace.dt == doctest::Approx(0.01).epsilon(1e-14));

  // evaluation beyond the recorded span, outside the domain, or off the node
  // set is refused
  CHECK_THROWS_AS(interior_representation(disk, trace, pt(0.0, 0.0), 0.9),
                  Error);
  CHECK_THROWS_AS(interior_representation(disk, trace, pt(2.0, 0.0), 0.2),
                  Error);
  CHECK_THROWS_AS(boundary_representation(disk, trace, pt(0.123, 0.456), 0.2),
                  Error);

  // with this weak flux the solution barely moves off its initial level
  const RepresentationValue center =
      interior_representation(disk, trace, pt(0.0, 0.0), 0.4);
  CHECK(!center.near_boundary);
  CHECK(center.value == doctest::Approx(0.05).epsilon(0.02));

  const RepresentationValue rim =
      interior_representation(disk, trace, pt(0.95, 0.0), 0.4);
  CHECK(rim.near_boundary);

  // the doubled on-boundary formula reproduces the march's own trace
  for (std::size_t i = 0; i < sol.quad.size(); i += 5) {
    const double direct = sol.boundary_values[40][i];
    const double rep =
        boundary_representation(disk, trace, sol.quad.nodes[i], 0.4);
    CHECK(rep == doctest::Approx(direct).epsilon(1e-6));
  }
}
