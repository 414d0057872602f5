#include <cmath>
#include <cstddef>
#include <vector>

#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "core/layer_potentials.hpp"
#include "doctest.h"

using namespace blowup;

namespace {

LinearBVPData quiet_data() {
  LinearBVPData data;
  data.g = [](const Pt&, double) { return 0.0; };
  data.psi = [](const Pt&) { return 1.0; };
  data.psi_box_lo = pt(-8.0, -8.0);
  data.psi_box_hi = pt(8.0, 8.0);
  return data;
}

}  // namespace

TEST_CASE("solver guards") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition none = partition_boundary(disk, 0.0);
  const LinearBVPData data = quiet_data();

  CHECK_THROWS_AS(solve_linear_bie(disk, none, data, 0.0, 10, 16), Error);
  CHECK_THROWS_AS(solve_linear_bie(disk, none, data, 1.0, 0, 16), Error);
  CHECK_THROWS_AS(solve_linear_bie(disk, none, data, 1.0, 10, 4), Error);

  // the panel march needs a smooth boundary
  const Domain sq = make_rectangle(1.0, 1.0);
  CHECK_THROWS_AS(
      solve_linear_bie(sq, partition_boundary(sq, 0.0), data, 1.0, 10, 16),
      Error);

  CHECK_THROWS_AS(solve_nonlinear_bie(disk, none, 1.0, 0.05, 1.0, 10, 16, 2.0),
                  Error);
  CHECK_THROWS_AS(
      solve_nonlinear_bie(disk, none, 2.0, -0.1, 1.0, 10, 16, 2.0), Error);
}

TEST_CASE("constant data stays constant under the linear march") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition none = partition_boundary(disk, 0.0);
  const LinearSolveResult sol =
      solve_linear_bie(disk, none, quiet_data(), 1.0, 50, 32);

  // the density only absorbs the quadrature error of the flat initial field,
  // which peaks at the first level where the kernel is sharpest
  double sup = 0.0;
  for (const auto& level : sol.density.values)
    for (double v : level) sup = std::max(sup, std::abs(v));
  CHECK(sup < 2e-5);

  const LinearBVPData data = quiet_data();
  CHECK(linear_solution_value(disk, data, sol, pt(0.0, 0.0), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-6));
  CHECK(linear_solution_value(disk, data, sol, pt(0.4, -0.3), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("the march is causal: earlier levels ignore the horizon") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition none = partition_boundary(disk, 0.0);
  LinearBVPData data = quiet_data();
  data.g = [](const Pt& x, double t) {
    return 0.3 * std::sin(2.0 * x[0]) + 0.1 * t;
  };

  const LinearSolveResult longer =
      solve_linear_bie(disk, none, data, 0.5, 50, 24);
  const LinearSolveResult shorter =
      solve_linear_bie(disk, none, data, 0.25, 25, 24);

  REQUIRE(shorter.density.levels() == 25);
  for (std::size_t m = 0; m <= 25; ++m)
    for (std::size_t i = 0; i < shorter.quad.size(); ++i)
      CHECK(longer.density.values[m][i] == shorter.density.values[m][i]);
}

TEST_CASE("single layer of the zero density vanishes") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition none = partition_boundary(disk, 0.0);
  const BoundaryQuadrature quad = boundary_quadrature(disk, none, 32);
  BoundaryDensity density;
  density.dt = 0.1;
  density.values.assign(11, std::vector<double>(quad.size(), 0.0));

  CHECK(single_layer(disk, quad, density, pt(0.2, 0.1), 0.7) == 0.0);
  CHECK(single_layer(disk, quad, density, quad.nodes[3], 1.0) == 0.0);
  // evaluation beyond the stored levels is refused
  CHECK_THROWS_AS(single_layer(disk, quad, density, pt(0.2, 0.1), 1.2), Error);
}

TEST_CASE("nonlinear march on the whole circle grows symmetrically") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition whole =
      partition_boundary(disk, disk.boundary_measure());
  const NonlinearSolveResult sol =
      solve_nonlinear_bie(disk, whole, 2.0, 0.5, 2.0, 400, 32, 2.0);

  CHECK(sol.crossed);
  CHECK(!sol.truncated);
  CHECK(sol.T0 > 0.0);
  CHECK(sol.T0 <= sol.t_end);

  // rotational symmetry carries over to the discrete system
  const std::vector<double>& last = sol.boundary_values.back();
  double lo = last[0], hi = last[0];
  for (double v : last) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi >= 2.0);
  CHECK(hi - lo < 1e-10);

  // the trace rises level over level under pure inflow
  for (std::size_t m = 1; m < sol.boundary_values.size(); ++m)
    CHECK(sol.boundary_values[m][0] > sol.boundary_values[m - 1][0] - 1e-12);
}

TEST_CASE("offset integrals expose the normal-derivative jump") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition whole =
      partition_boundary(disk, disk.boundary_measure());
  const BoundaryQuadrature quad = boundary_quadrature(disk, whole, 256);
  const NodeTimeFn one = [](std::size_t, double) { return 1.0; };
  std::vector<double> hs(5);
  for (int i = 0; i < 5; ++i) hs[i] = 0.32 * std::pow(2.0, -i);

  const JumpResult jr = jump_check(disk, quad, one, quad.nodes[7], 0.5, hs, 1);
  CHECK(jr.offsets == hs);
  CHECK(jr.values.size() == hs.size());
  CHECK(jr.jump ==
        doctest::Approx(jr.extrapolated_limit - jr.direct_integral).epsilon(1e-14));
  CHECK(jr.jump == doctest::Approx(0.5).epsilon(0.04));

  // the evaluation point must sit on the boundary
  CHECK_THROWS_AS(jump_check(disk, quad, one, pt(0.2, 0.0), 0.5, hs, 1), Error);
}
