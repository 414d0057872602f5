#include <cmath>
#include <utility>
#include <vector>

#include "core/bounds.hpp"
#include "core/errors.hpp"
#include "doctest.h"

using namespace blowup;

namespace {

BoundInputs patch_inputs(int n, double q, double gamma1, const Domain& dom) {
  BoundInputs in;
  in.n = n;
  in.q = q;
  in.M0 = 0.05;
  in.gamma1_measure = gamma1;
  in.C = 1.0;
  in.u0_integral = constant_u0_integral(dom, 0.05, q);
  return in;
}

}  // namespace

TEST_CASE("upper bound for constant data on the reference configurations") {
  const Domain sq = make_rectangle(1.0, 1.0);
  CHECK(constant_u0_integral(sq, 0.05, 2.0) == doctest::Approx(20.0));
  CHECK(constant_u0_integral(sq, 0.05, 3.0) == doctest::Approx(400.0));

  // 2-D, q = 2, |Gamma1| = 1/2
  CHECK(upper_bound(patch_inputs(2, 2.0, 0.5, sq)) == doctest::Approx(40.0));
  // 2-D, q = 2, |Gamma1| = 3/40
  CHECK(upper_bound(patch_inputs(2, 2.0, 0.075, sq)) ==
        doctest::Approx(20.0 / 0.075));

  const Domain cube = make_box(1.0, 1.0, 1.0);
  // 3-D, q = 3, |Gamma1| = 49/100
  CHECK(upper_bound(patch_inputs(3, 3.0, 0.49, cube)) ==
        doctest::Approx(408.16326530612247).epsilon(1e-13));

  CHECK_THROWS_AS(upper_bound(patch_inputs(2, 2.0, 0.0, sq)), Error);
}

TEST_CASE("logarithmic lower bound and its vacuous regime") {
  const Domain sq = make_rectangle(1.0, 1.0);
  const LowerBoundValue lv = lower_bound(patch_inputs(2, 2.0, 0.5, sq));
  CHECK(!lv.vacuous);
  // bracket = ln 2 - 4 ln 0.05, value = bracket^(1/2)
  const double bracket = std::log(1.0 / 0.5) - 4.0 * std::log(0.05);
  CHECK(lv.value == doctest::Approx(std::pow(bracket, 0.5)).epsilon(1e-13));
  CHECK(lv.value == doctest::Approx(3.56034777455456).epsilon(1e-10));

  // the bound shrinks as the patch shrinks more slowly than any power
  const LowerBoundValue small = lower_bound(patch_inputs(2, 2.0, 0.075, sq));
  CHECK(small.value > lv.value);

  // a large constant swallows the logarithm
  BoundInputs in = patch_inputs(2, 2.0, 0.9, sq);
  in.M0 = 1.0;
  in.C = 2.0;
  const LowerBoundValue vac = lower_bound(in);
  CHECK(vac.vacuous);
  CHECK(vac.value == 0.0);
}

TEST_CASE("whole-boundary lower bound") {
  BoundInputs in;
  in.q = 2.0;
  in.M0 = 2.0;
  in.C = 1.0;
  in.n = 3;
  CHECK(whole_boundary_lower_bound(in) == doctest::Approx(1.0 / 32.0));
  in.n = 2;
  in.q = 3.0;
  CHECK(whole_boundary_lower_bound(in) == doctest::Approx(1.0 / 256.0));
  in.M0 = 20.0;
  in.q = 2.0;
  CHECK(whole_boundary_lower_bound(in) < 1e-4);
  in.M0 = 0.5;
  CHECK_THROWS_AS(whole_boundary_lower_bound(in), Error);
}

TEST_CASE("energy-function lower bounds for unit data on the disk") {
  const Domain disk = make_disk(1.0);
  BoundInputs in;
  in.n = 2;
  in.q = 2.0;
  in.C = 1.0;
  in.m = 2.0;
  const PsLowerBounds ps =
      ps_lower_bounds(in, [](const Pt&) { return 1.0; }, disk);
  CHECK(ps.n2 == doctest::Approx(1.0 / M_PI).epsilon(1e-10));
  CHECK(ps.n3 == doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-10));

  in.m = 1.0;  // below 2(q - 1)
  CHECK_THROWS_AS(ps_lower_bounds(in, [](const Pt&) { return 1.0; }, disk),
                  Error);
}

TEST_CASE("pairwise and fitted orders of the reference decay") {
  const std::vector<std::pair<double, double>> pairs = {
      {0.5, 35.4}, {0.25, 72.8}, {0.125, 149.6}, {0.075, 253.6}};
  const std::vector<double> orders = order_estimate(pairs);
  REQUIRE(orders.size() == 3);
  CHECK(orders[0] == doctest::Approx(1.040).epsilon(5e-4));
  CHECK(orders[1] == doctest::Approx(1.039).epsilon(5e-4));
  CHECK(orders[2] == doctest::Approx(1.033).epsilon(5e-4));
  CHECK(fitted_order(pairs) == doctest::Approx(1.038141).epsilon(1e-5));

  CHECK_THROWS_AS(order_estimate({{0.25, 10.0}, {0.5, 20.0}}), Error);
  CHECK_THROWS_AS(fitted_order({{0.5, 10.0}}), Error);
}
