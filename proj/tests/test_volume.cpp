#include <cmath>

#include "core/geometry.hpp"
#include "core/volume.hpp"
#include "doctest.h"

using namespace blowup;

TEST_CASE("domain integrals of simple fields") {
  const Domain disk = make_disk(1.0);
  CHECK(domain_integral(disk, [](const Pt&) { return 1.0; }) ==
        doctest::Approx(M_PI).epsilon(1e-12));

  const Domain sq = make_rectangle(1.0, 1.0);
  CHECK(domain_integral(sq, [](const Pt& y) { return y[0] + y[1]; }) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // the radial midpoint rule carries a deterministic 1/(4 n^2) relative
  // error on a constant field, so the check tightens as the rule refines
  const Domain ball = make_ball(0.9);
  const double ball_volume = 4.0 / 3.0 * M_PI * 0.729;
  CHECK(domain_integral(ball, [](const Pt&) { return 1.0; }) ==
        doctest::Approx(ball_volume).epsilon(1e-4));
  CHECK(domain_integral(ball, [](const Pt&) { return 1.0; }, 256) ==
        doctest::Approx(ball_volume).epsilon(1e-5));
}

TEST_CASE("heat content of the unit disk under constant data") {
  const Domain disk = make_disk(1.0);
  const auto one = [](const Pt&) { return 1.0; };

  // interior point: stays at 1 until the boundary is felt
  CHECK(initial_potential(disk, one, pt(0.3, 0.1), 0.01) ==
        doctest::Approx(0.99999879069559041).epsilon(1e-9));
  CHECK(initial_potential(disk, one, pt(0.3, 0.1), 0.05) ==
        doctest::Approx(0.97004941437467284).epsilon(1e-9));

  // boundary point: half of the data in the short-time limit, then decay
  CHECK(initial_potential(disk, one, pt(1.0, 0.0), 1e-3) ==
        doctest::Approx(0.49107714674992342).epsilon(1e-9));
  CHECK(initial_potential(disk, one, pt(1.0, 0.0), 1e-2) ==
        doctest::Approx(0.4717191866762729).epsilon(1e-9));
  CHECK(initial_potential(disk, one, pt(1.0, 0.0), 0.1) ==
        doctest::Approx(0.40822959369533582).epsilon(1e-9));
}

TEST_CASE("box potential of blanket data is conservative") {
  const auto one = [](const Pt&) { return 1.0; };
  CHECK(box_potential(pt(-8.0, -8.0), pt(8.0, 8.0), 2, one, pt(0.2, -0.4),
                      0.25) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(box_potential(pt(-8.0, -8.0, -8.0), pt(8.0, 8.0, 8.0), 3, one,
                      pt(0.2, -0.4, 0.1), 0.25) ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("box gradient potential recovers the directional derivative") {
  const auto psi = [](const Pt& y) { return 0.3 + 2.0 * y[0] - y[1]; };
  const Pt lo = pt(-4.0, -4.0);
  const Pt hi = pt(4.0, 4.0);
  const Pt x = pt(0.1, 0.2);
  CHECK(box_dphi_normal(lo, hi, 2, psi, x, pt(1.0, 0.0), 1e-4) ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(box_dphi_normal(lo, hi, 2, psi, x, pt(0.0, 1.0), 1e-4) ==
        doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("panel override matches the default rule on smooth data") {
  const auto psi = [](const Pt& y) {
    return std::exp(-(y[0] * y[0] + y[1] * y[1]));
  };
  const Pt lo = pt(-2.0, -2.0);
  const Pt hi = pt(2.0, 2.0);
  const double coarse = box_potential(lo, hi, 2, psi, pt(0.3, 0.0), 0.1, 6);
  const double fine = box_potential(lo, hi, 2, psi, pt(0.3, 0.0), 0.1);
  CHECK(coarse == doctest::Approx(fine).epsilon(1e-8));
}
