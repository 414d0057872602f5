#include <cmath>
#include <vector>

#include "core/num.hpp"
#include "doctest.h"

using namespace blowup;

TEST_CASE("gauss rule integrates high-degree polynomials") {
  const GaussRule rule = gauss_legendre(8);
  double mass = 0.0;
  double power = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    mass += rule.w[i];
    power += rule.w[i] * std::pow(rule.x[i], 10);
  }
  CHECK(mass == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(power == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("composite rule reproduces a smooth integral") {
  const GaussRule base = gauss_legendre(8);
  std::vector<double> nodes;
  std::vector<double> weights;
  composite_gauss(0.0, M_PI, 16, base, nodes, weights);
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    s += weights[i] * std::sin(nodes[i]);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("line fit recovers exact affine data") {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 - 0.7 * xi);
  const LineFit fit = fit_line(x, y);
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(fit.slope == doctest::Approx(-0.7).epsilon(1e-13));
}

TEST_CASE("point algebra respects the carried dimension") {
  const Pt a = pt(1.0, 2.0, 3.0);
  const Pt b = pt(-1.0, 0.5, 2.0);
  CHECK(dot(a, b, 2) == doctest::Approx(0.0));
  CHECK(dot(a, b, 3) == doctest::Approx(6.0));
  CHECK(dist(a, b, 2) == doctest::Approx(2.5));
  const Pt c = add_scaled(a, -2.0, b);
  CHECK(c[0] == doctest::Approx(3.0));
  CHECK(c[1] == doctest::Approx(1.0));
  CHECK(c[2] == doctest::Approx(-1.0));
}

TEST_CASE("exponential integral matches reference values") {
  CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552027).epsilon(1e-13));
  CHECK(expint_e1(0.5) == doctest::Approx(0.55977359477616081).epsilon(1e-13));
  CHECK(expint_e1(10.0) ==
        doctest::Approx(4.1569689296853243e-06).epsilon(1e-12));
}

TEST_CASE("upper incomplete gamma at 3/2 matches reference values") {
  CHECK(gamma_upper_3half(0.0) ==
        doctest::Approx(0.88622692545275801).epsilon(1e-14));
  CHECK(gamma_upper_3half(1.0) ==
        doctest::Approx(0.50728223381177331).epsilon(1e-13));
}
