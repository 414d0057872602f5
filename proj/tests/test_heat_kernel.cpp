#include <cmath>
#include <vector>

#include "core/geometry.hpp"
#include "core/heat_kernel.hpp"
#include "core/num.hpp"
#include "doctest.h"

using namespace blowup;

namespace {

// Direct composite-Gauss quadrature of the defining time integrals, as an
// independent cross-check of the closed forms.
double quad_phi_time_integral(double r2, double s1, double s2, int n) {
  const GaussRule base = gauss_legendre(8);
  std::vector<double> nodes, weights;
  composite_gauss(s1, s2, 4000, base, nodes, weights);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Pt z = pt(std::sqrt(r2), 0.0, 0.0);
    sum += weights[i] * phi(z, nodes[i], n);
  }
  return sum;
}

double quad_dphi_normal_time_integral(double zdotn, double r2, double s1,
                                      double s2, int n) {
  const GaussRule base = gauss_legendre(8);
  std::vector<double> nodes, weights;
  composite_gauss(s1, s2, 4000, base, nodes, weights);
  const Pt z = pt(std::sqrt(r2), 0.0, 0.0);
  const Pt nvec = pt(zdotn / std::sqrt(r2), 0.0, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Pt g = grad_phi(z, nodes[i], n);
    sum += weights[i] * dot(g, nvec, n);
  }
  return sum;
}

}  // namespace

TEST_CASE("fundamental solution values and gradient") {
  CHECK(phi(pt(0.0, 0.0), 0.25, 2) == doctest::Approx(1.0 / M_PI));
  CHECK(phi(pt(0.0, 0.0, 0.0), 0.25, 3) ==
        doctest::Approx(1.0 / (M_PI * std::sqrt(M_PI))));
  // gradient against central differences
  const Pt z = pt(0.4, -0.3, 0.2);
  for (int n : {2, 3}) {
    const Pt g = grad_phi(z, 0.31, n);
    for (int a = 0; a < n; ++a) {
      Pt zp = z, zm = z;
      zp[a] += 1e-6;
      zm[a] -= 1e-6;
      const double fd = (phi(zp, 0.31, n) - phi(zm, 0.31, n)) / 2e-6;
      CHECK(g[a] == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("closed-form time integral of the kernel") {
  for (int n : {2, 3}) {
    CHECK(phi_time_integral(0.25, 0.1, 0.5, n) ==
          doctest::Approx(quad_phi_time_integral(0.25, 0.1, 0.5, n))
              .epsilon(1e-11));
    CHECK(phi_time_integral(0.04, 0.0, 0.2, n) ==
          doctest::Approx(quad_phi_time_integral(0.04, 0.0, 0.2, n))
              .epsilon(1e-9));
  }
}

TEST_CASE("closed-form time integral of the normal derivative") {
  for (int n : {2, 3}) {
    CHECK(dphi_normal_time_integral(0.3, 0.25, 0.1, 0.4, n) ==
          doctest::Approx(quad_dphi_normal_time_integral(0.3, 0.25, 0.1, 0.4, n))
              .epsilon(1e-11));
    CHECK(dphi_normal_time_integral(-0.1, 0.09, 0.0, 0.2, n) ==
          doctest::Approx(
              quad_dphi_normal_time_integral(-0.1, 0.09, 0.0, 0.2, n))
              .epsilon(1e-9));
  }
}

TEST_CASE("coincident-point limit keeps its jump only at s1 = 0") {
  const double kappa_half = 1.0 / 2.0;  // unit circle
  CHECK(dphi_normal_time_integral_limit(kappa_half, 0.0, 0.3, 2) ==
        doctest::Approx(-kappa_half / (2.0 * M_PI)));
  CHECK(dphi_normal_time_integral_limit(kappa_half, 1e-12, 0.3, 2) == 0.0);
  CHECK(dphi_normal_time_integral_limit(kappa_half, 0.0, 0.3, 3) == 0.0);
}

TEST_CASE("panel average of the singular self integral") {
  // 2-D: average over a flat panel [-m/2, m/2] of the time-integrated kernel
  const double m = 0.1;
  const double s2 = 0.01;
  const GaussRule base = gauss_legendre(8);
  std::vector<double> nodes, weights;
  // dyadic shells toward the integrable singularity at xi = 0
  double direct = 0.0;
  double b = m / 2.0;
  for (int shell = 0; shell < 48; ++shell) {
    const double a = b / 2.0;
    nodes.clear();
    weights.clear();
    composite_gauss(a, b, 32, base, nodes, weights);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      direct += 2.0 * weights[i] *
                phi_time_integral(nodes[i] * nodes[i], 0.0, s2, 2);
    b = a;
  }
  direct /= m;
  CHECK(phi_time_integral_self_average(m, 0.0, s2, 2) ==
        doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("surface geometry helpers on the circle") {
  const Domain disk = make_disk(0.7, pt(0.3, -0.2));
  const Pt x = pt(0.3 + 0.7, -0.2);
  const Pt y = pt(0.3 - 0.7 * std::cos(0.4), -0.2 + 0.7 * std::sin(0.4));
  const GeomDefect d = geom_defect(disk, x, y);
  CHECK(d.ratio == doctest::Approx(1.0 / 1.4).epsilon(1e-12));
}

TEST_CASE("weighted boundary integral with merging singular points") {
  const Domain disk = make_disk(1.0);
  const double v =
      singular_surface_integral(disk, pt(1.0, 0.0), pt(-1.0, 0.0), 0.5, 0.0);
  CHECK(v == doctest::Approx(7.4162987092054877).epsilon(1e-5));
}
