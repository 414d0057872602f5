// Small numeric utilities: point algebra for 2-D/3-D, Gauss-Legendre rules,
// least-squares line fits, and the few special functions the kernels need.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace blowup {

// Points and vectors live in at most three components; dimension is carried
// separately by the caller.  Component [2] is ignored when n == 2.
using Pt = std::array<double, 3>;

inline Pt pt(double x, double y, double z = 0.0) { return {x, y, z}; }

inline double dot(const Pt& a, const Pt& b, int n) {
  double s = a[0] * b[0] + a[1] * b[1];
  if (n == 3) s += a[2] * b[2];
  return s;
}

inline Pt sub(const Pt& a, const Pt& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Pt add_scaled(const Pt& a, double c, const Pt& d) {
  return {a[0] + c * d[0], a[1] + c * d[1], a[2] + c * d[2]};
}

inline double norm2sq(const Pt& a, int n) { return dot(a, a, n); }

inline double dist(const Pt& a, const Pt& b, int n) {
  return std::sqrt(norm2sq(sub(a, b), n));
}

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int npts);

// Composite Gauss-Legendre over [a, b] split into uniform panels.
// Appends (node, weight) pairs to the output vectors.
void composite_gauss(double a, double b, int panels, const GaussRule& base,
                     std::vector<double>& nodes, std::vector<double>& weights);

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
};

// Ordinary least squares fit y ~ intercept + slope * x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
double expint_e1(double x);

// Upper incomplete gamma Gamma(3/2, x) = (sqrt(pi)/2) erfc(sqrt(x)) + sqrt(x) e^-x.
double gamma_upper_3half(double x);

}  // namespace blowup
