#include "core/num.hpp"

#include "core/errors.hpp"

namespace blowup {

GaussRule gauss_legendre(int npts) {
  if (npts < 1) fail(ErrorKind::invalid_argument, "gauss_legendre: npts < 1");
  GaussRule rule;
  rule.x.resize(npts);
  rule.w.resize(npts);
  const int m = (npts + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev guess for the i-th root, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npts; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = npts * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.x[i] = -z;
    rule.x[npts - 1 - i] = z;
    rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[npts - 1 - i] = rule.w[i];
  }
  return rule;
}

void composite_gauss(double a, double b, int panels, const GaussRule& base,
                     std::vector<double>& nodes, std::vector<double>& weights) {
  const double dx = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * dx;
    for (std::size_t i = 0; i < base.x.size(); ++i) {
      nodes.push_back(mid + 0.5 * dx * base.x[i]);
      weights.push_back(0.5 * dx * base.w[i]);
    }
  }
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorKind::invalid_argument, "fit_line: need >= 2 matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) fail(ErrorKind::invalid_argument, "fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

double expint_e1(double x) {
  if (!(x > 0.0)) fail(ErrorKind::invalid_argument, "expint_e1: x must be > 0");
  // std::expint is Ei; E1(x) = -Ei(-x) for x > 0.
  return -std::expint(-x);
}

double gamma_upper_3half(double x) {
  if (x < 0.0) fail(ErrorKind::invalid_argument, "gamma_upper_3half: x < 0");
  return 0.5 * std::sqrt(M_PI) * std::erfc(std::sqrt(x)) + std::sqrt(x) * std::exp(-x);
}

}  // namespace blowup
