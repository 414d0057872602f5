// Fundamental solution of the heat equation, its gradient, exact time
// integrals of the boundary kernels over one time panel, and the geometric /
// singular boundary integrals used by the appendix-style checks.
#pragma once

#include "core/geometry.hpp"
#include "core/num.hpp"

namespace blowup {

// Phi(z, t) = (4 pi t)^(-n/2) exp(-|z|^2 / (4t)).  t must be positive; an
// exponent magnitude beyond 700 underflows cleanly to exactly 0.
double phi(const Pt& z, double t, int n);

// grad Phi(z, t) = -z / (2t) * Phi(z, t).
Pt grad_phi(const Pt& z, double t, int n);

// int_{s1}^{s2} Phi(z, s) ds for |z|^2 = r2 > 0, 0 <= s1 < s2.
double phi_time_integral(double r2, double s1, double s2, int n);

// int_{s1}^{s2} (grad Phi)(z, s) . nvec ds, written in terms of zdotn = z.nvec
// and r2 = |z|^2 > 0:
//   n=2:  -(z.n)/(2 pi r2) * [exp(-r2/4s2) - exp(-r2/4s1)]
//   n=3:  -(z.n)/(2 pi^(3/2) r^3) * [G(3/2, r2/4s2) - G(3/2, r2/4s1)]
double dphi_normal_time_integral(double zdotn, double r2, double s1, double s2,
                                 int n);

// Continuous limit of the above as z -> 0 along a C^2 boundary, where
// (z.n)/|z|^2 tends to a finite value kappa_half (1/(2R) on a circle/sphere).
double dphi_normal_time_integral_limit(double kappa_half, double s1, double s2,
                                       int n);

// Average over a flat panel through the singular point of the time-integrated
// single-layer kernel: (1/w) int_{-w/2}^{w/2} [int_{s1}^{s2} Phi ds] dxi in
// 2-D, and the equal-area flat disc analogue in 3-D.
double phi_time_integral_self_average(double panel_measure, double s1, double s2,
                                      int n);

struct SurfaceHeatIntegral {
  double value = 0.0;
  bool under_resolved = false;  // halving the spacing moved the value > 1e-4 rel.
};

// t^(-(n-1)/2) * int_{boundary} exp(-|x-y|^2/(4t)) dS_y, for x on the boundary.
// Node count is chosen internally from t and checked by one refinement step.
SurfaceHeatIntegral surface_heat_integral(const Domain& dom, const Pt& x, double t);

struct GeomDefect {
  double dot = 0.0;    // (x - y) . n(x)
  double ratio = 0.0;  // dot / |x - y|^2
};

// The C^2-boundary defect quantities; on a circle or sphere of radius R the
// ratio equals 1/(2R) identically.
GeomDefect geom_defect(const Domain& dom, const Pt& x, const Pt& y);

// int_{boundary} dS_y / (|x-y|^a |y-z|^b) for distinct boundary points x, z
// with 0 <= a, b < n-1, by quadrature graded toward both singular points.
// Supported on the disk.
double singular_surface_integral(const Domain& dom, const Pt& x, const Pt& z,
                                 double a, double b, int npts = 2048);

}  // namespace blowup
