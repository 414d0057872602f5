// Volume integrals of the heat kernel against initial data.  All rules change
// variables to the Gaussian scale z = (y - x) / (2 sqrt(t)), so the integrand
// stays resolved uniformly in t; domain geometry enters through exact ray exit
// distances (polar form) or box clipping (tensor form).
#pragma once

#include <functional>

#include "core/geometry.hpp"
#include "core/num.hpp"

namespace blowup {

using SpaceFn = std::function<double(const Pt&)>;

// int_Omega Phi(x - y, t) u0(y) dy for x inside Omega or on its boundary.
// Polar rule in the Gaussian scale: directions x radial Gauss-Legendre.
// nang/nrad <= 0 pick defaults (2-D: 512 x 48; 3-D: 48 x 96 x 32).
double initial_potential(const Domain& dom, const SpaceFn& u0, const Pt& x,
                         double t, int nang = 0, int nrad = 0);

// int_box Phi(x - y, t) psi(y) dy over an axis-aligned box, tensor
// Gauss-Legendre in the scaled variable, clipped to the box.  panels <= 0
// picks the default composite count per axis (2-D: 12; 3-D: 8).
double box_potential(const Pt& lo, const Pt& hi, int n, const SpaceFn& psi,
                     const Pt& x, double t, int panels = 0);

// int_box (grad Phi)(x - y, t) . nvec psi(y) dy, same rule.  Bounded as
// t -> 0 (tends to the directional derivative of psi at x).
double box_dphi_normal(const Pt& lo, const Pt& hi, int n, const SpaceFn& psi,
                       const Pt& x, const Pt& nvec, double t, int panels = 0);

// int_Omega f(y) dy by a tensor midpoint rule (polar/spherical midpoint for
// disk/ball).  nper <= 0 picks a default resolution per axis.
double domain_integral(const Domain& dom, const SpaceFn& f, int nper = 0);

}  // namespace blowup
