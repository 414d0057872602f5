// Closed-form blow-up-time bounds and the empirical order estimator used by
// the table reports.
#pragma once

#include <utility>
#include <vector>

#include "core/geometry.hpp"
#include "core/volume.hpp"

namespace blowup {

struct BoundInputs {
  int n = 2;                    // space dimension
  double q = 2.0;               // flux exponent, > 1
  double M0 = 0.0;              // max of the initial data
  double gamma1_measure = 0.0;  // |Gamma1|
  double C = 1.0;               // unquantified bound constant, caller-supplied
  double u0_integral = 0.0;     // int_Omega u0^{1-q} dx (upper bound only)
  double m = 0.0;               // comparison exponent, >= 2(q-1)
};

// Integral int_Omega u0^{1-q} for constant initial data c: |Omega| c^{1-q}.
double constant_u0_integral(const Domain& dom, double c, double q);

// T* <= (1/((q-1)|Gamma1|)) int_Omega u0^{1-q} dx.  Requires min u0 > 0
// (encoded by a finite positive u0_integral) and |Gamma1| > 0.
double upper_bound(const BoundInputs& in);

struct LowerBoundValue {
  double value = 0.0;
  bool vacuous = false;  // bracket was <= 0, bound carries no information
};

// T* >= C^{-2/(n+2)} [ln(1/|Gamma1|) - (n+2)(q-1) ln M0 - ln(q-1) - ln C]^{2/(n+2)}.
LowerBoundValue lower_bound(const BoundInputs& in);

// Whole-boundary case: T* >= min{1, M0^{-(q-1)(n+2)} / C}, valid for M0 >= 1.
double whole_boundary_lower_bound(const BoundInputs& in);

struct PsLowerBounds {
  double n3 = 0.0;  // C (int u0^{2m})^{-2}
  double n2 = 0.0;  // C (int u0^{4m})^{-1}
};

// Energy-function lower bounds for the whole-boundary problem, computed with
// domain quadrature on the supplied initial data.
PsLowerBounds ps_lower_bounds(const BoundInputs& in, const SpaceFn& u0,
                              const Domain& dom);

// Pairwise orders ln(T0_i / T0_{i-1}) / ln(|Gamma1|_{i-1} / |Gamma1|_i) for a
// sweep given as (|Gamma1|, T0) pairs with strictly decreasing |Gamma1|.
std::vector<double> order_estimate(
    const std::vector<std::pair<double, double>>& pairs);

// Least-squares slope of ln T0 against ln(1/|Gamma1|) over the whole sweep.
double fitted_order(const std::vector<std::pair<double, double>>& pairs);

}  // namespace blowup
