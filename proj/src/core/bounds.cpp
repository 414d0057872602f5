#include "core/bounds.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace blowup {

double constant_u0_integral(const Domain& dom, double c, double q) {
  if (!(c > 0.0)) fail(ErrorKind::invalid_argument, "initial data must be positive");
  return dom.volume() * std::pow(c, 1.0 - q);
}

double upper_bound(const BoundInputs& in) {
  if (!(in.q > 1.0)) fail(ErrorKind::invalid_argument, "upper_bound: q must exceed 1");
  if (!(in.gamma1_measure > 0.0))
    fail(ErrorKind::invalid_argument, "upper_bound: Gamma1 is empty");
  if (!(in.u0_integral > 0.0) || !std::isfinite(in.u0_integral))
    fail(ErrorKind::invalid_argument,
         "upper_bound: u0 integral not positive and finite (u0 must stay above 0)");
  return in.u0_integral / ((in.q - 1.0) * in.gamma1_measure);
}

LowerBoundValue lower_bound(const BoundInputs& in) {
  if (!(in.C > 0.0)) fail(ErrorKind::invalid_argument, "lower_bound: C must be positive");
  if (!(in.q > 1.0)) fail(ErrorKind::invalid_argument, "lower_bound: q must exceed 1");
  if (!(in.M0 > 0.0)) fail(ErrorKind::invalid_argument, "lower_bound: M0 must be positive");
  if (!(in.gamma1_measure > 0.0))
    fail(ErrorKind::invalid_argument, "lower_bound: Gamma1 is empty");
  const double p = 2.0 / (in.n + 2.0);
  const double bracket = std::log(1.0 / in.gamma1_measure) -
                         (in.n + 2.0) * (in.q - 1.0) * std::log(in.M0) -
                         std::log(in.q - 1.0) - std::log(in.C);
  if (bracket <= 0.0) return {0.0, true};
  return {std::pow(in.C, -p) * std::pow(bracket, p), false};
}

double whole_boundary_lower_bound(const BoundInputs& in) {
  if (!(in.M0 >= 1.0))
    fail(ErrorKind::invalid_argument, "whole-boundary lower bound needs M0 >= 1");
  if (!(in.C > 0.0)) fail(ErrorKind::invalid_argument, "C must be positive");
  if (!(in.q > 1.0)) fail(ErrorKind::invalid_argument, "q must exceed 1");
  const double v = std::pow(in.M0, -(in.q - 1.0) * (in.n + 2.0)) / in.C;
  return std::min(1.0, v);
}

PsLowerBounds ps_lower_bounds(const BoundInputs& in, const SpaceFn& u0,
                              const Domain& dom) {
  if (!(in.m >= 2.0 * (in.q - 1.0)))
    fail(ErrorKind::invalid_argument, "comparison exponent m below 2(q-1)");
  if (!(in.C > 0.0)) fail(ErrorKind::invalid_argument, "C must be positive");
  const double m = in.m;
  const double i2m = domain_integral(dom, [&](const Pt& y) {
    return std::pow(u0(y), 2.0 * m);
  });
  const double i4m = domain_integral(dom, [&](const Pt& y) {
    return std::pow(u0(y), 4.0 * m);
  });
  PsLowerBounds out;
  out.n3 = in.C / (i2m * i2m);
  out.n2 = in.C / i4m;
  return out;
}

std::vector<double> order_estimate(
    const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2)
    fail(ErrorKind::invalid_argument, "order estimate needs at least 2 pairs");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!(pairs[i].second > 0.0))
      fail(ErrorKind::invalid_argument, "order estimate: T0 must be positive");
    if (i > 0 && !(pairs[i].first < pairs[i - 1].first))
      fail(ErrorKind::invalid_argument,
           "order estimate: |Gamma1| must strictly decrease");
  }
  std::vector<double> orders;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    orders.push_back(std::log(pairs[i].second / pairs[i - 1].second) /
                     std::log(pairs[i - 1].first / pairs[i].first));
  }
  return orders;
}

double fitted_order(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2)
    fail(ErrorKind::invalid_argument, "order fit needs at least 2 pairs");
  std::vector<double> x, y;
  for (const auto& p : pairs) {
    if (!(p.first > 0.0 && p.second > 0.0))
      fail(ErrorKind::invalid_argument, "order fit: values must be positive");
    x.push_back(std::log(1.0 / p.first));
    y.push_back(std::log(p.second));
  }
  return fit_line(x, y).slope;
}

}  // namespace blowup
