#include "core/volume.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace blowup {

namespace {

constexpr double kPi = M_PI;
constexpr double kZCut = 8.0;  // exp(-64) tail, below double noise here

struct AxisRule {
  std::vector<double> x, w;
};

AxisRule clipped_axis_rule(double zlo, double zhi, int panels, const GaussRule& g) {
  AxisRule r;
  composite_gauss(zlo, zhi, panels, g, r.x, r.w);
  return r;
}

}  // namespace

double initial_potential(const Domain& dom, const SpaceFn& u0, const Pt& x,
                         double t, int nang, int nrad) {
  if (!(t > 0.0)) fail(ErrorKind::invalid_argument, "initial_potential: t <= 0");
  const int n = dom.dim;
  const double s = 2.0 * std::sqrt(t);
  if (nrad <= 0) nrad = (n == 2) ? 48 : 32;
  static thread_local GaussRule gr;  // cache: same rule reused across calls
  static thread_local int gr_n = 0;
  if (gr_n != nrad) {
    gr = gauss_legendre(nrad);
    gr_n = nrad;
  }

  auto radial = [&](const Pt& dir) {
    const double exit = dom.ray_exit(x, dir) / s;
    const double rmax = std::min(exit, kZCut);
    if (rmax <= 0.0) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < nrad; ++i) {
      const double rho = 0.5 * rmax * (gr.x[i] + 1.0);
      const double w = 0.5 * rmax * gr.w[i];
      const Pt y = add_scaled(x, s * rho, dir);
      const double jac = (n == 2) ? rho : rho * rho;
      acc += w * jac * std::exp(-rho * rho) * u0(y);
    }
    return acc;
  };

  double total = 0.0;
  if (n == 2) {
    if (nang <= 0) nang = 512;
    for (int a = 0; a < nang; ++a) {
      const double th = (a + 0.5) * 2.0 * kPi / nang;
      total += radial({std::cos(th), std::sin(th), 0.0}) * (2.0 * kPi / nang);
    }
    return total / kPi;
  }
  // 3-D: Gauss-Legendre in cos(polar) crossed with uniform azimuth
  const int nc = (nang > 0) ? std::max(8, nang / 2) : 48;
  const int nth = (nang > 0) ? nang : 96;
  const GaussRule gc = gauss_legendre(nc);
  for (int ic = 0; ic < nc; ++ic) {
    const double c = gc.x[ic];
    const double rho = std::sqrt(std::max(1.0 - c * c, 0.0));
    for (int a = 0; a < nth; ++a) {
      const double th = (a + 0.5) * 2.0 * kPi / nth;
      const Pt dir = {rho * std::cos(th), rho * std::sin(th), c};
      total += radial(dir) * gc.w[ic] * (2.0 * kPi / nth);
    }
  }
  return total / std::pow(kPi, 1.5);
}

namespace {

// Shared tensor loop: integrates weight(z) * psi(x + s z) over the clipped box
// in the scaled variable, where weight is either exp(-|z|^2) or
// (z.nvec) exp(-|z|^2).
double box_tensor(const Pt& lo, const Pt& hi, int n, const SpaceFn& psi,
                  const Pt& x, double t, const Pt* nvec, int panels) {
  if (!(t > 0.0)) fail(ErrorKind::invalid_argument, "box quadrature: t <= 0");
  const double s = 2.0 * std::sqrt(t);
  if (panels <= 0) panels = (n == 2) ? 12 : 8;
  static thread_local GaussRule g8;
  if (g8.x.empty()) g8 = gauss_legendre(8);
  AxisRule ax[3];
  for (int a = 0; a < n; ++a) {
    const double zlo = std::max((lo[a] - x[a]) / s, -kZCut);
    const double zhi = std::min((hi[a] - x[a]) / s, kZCut);
    if (zlo >= zhi) return 0.0;
    ax[a] = clipped_axis_rule(zlo, zhi, panels, g8);
  }
  double total = 0.0;
  const std::size_t n0 = ax[0].x.size(), n1 = ax[1].x.size();
  const std::size_t n2 = (n == 3) ? ax[2].x.size() : 1;
  for (std::size_t i = 0; i < n0; ++i) {
    const double z0 = ax[0].x[i];
    const double e0 = std::exp(-z0 * z0);
    for (std::size_t j = 0; j < n1; ++j) {
      const double z1 = ax[1].x[j];
      const double e01 = e0 * std::exp(-z1 * z1);
      const double w01 = ax[0].w[i] * ax[1].w[j];
      for (std::size_t k = 0; k < n2; ++k) {
        const double z2 = (n == 3) ? ax[2].x[k] : 0.0;
        double wgt = w01 * e01;
        if (n == 3) wgt *= ax[2].w[k] * std::exp(-z2 * z2);
        const Pt y = {x[0] + s * z0, x[1] + s * z1, n == 3 ? x[2] + s * z2 : 0.0};
        if (nvec) {
          const double zn = z0 * (*nvec)[0] + z1 * (*nvec)[1] +
                            (n == 3 ? z2 * (*nvec)[2] : 0.0);
          wgt *= zn;
        }
        total += wgt * psi(y);
      }
    }
  }
  return total;
}

}  // namespace

double box_potential(const Pt& lo, const Pt& hi, int n, const SpaceFn& psi,
                     const Pt& x, double t, int panels) {
  return box_tensor(lo, hi, n, psi, x, t, nullptr, panels) /
         std::pow(kPi, 0.5 * n);
}

double box_dphi_normal(const Pt& lo, const Pt& hi, int n, const SpaceFn& psi,
                       const Pt& x, const Pt& nvec, double t, int panels) {
  return box_tensor(lo, hi, n, psi, x, t, &nvec, panels) /
         (std::sqrt(t) * std::pow(kPi, 0.5 * n));
}

double domain_integral(const Domain& dom, const SpaceFn& f, int nper) {
  const int n = dom.dim;
  double total = 0.0;
  switch (dom.kind) {
    case DomainKind::rectangle:
    case DomainKind::box: {
      if (nper <= 0) nper = (n == 2) ? 256 : 64;
      const Pt lo = dom.box_lo(), hi = dom.box_hi();
      const double dx = (hi[0] - lo[0]) / nper;
      const double dy = (hi[1] - lo[1]) / nper;
      const double dz = (n == 3) ? (hi[2] - lo[2]) / nper : 1.0;
      const int nz = (n == 3) ? nper : 1;
      for (int i = 0; i < nper; ++i)
        for (int j = 0; j < nper; ++j)
          for (int k = 0; k < nz; ++k) {
            const Pt y = {lo[0] + (i + 0.5) * dx, lo[1] + (j + 0.5) * dy,
                          n == 3 ? lo[2] + (k + 0.5) * dz : 0.0};
            total += f(y);
          }
      return total * dx * dy * dz;
    }
    case DomainKind::disk: {
      if (nper <= 0) nper = 256;
      const int nr = nper, nth = 4 * nper;
      const double dr = dom.radius / nr, dth = 2.0 * kPi / nth;
      for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * dr;
        for (int j = 0; j < nth; ++j) {
          const double th = (j + 0.5) * dth;
          const Pt y = {dom.center[0] + r * std::cos(th),
                        dom.center[1] + r * std::sin(th), 0.0};
          total += f(y) * r;
        }
      }
      return total * dr * dth;
    }
    case DomainKind::ball: {
      if (nper <= 0) nper = 64;
      const int nr = nper, nc = nper, nth = 2 * nper;
      const double dr = dom.radius / nr, dc = 2.0 / nc, dth = 2.0 * kPi / nth;
      for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) * dr;
        for (int j = 0; j < nc; ++j) {
          const double c = -1.0 + (j + 0.5) * dc;
          const double rho = std::sqrt(std::max(1.0 - c * c, 0.0));
          for (int k = 0; k < nth; ++k) {
            const double th = (k + 0.5) * dth;
            const Pt y = {dom.center[0] + r * rho * std::cos(th),
                          dom.center[1] + r * rho * std::sin(th),
                          dom.center[2] + r * c};
            total += f(y) * r * r;
          }
        }
      }
      return total * dr * dc * dth;
    }
  }
  fail(ErrorKind::internal, "domain_integral: unreachable");
}

}  // namespace blowup
