#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace blowup {

namespace {

constexpr double kPi = M_PI;

double wrap_angle(double a) {
  // map into (-pi, pi]
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

}  // namespace

double Domain::boundary_measure() const {
  switch (kind) {
    case DomainKind::rectangle: return 2.0 * (sides[0] + sides[1]);
    case DomainKind::box:
      return 2.0 * (sides[0] * sides[1] + sides[0] * sides[2] + sides[1] * sides[2]);
    case DomainKind::disk: return 2.0 * kPi * radius;
    case DomainKind::ball: return 4.0 * kPi * radius * radius;
  }
  fail(ErrorKind::internal, "unknown domain kind");
}

double Domain::volume() const {
  switch (kind) {
    case DomainKind::rectangle: return sides[0] * sides[1];
    case DomainKind::box: return sides[0] * sides[1] * sides[2];
    case DomainKind::disk: return kPi * radius * radius;
    case DomainKind::ball: return 4.0 / 3.0 * kPi * radius * radius * radius;
  }
  fail(ErrorKind::internal, "unknown domain kind");
}

Pt Domain::box_lo() const {
  if (kind == DomainKind::disk || kind == DomainKind::ball)
    return {center[0] - radius, center[1] - radius,
            dim == 3 ? center[2] - radius : 0.0};
  return {center[0] - 0.5 * sides[0], center[1] - 0.5 * sides[1],
          dim == 3 ? center[2] - 0.5 * sides[2] : 0.0};
}

Pt Domain::box_hi() const {
  if (kind == DomainKind::disk || kind == DomainKind::ball)
    return {center[0] + radius, center[1] + radius,
            dim == 3 ? center[2] + radius : 0.0};
  return {center[0] + 0.5 * sides[0], center[1] + 0.5 * sides[1],
          dim == 3 ? center[2] + 0.5 * sides[2] : 0.0};
}

bool Domain::contains(const Pt& x, double tol) const {
  if (kind == DomainKind::disk || kind == DomainKind::ball)
    return dist(x, center, dim) <= radius + tol;
  const Pt lo = box_lo(), hi = box_hi();
  for (int a = 0; a < dim; ++a)
    if (x[a] < lo[a] - tol || x[a] > hi[a] + tol) return false;
  return true;
}

double Domain::boundary_distance(const Pt& x) const {
  if (kind == DomainKind::disk || kind == DomainKind::ball)
    return radius - dist(x, center, dim);
  const Pt lo = box_lo(), hi = box_hi();
  double d = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dim; ++a) d = std::min({d, x[a] - lo[a], hi[a] - x[a]});
  return d;
}

double Domain::ray_exit(const Pt& x, const Pt& dir) const {
  if (kind == DomainKind::disk || kind == DomainKind::ball) {
    const Pt r = sub(x, center);
    const double a = norm2sq(dir, dim);
    const double b = 2.0 * dot(r, dir, dim);
    const double c = norm2sq(r, dim) - radius * radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0 || a == 0.0) return 0.0;
    const double t = (-b + std::sqrt(disc)) / (2.0 * a);
    return std::max(t, 0.0);
  }
  const Pt lo = box_lo(), hi = box_hi();
  double t = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dim; ++a) {
    if (dir[a] > 0.0)
      t = std::min(t, (hi[a] - x[a]) / dir[a]);
    else if (dir[a] < 0.0)
      t = std::min(t, (lo[a] - x[a]) / dir[a]);
  }
  return std::isfinite(t) ? std::max(t, 0.0) : 0.0;
}

Domain make_rectangle(double sx, double sy, Pt center) {
  if (sx <= 0.0 || sy <= 0.0)
    fail(ErrorKind::invalid_argument, "rectangle sides must be positive");
  Domain d;
  d.kind = DomainKind::rectangle;
  d.dim = 2;
  d.center = center;
  d.sides = {sx, sy, 0.0};
  return d;
}

Domain make_box(double sx, double sy, double sz, Pt center) {
  if (sx <= 0.0 || sy <= 0.0 || sz <= 0.0)
    fail(ErrorKind::invalid_argument, "box sides must be positive");
  Domain d;
  d.kind = DomainKind::box;
  d.dim = 3;
  d.center = center;
  d.sides = {sx, sy, sz};
  return d;
}

Domain make_disk(double radius, Pt center) {
  if (radius <= 0.0) fail(ErrorKind::invalid_argument, "disk radius must be positive");
  Domain d;
  d.kind = DomainKind::disk;
  d.dim = 2;
  d.center = center;
  d.radius = radius;
  return d;
}

Domain make_ball(double radius, Pt center) {
  if (radius <= 0.0) fail(ErrorKind::invalid_argument, "ball radius must be positive");
  Domain d;
  d.kind = DomainKind::ball;
  d.dim = 3;
  d.center = center;
  d.radius = radius;
  return d;
}

Domain make_domain(const std::string& kind, const std::vector<double>& dims) {
  if (kind == "rectangle") {
    if (dims.size() != 2) fail(ErrorKind::invalid_argument, "rectangle needs 2 sides");
    return make_rectangle(dims[0], dims[1], {0.5 * dims[0], 0.5 * dims[1], 0.0});
  }
  if (kind == "box") {
    if (dims.size() != 3) fail(ErrorKind::invalid_argument, "box needs 3 sides");
    return make_box(dims[0], dims[1], dims[2],
                    {0.5 * dims[0], 0.5 * dims[1], 0.5 * dims[2]});
  }
  if (kind == "disk") {
    if (dims.size() != 1) fail(ErrorKind::invalid_argument, "disk needs a radius");
    return make_disk(dims[0]);
  }
  if (kind == "ball") {
    if (dims.size() != 1) fail(ErrorKind::invalid_argument, "ball needs a radius");
    return make_ball(dims[0]);
  }
  fail(ErrorKind::invalid_argument, "unsupported domain kind: " + kind);
}

namespace {

// Face bookkeeping for rectangle/box: face f has axis f/2 and sits on the low
// side when f is even.  Tangential axes are the remaining ones in order.
struct FaceInfo {
  int axis;
  bool low;
  int tan[2];   // tan[1] unused in 2-D
  double plane; // coordinate of the face along `axis`
};

FaceInfo face_info(const Domain& dom, int f) {
  if (f < 0 || f >= 2 * dom.dim)
    fail(ErrorKind::invalid_argument, "face index out of range");
  FaceInfo fi;
  fi.axis = f / 2;
  fi.low = (f % 2 == 0);
  int k = 0;
  for (int a = 0; a < dom.dim; ++a)
    if (a != fi.axis) fi.tan[k++] = a;
  if (dom.dim == 2) fi.tan[1] = -1;
  fi.plane = fi.low ? dom.box_lo()[fi.axis] : dom.box_hi()[fi.axis];
  return fi;
}

}  // namespace

BoundaryPartition partition_boundary(const Domain& dom, double gamma1_measure,
                                     int face) {
  const double per = dom.boundary_measure();
  if (gamma1_measure < 0.0 || gamma1_measure > per * (1.0 + 1e-12))
    fail(ErrorKind::invalid_argument, "gamma1 measure outside [0, |boundary|]");
  BoundaryPartition p;
  p.gamma1_measure = std::min(gamma1_measure, per);
  p.face = (face >= 0) ? face : 2 * (dom.dim - 1);  // low side of the last axis

  if (p.empty() || p.covers_whole_boundary(dom)) return p;

  if (dom.kind == DomainKind::rectangle || dom.kind == DomainKind::box) {
    const FaceInfo fi = face_info(dom, p.face);
    if (dom.kind == DomainKind::rectangle) {
      const double flen = dom.sides[fi.tan[0]];
      if (gamma1_measure >= flen)
        fail(ErrorKind::invalid_argument,
             "gamma1 patch does not fit strictly inside one face");
    } else {
      const double side = std::sqrt(gamma1_measure);
      if (side >= std::min(dom.sides[fi.tan[0]], dom.sides[fi.tan[1]]))
        fail(ErrorKind::invalid_argument,
             "gamma1 patch does not fit strictly inside one face");
    }
  } else if (dom.kind == DomainKind::ball) {
    // cap height below the full diameter
    if (gamma1_measure / (2.0 * kPi * dom.radius) >= 2.0 * dom.radius)
      fail(ErrorKind::invalid_argument, "cap measure exceeds the sphere");
  }
  return p;
}

bool BoundaryPartition::covers_whole_boundary(const Domain& dom) const {
  return gamma1_measure >= dom.boundary_measure() * (1.0 - 1e-12);
}

double BoundaryPartition::gamma1_fraction_at(const Domain& dom, const Pt& x,
                                             double tol) const {
  if (empty()) return 0.0;
  if (covers_whole_boundary(dom)) return 1.0;

  switch (dom.kind) {
    case DomainKind::rectangle: {
      const FaceInfo fi = face_info(dom, face);
      if (std::abs(x[fi.axis] - fi.plane) > tol) return 0.0;
      const double c = dom.center[fi.tan[0]];
      const double half = 0.5 * gamma1_measure;
      const double d = std::abs(x[fi.tan[0]] - c);
      if (d < half - tol) return 1.0;
      if (d <= half + tol) return 0.5;
      return 0.0;
    }
    case DomainKind::box: {
      const FaceInfo fi = face_info(dom, face);
      if (std::abs(x[fi.axis] - fi.plane) > tol) return 0.0;
      const double half = 0.5 * std::sqrt(gamma1_measure);
      int inside = 0, edge = 0;
      for (int k = 0; k < 2; ++k) {
        const double d = std::abs(x[fi.tan[k]] - dom.center[fi.tan[k]]);
        if (d < half - tol)
          ++inside;
        else if (d <= half + tol)
          ++edge;
      }
      if (inside == 2) return 1.0;
      if (inside == 1 && edge == 1) return 0.5;
      if (edge == 2) return 0.25;
      return 0.0;
    }
    case DomainKind::disk: {
      const double theta = std::atan2(x[1] - dom.center[1], x[0] - dom.center[0]);
      const double halfang = 0.5 * gamma1_measure / dom.radius;
      const double d = std::abs(wrap_angle(theta - arc_center));
      const double atol = tol / dom.radius;
      if (d < halfang - atol) return 1.0;
      if (d <= halfang + atol) return 0.5;
      return 0.0;
    }
    case DomainKind::ball: {
      const double cap_h = gamma1_measure / (2.0 * kPi * dom.radius);
      const double z0 = dom.radius - cap_h;
      const double z = x[2] - dom.center[2];
      if (z > z0 + tol) return 1.0;
      if (z >= z0 - tol) return 0.5;
      return 0.0;
    }
  }
  fail(ErrorKind::internal, "unknown domain kind");
}

std::vector<Pt> BoundaryPartition::interface_points(const Domain& dom) const {
  std::vector<Pt> pts;
  if (empty() || covers_whole_boundary(dom)) return pts;
  switch (dom.kind) {
    case DomainKind::rectangle: {
      const FaceInfo fi = face_info(dom, face);
      for (double s : {-0.5, 0.5}) {
        Pt p = dom.center;
        p[fi.axis] = fi.plane;
        p[fi.tan[0]] = dom.center[fi.tan[0]] + s * gamma1_measure;
        pts.push_back(p);
      }
      return pts;
    }
    case DomainKind::box: {
      const FaceInfo fi = face_info(dom, face);
      const double half = 0.5 * std::sqrt(gamma1_measure);
      for (double s0 : {-1.0, 1.0})
        for (double s1 : {-1.0, 1.0}) {
          Pt p = dom.center;
          p[fi.axis] = fi.plane;
          p[fi.tan[0]] = dom.center[fi.tan[0]] + s0 * half;
          p[fi.tan[1]] = dom.center[fi.tan[1]] + s1 * half;
          pts.push_back(p);
        }
      return pts;
    }
    case DomainKind::disk: {
      const double halfang = 0.5 * gamma1_measure / dom.radius;
      for (double s : {-1.0, 1.0}) {
        const double th = arc_center + s * halfang;
        pts.push_back({dom.center[0] + dom.radius * std::cos(th),
                       dom.center[1] + dom.radius * std::sin(th), 0.0});
      }
      return pts;
    }
    case DomainKind::ball: {
      const double cap_h = gamma1_measure / (2.0 * kPi * dom.radius);
      const double z0 = dom.radius - cap_h;
      const double rho = std::sqrt(std::max(dom.radius * dom.radius - z0 * z0, 0.0));
      for (double s : {-1.0, 1.0})
        pts.push_back({dom.center[0] + s * rho, dom.center[1], dom.center[2] + z0});
      return pts;
    }
  }
  fail(ErrorKind::internal, "unknown domain kind");
}

double BoundaryQuadrature::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double BoundaryQuadrature::gamma1_weight() const {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    s += weights[i] * gamma1_fraction[i];
  return s;
}

namespace {

// 1-D trapezoid grid on [0, len] split at the given interior breakpoints, so
// that every breakpoint is a node.  Returns positions and weights; the first
// and last node carry half a panel.
void segment_grid(double len, const std::vector<double>& breaks, int panels_hint,
                  std::vector<double>& pos, std::vector<double>& wts) {
  std::vector<double> cuts{0.0};
  for (double b : breaks) cuts.push_back(b);
  cuts.push_back(len);
  pos.clear();
  wts.clear();
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    const double seg = b - a;
    if (seg <= 1e-14) continue;
    int p = std::max(1, (int)std::lround(panels_hint * seg / len));
    const double w = seg / p;
    for (int j = 0; j <= p; ++j) {
      const double x = a + j * w;
      double wt = (j == 0 || j == p) ? 0.5 * w : w;
      if (!pos.empty() && std::abs(pos.back() - x) < 1e-13) {
        wts.back() += wt;  // shared breakpoint node
      } else {
        pos.push_back(x);
        wts.push_back(wt);
      }
    }
  }
}

void quad_disk(const Domain& dom, const BoundaryPartition& part, int N,
               BoundaryQuadrature& q) {
  const double R = dom.radius;
  const double dth = 2.0 * kPi / N;
  double offset = 0.0;
  int m = -1;  // panel count inside the arc
  const bool split = !part.empty() && !part.covers_whole_boundary(dom);
  double arc = 0.0;
  if (split) {
    arc = part.gamma1_measure / R;
    m = (int)std::lround(arc / dth);
    if (m < 1)
      fail(ErrorKind::invalid_argument,
           "boundary_quadrature: N too small to resolve gamma1");
    if (m >= N) m = N - 1;
    arc = m * dth;  // align panel edges with the interface points
    offset = part.arc_center - 0.5 * arc;
  }
  q.gamma1_measure = split ? R * arc
                           : (part.covers_whole_boundary(dom) ? 2.0 * kPi * R : 0.0);
  for (int j = 0; j < N; ++j) {
    const double th = offset + j * dth;
    const Pt n = {std::cos(th), std::sin(th), 0.0};
    q.nodes.push_back({dom.center[0] + R * n[0], dom.center[1] + R * n[1], 0.0});
    q.normals.push_back(n);
    q.weights.push_back(R * dth);
    double frac = 0.0;
    RegionTag tag = RegionTag::gamma2;
    if (part.covers_whole_boundary(dom)) {
      frac = 1.0;
      tag = RegionTag::gamma1;
    } else if (split) {
      if (j == 0 || j == m) {
        frac = 0.5;
        tag = RegionTag::interface_pt;
      } else if (j < m) {
        frac = 1.0;
        tag = RegionTag::gamma1;
      }
    }
    q.gamma1_fraction.push_back(frac);
    q.tags.push_back(tag);
  }
  q.spacing = R * dth;
}

void quad_rect_or_box(const Domain& dom, const BoundaryPartition& part, int N,
                      BoundaryQuadrature& q) {
  const double per = dom.boundary_measure();
  const Pt lo = dom.box_lo();
  q.spacing = 0.0;
  double g1 = 0.0;
  for (int f = 0; f < 2 * dom.dim; ++f) {
    const FaceInfo fi = face_info(dom, f);
    const bool flux_face = (f == part.face) && !part.empty();
    Pt nrm = {0.0, 0.0, 0.0};
    nrm[fi.axis] = fi.low ? -1.0 : 1.0;

    if (dom.dim == 2) {
      const double len = dom.sides[fi.tan[0]];
      std::vector<double> breaks;
      if (flux_face && !part.covers_whole_boundary(dom)) {
        const double c = dom.center[fi.tan[0]] - lo[fi.tan[0]];
        breaks = {c - 0.5 * part.gamma1_measure, c + 0.5 * part.gamma1_measure};
      }
      const int hint = std::max(2, (int)std::lround(N * len / per));
      std::vector<double> pos, wts;
      segment_grid(len, breaks, hint, pos, wts);
      for (std::size_t j = 0; j < pos.size(); ++j) {
        Pt x;
        x[fi.axis] = fi.plane;
        x[fi.tan[0]] = lo[fi.tan[0]] + pos[j];
        x[2] = 0.0;
        q.nodes.push_back(x);
        q.normals.push_back(nrm);
        q.weights.push_back(wts[j]);
        const double frac = part.gamma1_fraction_at(dom, x, 1e-10);
        q.gamma1_fraction.push_back(frac);
        q.tags.push_back(frac >= 1.0 - 1e-12 ? RegionTag::gamma1
                         : frac > 0.0        ? RegionTag::interface_pt
                                             : RegionTag::gamma2);
        g1 += wts[j] * frac;
        q.spacing = std::max(q.spacing, len / hint);
      }
    } else {
      const double l0 = dom.sides[fi.tan[0]], l1 = dom.sides[fi.tan[1]];
      const double area = l0 * l1;
      const int nf = std::max(4, (int)std::lround((double)N * area / per));
      std::vector<double> breaks0, breaks1;
      if (flux_face && !part.covers_whole_boundary(dom)) {
        const double side = std::sqrt(part.gamma1_measure);
        const double c0 = dom.center[fi.tan[0]] - lo[fi.tan[0]];
        const double c1 = dom.center[fi.tan[1]] - lo[fi.tan[1]];
        breaks0 = {c0 - 0.5 * side, c0 + 0.5 * side};
        breaks1 = {c1 - 0.5 * side, c1 + 0.5 * side};
      }
      const int h0 = std::max(2, (int)std::lround(std::sqrt(nf * l0 / l1)));
      const int h1 = std::max(2, (int)std::lround(std::sqrt(nf * l1 / l0)));
      std::vector<double> p0, w0, p1, w1;
      segment_grid(l0, breaks0, h0, p0, w0);
      segment_grid(l1, breaks1, h1, p1, w1);
      for (std::size_t a = 0; a < p0.size(); ++a)
        for (std::size_t b = 0; b < p1.size(); ++b) {
          Pt x;
          x[fi.axis] = fi.plane;
          x[fi.tan[0]] = lo[fi.tan[0]] + p0[a];
          x[fi.tan[1]] = lo[fi.tan[1]] + p1[b];
          q.nodes.push_back(x);
          q.normals.push_back(nrm);
          const double w = w0[a] * w1[b];
          q.weights.push_back(w);
          const double frac = part.gamma1_fraction_at(dom, x, 1e-10);
          q.gamma1_fraction.push_back(frac);
          q.tags.push_back(frac >= 1.0 - 1e-12 ? RegionTag::gamma1
                           : frac > 0.0        ? RegionTag::interface_pt
                                               : RegionTag::gamma2);
          g1 += w * frac;
        }
      q.spacing = std::max({q.spacing, l0 / h0, l1 / h1});
    }
  }
  q.gamma1_measure = g1;
}

void quad_ball(const Domain& dom, const BoundaryPartition& part, int N,
               BoundaryQuadrature& q) {
  const double R = dom.radius;
  // Surface measure is uniform in z (2 pi R per unit height), so a 1-D rule in
  // z crossed with uniform rings integrates exactly in total weight.
  const int nz = std::max(4, (int)std::lround(std::sqrt(N / 2.0)));
  const int nth = std::max(8, (int)((N + nz - 1) / nz));
  std::vector<double> breaks;
  const bool split = !part.empty() && !part.covers_whole_boundary(dom);
  double z0 = 0.0;
  if (split) {
    const double cap_h = part.gamma1_measure / (2.0 * kPi * R);
    z0 = R - cap_h;
    breaks.push_back(z0 + R);  // grid runs over [0, 2R], shifted by +R
  }
  std::vector<double> pos, wts;
  segment_grid(2.0 * R, breaks, nz, pos, wts);
  double g1 = 0.0;
  for (std::size_t j = 0; j < pos.size(); ++j) {
    const double z = pos[j] - R;
    const double rho = std::sqrt(std::max(R * R - z * z, 0.0));
    const double ring_w = 2.0 * kPi * R * wts[j];
    double frac = 0.0;
    RegionTag tag = RegionTag::gamma2;
    if (part.covers_whole_boundary(dom)) {
      frac = 1.0;
      tag = RegionTag::gamma1;
    } else if (split) {
      if (std::abs(z - z0) < 1e-12) {
        frac = 0.5;
        tag = RegionTag::interface_pt;
      } else if (z > z0) {
        frac = 1.0;
        tag = RegionTag::gamma1;
      }
    }
    if (rho < 1e-13) {
      // pole ring collapses to a point
      const Pt n = {0.0, 0.0, z > 0 ? 1.0 : -1.0};
      q.nodes.push_back({dom.center[0], dom.center[1], dom.center[2] + z});
      q.normals.push_back(n);
      q.weights.push_back(ring_w);
      q.gamma1_fraction.push_back(frac);
      q.tags.push_back(tag);
      g1 += ring_w * frac;
      continue;
    }
    for (int i = 0; i < nth; ++i) {
      const double th = (i + 0.5) * 2.0 * kPi / nth;
      const Pt n = {rho * std::cos(th) / R, rho * std::sin(th) / R, z / R};
      q.nodes.push_back({dom.center[0] + rho * std::cos(th),
                         dom.center[1] + rho * std::sin(th), dom.center[2] + z});
      q.normals.push_back(n);
      q.weights.push_back(ring_w / nth);
      q.gamma1_fraction.push_back(frac);
      q.tags.push_back(tag);
      g1 += (ring_w / nth) * frac;
    }
  }
  q.gamma1_measure = g1;
  q.spacing = std::max(2.0 * R / nz, 2.0 * kPi * R / nth);
}

}  // namespace

BoundaryQuadrature boundary_quadrature(const Domain& dom,
                                       const BoundaryPartition& part, int N) {
  if (N < 8) fail(ErrorKind::invalid_argument, "boundary_quadrature: N < 8");
  BoundaryQuadrature q;
  q.dim = dom.dim;
  switch (dom.kind) {
    case DomainKind::disk: quad_disk(dom, part, N, q); break;
    case DomainKind::rectangle:
    case DomainKind::box: quad_rect_or_box(dom, part, N, q); break;
    case DomainKind::ball: quad_ball(dom, part, N, q); break;
  }
  return q;
}

Pt outward_normal(const Domain& dom, const Pt& x, double tol) {
  if (dom.kind == DomainKind::disk || dom.kind == DomainKind::ball) {
    const Pt r = sub(x, dom.center);
    const double d = std::sqrt(norm2sq(r, dom.dim));
    if (std::abs(d - dom.radius) > tol * std::max(1.0, dom.radius))
      fail(ErrorKind::invalid_argument, "outward_normal: point not on the boundary");
    return {r[0] / d, r[1] / d, dom.dim == 3 ? r[2] / d : 0.0};
  }
  const Pt lo = dom.box_lo(), hi = dom.box_hi();
  int face_axis = -1;
  double sign = 0.0;
  for (int a = 0; a < dom.dim; ++a) {
    const bool on_lo = std::abs(x[a] - lo[a]) <= tol;
    const bool on_hi = std::abs(x[a] - hi[a]) <= tol;
    if (on_lo || on_hi) {
      if (face_axis >= 0)
        fail(ErrorKind::invalid_argument,
             "outward_normal: corner/edge point has no unique normal");
      face_axis = a;
      sign = on_lo ? -1.0 : 1.0;
    } else if (x[a] < lo[a] - tol || x[a] > hi[a] + tol) {
      fail(ErrorKind::invalid_argument, "outward_normal: point not on the boundary");
    }
  }
  if (face_axis < 0)
    fail(ErrorKind::invalid_argument, "outward_normal: point not on the boundary");
  Pt n = {0.0, 0.0, 0.0};
  n[face_axis] = sign;
  return n;
}

Pt normal_offset(const Domain& dom, const Pt& x, double h) {
  if (h <= 0.0) fail(ErrorKind::invalid_argument, "normal_offset: h must be > 0");
  const Pt n = outward_normal(dom, x);
  const Pt y = add_scaled(x, -h, n);
  if (dom.boundary_distance(y) <= 0.0)
    fail(ErrorKind::invalid_argument, "normal_offset: offset point leaves the domain");
  return y;
}

}  // namespace blowup
