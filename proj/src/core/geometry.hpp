// Computational domains (rectangle/box/disk/ball), the Gamma1/Gamma2 boundary
// split with its interface set, outward normals, inward offset points, and
// boundary quadrature rules.  Everything here is immutable once built.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/num.hpp"

namespace blowup {

enum class DomainKind { rectangle, box, disk, ball };

struct Domain {
  DomainKind kind = DomainKind::rectangle;
  int dim = 2;
  Pt center = {0.0, 0.0, 0.0};
  std::array<double, 3> sides = {1.0, 1.0, 1.0};  // rectangle / box
  double radius = 1.0;                            // disk / ball

  double boundary_measure() const;
  double volume() const;
  bool is_smooth() const { return kind == DomainKind::disk || kind == DomainKind::ball; }

  // Axis-aligned bounding box.
  Pt box_lo() const;
  Pt box_hi() const;

  bool contains(const Pt& x, double tol = 0.0) const;
  // Distance from an interior point to the boundary (>= 0 inside).
  double boundary_distance(const Pt& x) const;
  // First exit parameter t > 0 with x + t*dir on the boundary, for x inside
  // or on the boundary moving inward.  dir need not be unit length.
  double ray_exit(const Pt& x, const Pt& dir) const;
};

Domain make_rectangle(double sx, double sy, Pt center = {0.5, 0.5, 0.0});
Domain make_box(double sx, double sy, double sz, Pt center = {0.5, 0.5, 0.5});
Domain make_disk(double radius, Pt center = {0.0, 0.0, 0.0});
Domain make_ball(double radius, Pt center = {0.0, 0.0, 0.0});
// Dispatch by kind name ("rectangle", "box", "disk", "ball") as used by the
// run-configuration loader.
Domain make_domain(const std::string& kind, const std::vector<double>& dims);

// Gamma1 is a single patch: a centered sub-interval of one rectangle face, a
// centered sub-square of one box face, an arc of the circle, or a polar cap of
// the sphere.  The interface set is the patch's relative boundary.
struct BoundaryPartition {
  double gamma1_measure = 0.0;
  // Rectangle/box: face index f in [0, 2*dim); axis f/2, low side when f%2==0.
  // The default flux face is the low side of the last axis.
  int face = 0;
  // Disk: angular position of the arc midpoint.  Ball: cap around +z pole.
  double arc_center = M_PI;

  // Fraction of the flux that a boundary point at x carries: 1 strictly inside
  // the patch, 0 outside, 1/2 on a patch edge, 1/4 at a patch corner (box
  // face).  This makes the discrete flux measure match |Gamma1| exactly.
  double gamma1_fraction_at(const Domain& dom, const Pt& x, double tol = 1e-12) const;

  // The interface points Gamma~ (patch endpoints in 2-D, patch corners for a
  // box face, two diametral points of the cap edge circle for a ball).
  std::vector<Pt> interface_points(const Domain& dom) const;

  bool empty() const { return gamma1_measure <= 0.0; }
  bool covers_whole_boundary(const Domain& dom) const;
};

BoundaryPartition partition_boundary(const Domain& dom, double gamma1_measure,
                                     int face = -1);

enum class RegionTag { gamma1, gamma2, interface_pt };

struct BoundaryQuadrature {
  int dim = 2;
  std::vector<Pt> nodes;
  std::vector<Pt> normals;
  std::vector<double> weights;
  std::vector<RegionTag> tags;
  // Share of each node's weight attributed to Gamma1 (interface nodes carry
  // half weight to each side; a box-face patch corner carries a quarter).
  std::vector<double> gamma1_fraction;
  double spacing = 0.0;  // representative panel width
  // Measure actually realized for Gamma1 after aligning panel edges to the
  // interface (equals the requested measure whenever the patch is resolvable).
  double gamma1_measure = 0.0;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
  double gamma1_weight() const;
};

// Uniform-panel boundary rule with nodes aligned so that interface points are
// quadrature nodes.  N is the requested total node count (N >= 8).
BoundaryQuadrature boundary_quadrature(const Domain& dom,
                                       const BoundaryPartition& part, int N);

// Outward unit normal at a boundary point.  Fails on rectangle/box corners
// and edges, where the normal is not defined.
Pt outward_normal(const Domain& dom, const Pt& x, double tol = 1e-9);

// x_h = x - h * n(x): the inward offset used by the normal-derivative limits.
// Fails if the result does not land strictly inside the domain.
Pt normal_offset(const Domain& dom, const Pt& x, double h);

}  // namespace blowup
