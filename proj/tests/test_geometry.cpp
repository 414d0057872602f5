#include <cmath>

#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "doctest.h"

using namespace blowup;

TEST_CASE("domain measures") {
  const Domain sq = make_rectangle(1.0, 1.0);
  CHECK(sq.boundary_measure() == doctest::Approx(4.0));
  CHECK(sq.volume() == doctest::Approx(1.0));

  const Domain cube = make_box(1.0, 1.0, 1.0);
  CHECK(cube.boundary_measure() == doctest::Approx(6.0));
  CHECK(cube.volume() == doctest::Approx(1.0));

  const Domain disk = make_disk(0.7);
  CHECK(disk.boundary_measure() == doctest::Approx(2.0 * M_PI * 0.7));
  CHECK(disk.volume() == doctest::Approx(M_PI * 0.49));

  const Domain ball = make_ball(0.9);
  CHECK(ball.boundary_measure() == doctest::Approx(4.0 * M_PI * 0.81));
  CHECK(ball.volume() == doctest::Approx(4.0 / 3.0 * M_PI * 0.729));
}

TEST_CASE("make_domain dispatches by kind name") {
  CHECK(make_domain("rectangle", {2.0, 1.0}).boundary_measure() ==
        doctest::Approx(6.0));
  CHECK(make_domain("ball", {1.0}).dim == 3);
  CHECK_THROWS_AS(make_domain("triangle", {1.0}), Error);
}

TEST_CASE("containment, boundary distance and ray exit") {
  const Domain disk = make_disk(1.0);
  CHECK(disk.contains(pt(0.3, 0.1)));
  CHECK(!disk.contains(pt(1.2, 0.0)));
  CHECK(disk.boundary_distance(pt(0.6, 0.0)) == doctest::Approx(0.4));
  CHECK(disk.ray_exit(pt(0.0, 0.0), pt(1.0, 0.0)) == doctest::Approx(1.0));
  CHECK(disk.ray_exit(pt(0.5, 0.0), pt(1.0, 0.0)) == doctest::Approx(0.5));

  const Domain sq = make_rectangle(1.0, 1.0);
  CHECK(sq.boundary_distance(pt(0.3, 0.4)) == doctest::Approx(0.3));
  CHECK(sq.ray_exit(pt(0.5, 0.5), pt(0.0, -1.0)) == doctest::Approx(0.5));
}

TEST_CASE("rectangle partition carries an exact flux share") {
  const Domain sq = make_rectangle(1.0, 1.0);
  const BoundaryPartition part = partition_boundary(sq, 0.5);
  CHECK(part.face == 2);  // low side of the last axis by default
  CHECK(part.gamma1_measure == doctest::Approx(0.5));
  CHECK(!part.empty());
  CHECK(!part.covers_whole_boundary(sq));

  // patch spans x in [0.25, 0.75] on the y = 0 side
  CHECK(part.gamma1_fraction_at(sq, pt(0.5, 0.0)) == doctest::Approx(1.0));
  CHECK(part.gamma1_fraction_at(sq, pt(0.25, 0.0)) == doctest::Approx(0.5));
  CHECK(part.gamma1_fraction_at(sq, pt(0.75, 0.0)) == doctest::Approx(0.5));
  CHECK(part.gamma1_fraction_at(sq, pt(0.1, 0.0)) == doctest::Approx(0.0));
  CHECK(part.gamma1_fraction_at(sq, pt(0.5, 1.0)) == doctest::Approx(0.0));

  const auto pts = part.interface_points(sq);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0][0] == doctest::Approx(0.25));
  CHECK(pts[1][0] == doctest::Approx(0.75));

  CHECK(partition_boundary(sq, 4.0).covers_whole_boundary(sq));
  CHECK(partition_boundary(sq, 0.0).empty());
}

TEST_CASE("box face patch has quarter-weight corners") {
  const Domain cube = make_box(1.0, 1.0, 1.0);
  const BoundaryPartition part = partition_boundary(cube, 0.49);
  CHECK(part.face == 4);  // low side of the z axis
  // patch is the centered 0.7 x 0.7 square of the z = 0 face
  CHECK(part.gamma1_fraction_at(cube, pt(0.5, 0.5, 0.0)) ==
        doctest::Approx(1.0));
  CHECK(part.gamma1_fraction_at(cube, pt(0.15, 0.5, 0.0)) ==
        doctest::Approx(0.5));
  CHECK(part.gamma1_fraction_at(cube, pt(0.15, 0.15, 0.0)) ==
        doctest::Approx(0.25));
  CHECK(part.gamma1_fraction_at(cube, pt(0.1, 0.1, 0.0)) ==
        doctest::Approx(0.0));
  CHECK(part.interface_points(cube).size() == 4);
}

TEST_CASE("disk arc partition marks its endpoints") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition part = partition_boundary(disk, M_PI);
  // arc centered at angle pi: from pi/2 to 3 pi/2
  CHECK(part.gamma1_fraction_at(disk, pt(-1.0, 0.0)) == doctest::Approx(1.0));
  CHECK(part.gamma1_fraction_at(disk, pt(0.0, 1.0)) == doctest::Approx(0.5));
  CHECK(part.gamma1_fraction_at(disk, pt(1.0, 0.0)) == doctest::Approx(0.0));
  const auto pts = part.interface_points(disk);
  REQUIRE(pts.size() == 2);
  for (const Pt& p : pts)
    CHECK(std::fabs(p[0]) + std::fabs(std::fabs(p[1]) - 1.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("boundary quadrature preserves total and patch measure") {
  const Domain disk = make_disk(1.0);
  const BoundaryPartition part = partition_boundary(disk, M_PI);
  const BoundaryQuadrature quad = boundary_quadrature(disk, part, 64);
  CHECK(quad.size() >= 64);
  CHECK(quad.total_weight() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  CHECK(quad.gamma1_weight() == doctest::Approx(M_PI).epsilon(1e-12));
  int interface_nodes = 0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    if (quad.tags[i] == RegionTag::interface_pt) {
      ++interface_nodes;
      CHECK(quad.gamma1_fraction[i] == doctest::Approx(0.5));
    }
  }
  CHECK(interface_nodes == 2);

  const Domain sq = make_rectangle(1.0, 1.0);
  const BoundaryPartition sq_part = partition_boundary(sq, 0.5);
  const BoundaryQuadrature sq_quad = boundary_quadrature(sq, sq_part, 80);
  CHECK(sq_quad.total_weight() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sq_quad.gamma1_weight() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sq_quad.gamma1_measure == doctest::Approx(0.5));
}

TEST_CASE("outward normals and inward offsets") {
  const Domain disk = make_disk(1.0);
  const Pt n = outward_normal(disk, pt(1.0, 0.0));
  CHECK(n[0] == doctest::Approx(1.0));
  CHECK(n[1] == doctest::Approx(0.0).epsilon(1e-12));

  const Pt inner = normal_offset(disk, pt(1.0, 0.0), 0.25);
  CHECK(inner[0] == doctest::Approx(0.75));
  CHECK_THROWS_AS(normal_offset(disk, pt(1.0, 0.0), 3.0), Error);

  const Domain sq = make_rectangle(1.0, 1.0);
  const Pt m = outward_normal(sq, pt(0.5, 0.0));
  CHECK(m[1] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(outward_normal(sq, pt(0.0, 0.0)), Error);  // corner
}
