#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "augls/mesh.hpp"

using namespace augls;

TEST_SUITE("mesh") {

TEST_CASE("initial mesh counts for n=1") {
  const Mesh mesh = initial_square_mesh(1);
  CHECK(mesh.num_triangles() == 8);
  CHECK(mesh.num_vertices() == 9);
  CHECK(mesh.num_edges() == 16);
  CHECK(mesh.total_area() == doctest::Approx(4.0).epsilon(1e-15));
  mesh.audit();
}

TEST_CASE("Euler relation for n=2") {
  const Mesh mesh = initial_square_mesh(2);
  CHECK(mesh.num_vertices() == 25);
  CHECK(mesh.num_edges() == 56);
  CHECK(mesh.num_triangles() == 32);
  CHECK(mesh.num_vertices() - mesh.num_edges() + mesh.num_triangles() == 1);
}

TEST_CASE("empty marked set returns an identical mesh") {
  const Mesh mesh = initial_square_mesh(2);
  const Mesh copy = bisect(mesh, {});
  REQUIRE(copy.num_triangles() == mesh.num_triangles());
  REQUIRE(copy.num_vertices() == mesh.num_vertices());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    CHECK(copy.triangle(t) == mesh.triangle(t));
    CHECK(copy.subdomain_id(t) == mesh.subdomain_id(t));
  }
}

TEST_CASE("marking one triangle bisects exactly the compatible pair") {
  // the two triangles of each square share the diagonal as refinement edge,
  // so marking one forces only its partner: 8 -> 10 triangles
  const Mesh mesh = initial_square_mesh(1);
  const Mesh refined = bisect(mesh, {0});
  CHECK(refined.num_triangles() == 10);
  CHECK(refined.num_vertices() == 10);
  CHECK(refined.num_edges() == 19);
  refined.audit();
}

TEST_CASE("subdomain ids follow the quadrant of the centroid") {
  Mesh mesh = initial_square_mesh(1);
  for (int round = 0; round < 4; ++round) {
    std::vector<int> all(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) all[t] = t;
    mesh = bisect(mesh, all);
  }
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec2 c = mesh.centroid(t);
    const int quadrant = c.x > 0 ? (c.y > 0 ? 1 : 4) : (c.y > 0 ? 2 : 3);
    CHECK(mesh.subdomain_id(t) == quadrant);
  }
}

TEST_CASE("random marking keeps conformity and the angle floor") {
  Mesh mesh = initial_square_mesh(1);
  const double floor = mesh.min_angle() / 2.0;
  std::mt19937 rng(2024);
  for (int round = 0; round < 100; ++round) {
    std::uniform_int_distribution<int> pick(0, mesh.num_triangles() - 1);
    std::set<int> marked;
    for (int i = 0; i < 5; ++i) marked.insert(pick(rng));
    mesh = bisect(mesh, std::vector<int>(marked.begin(), marked.end()));
    mesh.audit();
    REQUIRE(mesh.min_angle() >= floor - 1e-12);
  }
  CHECK(mesh.num_triangles() > 8);
}

TEST_CASE("boundary tags for the mixed layout") {
  const Mesh mesh = initial_square_mesh(1, BcLayout::kBottomDirichlet);
  int dirichlet = 0, neumann = 0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!mesh.edge(e).boundary()) continue;
    if (mesh.boundary_tag(e) == BoundaryTag::kDirichlet) {
      ++dirichlet;
      CHECK(mesh.vertex(mesh.edge(e).v0).y == -1.0);
      CHECK(mesh.vertex(mesh.edge(e).v1).y == -1.0);
    } else {
      ++neumann;
    }
  }
  CHECK(dirichlet == 2);
  CHECK(neumann == 6);
  // tags survive refinement
  const Mesh refined = bisect(mesh, {0, 1, 2, 3, 4, 5, 6, 7});
  for (int e = 0; e < refined.num_edges(); ++e) {
    if (!refined.edge(e).boundary()) continue;
    const bool bottom = refined.vertex(refined.edge(e).v0).y == -1.0 &&
                        refined.vertex(refined.edge(e).v1).y == -1.0;
    CHECK((refined.boundary_tag(e) == BoundaryTag::kDirichlet) == bottom);
  }
}

TEST_CASE("vtk export has the expected sections") {
  const Mesh mesh = initial_square_mesh(1);
  std::vector<double> data(mesh.num_triangles(), 1.5);
  std::ostringstream os;
  write_vtk(os, mesh, &data, "indicator");
  const std::string out = os.str();
  CHECK(out.rfind("# vtk DataFile", 0) == 0);
  CHECK(out.find("POINTS 9 double") != std::string::npos);
  CHECK(out.find("CELLS 8 32") != std::string::npos);
  CHECK(out.find("CELL_TYPES 8") != std::string::npos);
  CHECK(out.find("SCALARS subdomain_id int 1") != std::string::npos);
  CHECK(out.find("SCALARS indicator double 1") != std::string::npos);
}

TEST_CASE("invalid construction and marking are rejected") {
  CHECK_THROWS_AS(initial_square_mesh(0), std::invalid_argument);
  const Mesh mesh = initial_square_mesh(1);
  CHECK_THROWS_AS(bisect(mesh, {99}), std::invalid_argument);
}

}  // TEST_SUITE
