#ifndef AUGLS_MESH_HPP
#define AUGLS_MESH_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "augls/geometry.hpp"

namespace augls {

enum class BoundaryTag { kDirichlet, kNeumann };

/// Boundary tagging policy for the square (-1,1)^2.
///  kAllDirichlet   : the whole boundary is Dirichlet.
///  kBottomDirichlet: Dirichlet on {y = -1}, Neumann on the rest.
enum class BcLayout { kAllDirichlet, kBottomDirichlet };

struct Edge {
  int v0 = -1;  // v0 < v1
  int v1 = -1;
  int tri[2] = {-1, -1};  // adjacent triangles, tri[1] = -1 on the boundary
  BoundaryTag tag = BoundaryTag::kDirichlet;  // meaningful for boundary edges

  bool boundary() const { return tri[1] < 0; }
};

/// Conforming triangulation of (-1,1)^2 with newest-vertex bisection.
///
/// Triangles are stored peak-first: the refinement edge of every triangle is
/// the edge opposite local vertex 0, so bisection inserts the midpoint of
/// (v1,v2) and that midpoint becomes the peak of both children. Vertex
/// triples are counterclockwise. Meshes are immutable; bisect() returns a
/// new mesh.
class Mesh {
 public:
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }
  BoundaryTag boundary_tag(int e) const { return edges_[e].tag; }

  /// Global edge index opposite local vertex i of triangle t.
  int triangle_edge(int t, int i) const { return tri_edges_[t][i]; }

  /// Local index of the refinement edge (edge opposite the peak vertex).
  int refinement_edge(int /*t*/) const { return 0; }

  int subdomain_id(int t) const { return subdomain_[t]; }

  /// Longest edge length of triangle t.
  double diameter(int t) const { return diameter_[t]; }
  double area(int t) const;
  Vec2 centroid(int t) const;

  BcLayout bc_layout() const { return bc_layout_; }

  /// Verifies all structural invariants (orientation, conformity, subdomain
  /// alignment, boundary tagging, diameters). Throws std::logic_error with a
  /// description on the first violation.
  void audit() const;

  /// Smallest interior angle over all triangles, in radians.
  double min_angle() const;

  double total_area() const;

  friend Mesh initial_square_mesh(int n, BcLayout layout);
  friend Mesh bisect(const Mesh& mesh, const std::vector<int>& marked);

 private:
  void finalize();  // builds edges, adjacency, diameters

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> subdomain_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<double> diameter_;
  BcLayout bc_layout_ = BcLayout::kAllDirichlet;
};

/// Uniform mesh of (-1,1)^2: (2n)x(2n) squares, each split along the
/// lower-left/upper-right diagonal. Subdomain ids are the polar quadrants
/// 1..4; refinement edges are the longest edges (the diagonals).
Mesh initial_square_mesh(int n, BcLayout layout = BcLayout::kAllDirichlet);

/// Newest-vertex bisection of the marked triangles with recursive closure.
/// An empty marked set returns a copy of the input mesh.
Mesh bisect(const Mesh& mesh, const std::vector<int>& marked);

/// Legacy-ASCII VTK export. cell_data, when present, must have one value per
/// triangle and is written as an extra CELL_DATA scalar field.
void write_vtk(std::ostream& os, const Mesh& mesh, const std::vector<double>* cell_data = nullptr,
               const std::string& cell_data_name = "indicator");

}  // namespace augls

#endif
