#include "augls/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace augls {

namespace {

int quadrant_of(const Vec2& p) {
  if (p.x > 0.0 && p.y > 0.0) return 1;
  if (p.x < 0.0 && p.y > 0.0) return 2;
  if (p.x < 0.0 && p.y < 0.0) return 3;
  return 4;
}

BoundaryTag tag_for(const Vec2& a, const Vec2& b, BcLayout layout) {
  if (layout == BcLayout::kAllDirichlet) return BoundaryTag::kDirichlet;
  return (a.y == -1.0 && b.y == -1.0) ? BoundaryTag::kDirichlet : BoundaryTag::kNeumann;
}

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross(b - a, c - a);
}

}  // namespace

double Mesh::area(int t) const {
  const auto& tri = triangles_[t];
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

Vec2 Mesh::centroid(int t) const {
  const auto& tri = triangles_[t];
  return (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < num_triangles(); ++t) sum += area(t);
  return sum;
}

double Mesh::min_angle() const {
  double amin = M_PI;
  for (const auto& tri : triangles_) {
    for (int i = 0; i < 3; ++i) {
      const Vec2& p = vertices_[tri[i]];
      const Vec2 u = vertices_[tri[(i + 1) % 3]] - p;
      const Vec2 v = vertices_[tri[(i + 2) % 3]] - p;
      const double ang = std::atan2(std::abs(cross(u, v)), dot(u, v));
      amin = std::min(amin, ang);
    }
  }
  return amin;
}

void Mesh::finalize() {
  const int nt = num_triangles();
  tri_edges_.assign(nt, {-1, -1, -1});
  edges_.clear();
  std::map<std::pair<int, int>, int> edge_index;
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      int a = tri[(i + 1) % 3];
      int b = tri[(i + 2) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_index.try_emplace({a, b}, static_cast<int>(edges_.size()));
      if (inserted) {
        Edge e;
        e.v0 = a;
        e.v1 = b;
        e.tri[0] = t;
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.tri[1] >= 0) throw std::logic_error("mesh: edge shared by more than two triangles");
        e.tri[1] = t;
      }
      tri_edges_[t][i] = it->second;
    }
  }
  for (Edge& e : edges_) {
    if (e.boundary()) e.tag = tag_for(vertices_[e.v0], vertices_[e.v1], bc_layout_);
  }
  diameter_.assign(nt, 0.0);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    double h = 0.0;
    for (int i = 0; i < 3; ++i) {
      h = std::max(h, norm(vertices_[tri[(i + 1) % 3]] - vertices_[tri[(i + 2) % 3]]));
    }
    diameter_[t] = h;
  }
}

void Mesh::audit() const {
  for (int t = 0; t < num_triangles(); ++t) {
    if (area(t) <= 0.0) throw std::logic_error("mesh audit: nonpositive area in triangle");
    const int sd = subdomain_[t];
    if (sd < 1 || sd > 4) throw std::logic_error("mesh audit: invalid subdomain id");
    for (int i = 0; i < 3; ++i) {
      const Vec2& p = vertices_[triangles_[t][i]];
      // closed-quadrant membership
      const bool ok = (sd == 1 && p.x >= 0 && p.y >= 0) || (sd == 2 && p.x <= 0 && p.y >= 0) ||
                      (sd == 3 && p.x <= 0 && p.y <= 0) || (sd == 4 && p.x >= 0 && p.y <= 0);
      if (!ok) throw std::logic_error("mesh audit: triangle leaves its quadrant");
    }
    double h = 0.0;
    for (int i = 0; i < 3; ++i) {
      h = std::max(h, norm(vertex(triangles_[t][(i + 1) % 3]) - vertex(triangles_[t][(i + 2) % 3])));
    }
    if (h != diameter_[t]) throw std::logic_error("mesh audit: stale diameter");
  }
  for (const Edge& e : edges_) {
    if (e.boundary()) {
      const Vec2& a = vertices_[e.v0];
      const Vec2& b = vertices_[e.v1];
      const bool on_box = (a.x == b.x && std::abs(a.x) == 1.0) || (a.y == b.y && std::abs(a.y) == 1.0);
      // A single-triangle edge off the box boundary is a hanging-node marker.
      if (!on_box) throw std::logic_error("mesh audit: hanging node (interior edge with one triangle)");
    }
  }
  // Euler relation for a simply connected planar triangulation.
  if (num_vertices() - num_edges() + num_triangles() != 1) {
    throw std::logic_error("mesh audit: Euler relation violated");
  }
}

Mesh initial_square_mesh(int n, BcLayout layout) {
  if (n < 1) throw std::invalid_argument("initial_square_mesh: n must be >= 1");
  Mesh mesh;
  mesh.bc_layout_ = layout;
  const int cells = 2 * n;  // per axis
  const double h = 2.0 / cells;
  const auto vid = [&](int i, int j) { return j * (cells + 1) + i; };
  const auto coord = [&](int i) {
    // exact values on the axes and the box keep subdomain alignment and
    // boundary detection bit-exact for every n
    if (i == 0) return -1.0;
    if (i == n) return 0.0;
    if (i == cells) return 1.0;
    return -1.0 + i * h;
  };
  for (int j = 0; j <= cells; ++j) {
    for (int i = 0; i <= cells; ++i) {
      mesh.vertices_.push_back({coord(i), coord(j)});
    }
  }
  for (int j = 0; j < cells; ++j) {
    for (int i = 0; i < cells; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      // split along the (v00,v11) diagonal; peak-first so the diagonal
      // (the longest edge) is the refinement edge of both triangles
      mesh.triangles_.push_back({v10, v11, v00});
      mesh.triangles_.push_back({v01, v00, v11});
    }
  }
  mesh.subdomain_.resize(mesh.triangles_.size());
  for (std::size_t t = 0; t < mesh.triangles_.size(); ++t) {
    mesh.subdomain_[t] = quadrant_of(mesh.centroid(static_cast<int>(t)));
  }
  mesh.finalize();
  return mesh;
}

Mesh bisect(const Mesh& mesh, const std::vector<int>& marked) {
  Mesh out;
  out.bc_layout_ = mesh.bc_layout_;
  out.vertices_ = mesh.vertices_;

  const int ne = mesh.num_edges();
  const int nt = mesh.num_triangles();
  std::vector<char> edge_marked(ne, 0);
  std::vector<int> stack;

  const auto mark_refinement_edge = [&](int t) {
    const int e = mesh.tri_edges_[t][0];
    if (!edge_marked[e]) {
      edge_marked[e] = 1;
      for (int s = 0; s < 2; ++s) {
        const int other = mesh.edges_[e].tri[s];
        if (other >= 0) stack.push_back(other);
      }
    }
  };

  for (int t : marked) {
    if (t < 0 || t >= nt) throw std::invalid_argument("bisect: marked index out of range");
    mark_refinement_edge(t);
  }
  // closure: any triangle with a marked edge must have its refinement edge marked
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    if (edge_marked[mesh.tri_edges_[t][0]]) continue;
    if (edge_marked[mesh.tri_edges_[t][1]] || edge_marked[mesh.tri_edges_[t][2]]) {
      mark_refinement_edge(t);
    }
  }

  // midpoints for marked edges
  std::vector<int> edge_mid(ne, -1);
  for (int e = 0; e < ne; ++e) {
    if (!edge_marked[e]) continue;
    edge_mid[e] = static_cast<int>(out.vertices_.size());
    out.vertices_.push_back(midpoint(mesh.vertices_[mesh.edges_[e].v0], mesh.vertices_[mesh.edges_[e].v1]));
  }

  const auto emit = [&](int a, int b, int c, int sd) {
    out.triangles_.push_back({a, b, c});
    out.subdomain_.push_back(sd);
  };

  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles_[t];
    const int p = tri[0], a = tri[1], b = tri[2];
    const int sd = mesh.subdomain_[t];
    const int e0 = mesh.tri_edges_[t][0];
    if (!edge_marked[e0]) {
      emit(p, a, b, sd);
      continue;
    }
    const int m = edge_mid[e0];
    // left child (m,p,a) has refinement edge (p,a) = parent edge 2,
    // right child (m,b,p) has refinement edge (b,p) = parent edge 1
    const int e1 = mesh.tri_edges_[t][1];
    const int e2 = mesh.tri_edges_[t][2];
    if (edge_marked[e2]) {
      const int m2 = edge_mid[e2];
      emit(m2, m, p, sd);
      emit(m2, a, m, sd);
    } else {
      emit(m, p, a, sd);
    }
    if (edge_marked[e1]) {
      const int m1 = edge_mid[e1];
      emit(m1, m, b, sd);
      emit(m1, p, m, sd);
    } else {
      emit(m, b, p, sd);
    }
  }

  out.finalize();
  return out;
}

void write_vtk(std::ostream& os, const Mesh& mesh, const std::vector<double>* cell_data,
               const std::string& cell_data_name) {
  os << "# vtk DataFile Version 3.0\n";
  os << "augls mesh\n";
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_vertices() << " double\n";
  os.precision(17);
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    os << mesh.vertex(v).x << " " << mesh.vertex(v).y << " 0\n";
  }
  os << "CELLS " << mesh.num_triangles() << " " << 4 * mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    os << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
  }
  os << "CELL_TYPES " << mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) os << "5\n";
  os << "CELL_DATA " << mesh.num_triangles() << "\n";
  os << "SCALARS subdomain_id int 1\nLOOKUP_TABLE default\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) os << mesh.subdomain_id(t) << "\n";
  if (cell_data != nullptr) {
    os << "SCALARS " << cell_data_name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : *cell_data) os << v << "\n";
  }
}

}  // namespace augls
