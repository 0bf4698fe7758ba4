#include "augls/femspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augls {

namespace {

// 2-point Gauss on [0,1]: exact through degree 3, enough for the BDM dual
// basis (P1 trace times a linear weight). Interpolation of general fields
// uses the richer rule below.
constexpr int kDualBasisGauss = 2;
constexpr int kInterpGauss = 8;

struct EdgeFrame {
  Vec2 a;        // lower-index vertex
  Vec2 b;        // higher-index vertex
  Vec2 normal;   // global unit normal
  double length;
};

EdgeFrame edge_frame(const Mesh& mesh, int e) {
  const Edge& edge = mesh.edge(e);
  EdgeFrame f;
  f.a = mesh.vertex(edge.v0);
  f.b = mesh.vertex(edge.v1);
  const Vec2 tangent = f.b - f.a;
  f.length = norm(tangent);
  Vec2 n{tangent.y / f.length, -tangent.x / f.length};
  // orient outward of the lower-index adjacent triangle
  const int t0 = edge.tri[0];
  const auto& tri = mesh.triangle(t0);
  int opp = -1;
  for (int i = 0; i < 3; ++i) {
    if (tri[i] != edge.v0 && tri[i] != edge.v1) opp = tri[i];
  }
  const Vec2 mid = midpoint(f.a, f.b);
  if (dot(n, mesh.vertex(opp) - mid) > 0.0) n = -1.0 * n;
  f.normal = n;
  return f;
}

// Solves the 6x6 system A x = e_k for all k (returns the inverse), plain
// Gaussian elimination with partial pivoting.
std::array<std::array<double, 6>, 6> invert6(std::array<std::array<double, 6>, 6> a) {
  std::array<std::array<double, 6>, 6> inv{};
  for (int i = 0; i < 6; ++i) inv[i][i] = 1.0;
  for (int col = 0; col < 6; ++col) {
    int piv = col;
    for (int r = col + 1; r < 6; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (a[piv][col] == 0.0) throw std::logic_error("BDM dual basis: singular moment matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (int c = 0; c < 6; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < 6; ++r) {
      if (r == col) continue;
      const double m = a[r][col];
      if (m == 0.0) continue;
      for (int c = 0; c < 6; ++c) {
        a[r][c] -= m * a[col][c];
        inv[r][c] -= m * inv[col][c];
      }
    }
  }
  return inv;
}

// Scaled monomial basis of P1(K)^2 around the element centroid.
struct MonomialFrame {
  Vec2 center;
  double scale;
};

Vec2 monomial_value(int k, const Vec2& x, const MonomialFrame& fr) {
  const double X = (x.x - fr.center.x) / fr.scale;
  const double Y = (x.y - fr.center.y) / fr.scale;
  switch (k) {
    case 0: return {1.0, 0.0};
    case 1: return {X, 0.0};
    case 2: return {Y, 0.0};
    case 3: return {0.0, 1.0};
    case 4: return {0.0, X};
    default: return {0.0, Y};
  }
}

double monomial_div(int k, const MonomialFrame& fr) {
  if (k == 1 || k == 5) return 1.0 / fr.scale;
  return 0.0;
}

// Per-element BDM1 dual basis: coefficients (in the scaled monomial basis) of
// the six basis functions dual to the edge-moment dofs.
struct BdmElementBasis {
  MonomialFrame frame;
  std::array<std::array<double, 6>, 6> coeff;  // coeff[d][k]
};

BdmElementBasis bdm_element_basis(const Mesh& mesh, int t) {
  BdmElementBasis out;
  out.frame.center = mesh.centroid(t);
  out.frame.scale = mesh.diameter(t);

  std::vector<double> gx, gw;
  gauss_legendre_01(kDualBasisGauss, gx, gw);

  std::array<std::array<double, 6>, 6> dofmat{};  // dofmat[d][k] = dof_d(m_k)
  for (int i = 0; i < 3; ++i) {
    const int e = mesh.triangle_edge(t, i);
    const EdgeFrame fr = edge_frame(mesh, e);
    for (int k = 0; k < 6; ++k) {
      double m0 = 0.0, m1 = 0.0;
      for (int q = 0; q < kDualBasisGauss; ++q) {
        const Vec2 x = fr.a + gx[q] * (fr.b - fr.a);
        const double vn = dot(monomial_value(k, x, out.frame), fr.normal);
        m0 += gw[q] * vn;
        m1 += gw[q] * vn * (2.0 * gx[q] - 1.0);
      }
      dofmat[2 * i][k] = m0;
      dofmat[2 * i + 1][k] = m1;
    }
  }
  const auto inv = invert6(dofmat);
  // columns of the inverse are the dual-basis coefficient vectors
  for (int d = 0; d < 6; ++d) {
    for (int k = 0; k < 6; ++k) out.coeff[d][k] = inv[k][d];
  }
  return out;
}

Vec2 bdm_value(const BdmElementBasis& b, int d, const Vec2& x) {
  Vec2 v{0.0, 0.0};
  for (int k = 0; k < 6; ++k) {
    if (b.coeff[d][k] != 0.0) v += b.coeff[d][k] * monomial_value(k, x, b.frame);
  }
  return v;
}

double bdm_div(const BdmElementBasis& b, int d) {
  double s = 0.0;
  for (int k = 0; k < 6; ++k) s += b.coeff[d][k] * monomial_div(k, b.frame);
  return s;
}

// Gradients of the barycentric coordinates on element t.
std::array<Vec2, 3> barycentric_gradients(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangle(t);
  const Vec2 p0 = mesh.vertex(tri[0]), p1 = mesh.vertex(tri[1]), p2 = mesh.vertex(tri[2]);
  const double det = cross(p1 - p0, p2 - p0);  // 2*area, positive
  // grad lambda_i is the inward-scaled normal of the opposite edge
  const auto g = [&](const Vec2& a, const Vec2& b) {
    return Vec2{(a.y - b.y) / det, (b.x - a.x) / det};
  };
  return {g(p1, p2), g(p2, p0), g(p0, p1)};
}

}  // namespace

Vec2 edge_normal(const Mesh& mesh, int e) { return edge_frame(mesh, e).normal; }

int SpacePair::flux_dof(int t, int j) const {
  if (family == Family::kRt0P1) return mesh->triangle_edge(t, j);
  return 2 * mesh->triangle_edge(t, j / 2) + (j % 2);
}

int SpacePair::pot_dof(int t, int j) const {
  if (j < 3) return mesh->triangle(t)[j];
  return mesh->num_vertices() + mesh->triangle_edge(t, j - 3);
}

SpacePair build_space_pair(const Mesh& mesh, Family family) {
  SpacePair sp;
  sp.family = family;
  sp.mesh = &mesh;
  const int ne = mesh.num_edges();
  const int nv = mesh.num_vertices();
  sp.n_flux_dofs = family == Family::kRt0P1 ? ne : 2 * ne;
  sp.n_pot_dofs = family == Family::kRt0P1 ? nv : nv + ne;

  std::vector<char> pot_essential(sp.n_pot_dofs, 0);
  for (int e = 0; e < ne; ++e) {
    const Edge& edge = mesh.edge(e);
    if (!edge.boundary()) continue;
    if (edge.tag == BoundaryTag::kDirichlet) {
      pot_essential[edge.v0] = 1;
      pot_essential[edge.v1] = 1;
      if (family == Family::kBdm1P2) pot_essential[nv + e] = 1;
    } else {
      if (family == Family::kRt0P1) {
        sp.essential_flux_dofs.push_back(e);
      } else {
        sp.essential_flux_dofs.push_back(2 * e);
        sp.essential_flux_dofs.push_back(2 * e + 1);
      }
    }
  }
  for (int d = 0; d < sp.n_pot_dofs; ++d) {
    if (pot_essential[d]) sp.essential_pot_dofs.push_back(d);
  }
  std::sort(sp.essential_flux_dofs.begin(), sp.essential_flux_dofs.end());
  return sp;
}

ElementFluxBasis flux_basis(const SpacePair& space, int t,
                            const std::vector<std::array<double, 3>>& bary_points) {
  const Mesh& mesh = *space.mesh;
  const auto& tri = mesh.triangle(t);
  const Vec2 p[3] = {mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2])};
  const double area = mesh.area(t);

  ElementFluxBasis out;
  out.n = space.flux_dofs_per_element();
  for (int j = 0; j < out.n; ++j) out.global[j] = space.flux_dof(t, j);
  out.value.resize(bary_points.size());

  if (space.family == Family::kRt0P1) {
    // sign: +1 when t is the lower-index triangle of the edge; scaling by the
    // edge length keeps the basis O(1) (unit normal trace), which keeps the
    // div-div entries bounded on deeply graded meshes
    double scaled_sign[3];
    for (int i = 0; i < 3; ++i) {
      const Edge& e = mesh.edge(mesh.triangle_edge(t, i));
      const double len = norm(mesh.vertex(e.v1) - mesh.vertex(e.v0));
      scaled_sign[i] = (e.tri[0] == t ? 1.0 : -1.0) * len;
      out.div[i] = scaled_sign[i] / area;
    }
    for (std::size_t q = 0; q < bary_points.size(); ++q) {
      const Vec2 x = barycentric_point(bary_points[q], p[0], p[1], p[2]);
      for (int i = 0; i < 3; ++i) {
        out.value[q][i] = (scaled_sign[i] / (2.0 * area)) * (x - p[i]);
      }
    }
  } else {
    const BdmElementBasis basis = bdm_element_basis(mesh, t);
    for (int d = 0; d < 6; ++d) out.div[d] = bdm_div(basis, d);
    for (std::size_t q = 0; q < bary_points.size(); ++q) {
      const Vec2 x = barycentric_point(bary_points[q], p[0], p[1], p[2]);
      for (int d = 0; d < 6; ++d) out.value[q][d] = bdm_value(basis, d, x);
    }
  }
  return out;
}

ElementPotentialBasis potential_basis(const SpacePair& space, int t,
                                      const std::vector<std::array<double, 3>>& bary_points) {
  const Mesh& mesh = *space.mesh;
  const auto grad_l = barycentric_gradients(mesh, t);

  ElementPotentialBasis out;
  out.n = space.pot_dofs_per_element();
  for (int j = 0; j < out.n; ++j) out.global[j] = space.pot_dof(t, j);
  out.value.resize(bary_points.size());
  out.grad.resize(bary_points.size());

  for (std::size_t q = 0; q < bary_points.size(); ++q) {
    const auto& l = bary_points[q];
    if (space.family == Family::kRt0P1) {
      for (int i = 0; i < 3; ++i) {
        out.value[q][i] = l[i];
        out.grad[q][i] = grad_l[i];
      }
    } else {
      for (int i = 0; i < 3; ++i) {
        out.value[q][i] = l[i] * (2.0 * l[i] - 1.0);
        out.grad[q][i] = (4.0 * l[i] - 1.0) * grad_l[i];
      }
      // edge function for local edge i lives on the edge opposite vertex i,
      // i.e. between local vertices i+1 and i+2
      for (int i = 0; i < 3; ++i) {
        const int a = (i + 1) % 3, b = (i + 2) % 3;
        out.value[q][3 + i] = 4.0 * l[a] * l[b];
        out.grad[q][3 + i] = 4.0 * (l[b] * grad_l[a] + l[a] * grad_l[b]);
      }
    }
  }
  return out;
}

std::vector<double> interpolate_flux(const SpacePair& space, const VectorField& target) {
  const Mesh& mesh = *space.mesh;
  std::vector<double> dofs(space.n_flux_dofs, 0.0);
  std::vector<double> gx, gw;
  gauss_legendre_01(kInterpGauss, gx, gw);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const EdgeFrame fr = edge_frame(mesh, e);
    double m0 = 0.0, m1 = 0.0;
    for (int q = 0; q < kInterpGauss; ++q) {
      const Vec2 x = fr.a + gx[q] * (fr.b - fr.a);
      const double vn = dot(target(x), fr.normal);
      m0 += gw[q] * vn;
      m1 += gw[q] * vn * (2.0 * gx[q] - 1.0);
    }
    if (space.family == Family::kRt0P1) {
      dofs[e] = m0;
    } else {
      dofs[2 * e] = m0;
      dofs[2 * e + 1] = m1;
    }
  }
  return dofs;
}

std::vector<double> interpolate_potential(const SpacePair& space, const ScalarField& target) {
  const Mesh& mesh = *space.mesh;
  std::vector<double> dofs(space.n_pot_dofs, 0.0);
  for (int v = 0; v < mesh.num_vertices(); ++v) dofs[v] = target(mesh.vertex(v));
  if (space.family == Family::kBdm1P2) {
    for (int e = 0; e < mesh.num_edges(); ++e) {
      const Edge& edge = mesh.edge(e);
      dofs[mesh.num_vertices() + e] = target(midpoint(mesh.vertex(edge.v0), mesh.vertex(edge.v1)));
    }
  }
  return dofs;
}

Vec2 eval_flux(const SpacePair& space, int t, const std::array<double, 3>& bary,
               const std::vector<double>& coeffs) {
  const ElementFluxBasis b = flux_basis(space, t, {bary});
  Vec2 v{0.0, 0.0};
  for (int j = 0; j < b.n; ++j) v += coeffs[b.global[j]] * b.value[0][j];
  return v;
}

double eval_div_flux(const SpacePair& space, int t, const std::vector<double>& coeffs) {
  const ElementFluxBasis b = flux_basis(space, t, {{1.0 / 3, 1.0 / 3, 1.0 / 3}});
  double s = 0.0;
  for (int j = 0; j < b.n; ++j) s += coeffs[b.global[j]] * b.div[j];
  return s;
}

double eval_potential(const SpacePair& space, int t, const std::array<double, 3>& bary,
                      const std::vector<double>& coeffs) {
  const ElementPotentialBasis b = potential_basis(space, t, {bary});
  double s = 0.0;
  for (int j = 0; j < b.n; ++j) s += coeffs[b.global[j]] * b.value[0][j];
  return s;
}

Vec2 eval_grad_potential(const SpacePair& space, int t, const std::array<double, 3>& bary,
                         const std::vector<double>& coeffs) {
  const ElementPotentialBasis b = potential_basis(space, t, {bary});
  Vec2 v{0.0, 0.0};
  for (int j = 0; j < b.n; ++j) v += coeffs[b.global[j]] * b.grad[0][j];
  return v;
}

}  // namespace augls
