#ifndef AUGLS_FEMSPACE_HPP
#define AUGLS_FEMSPACE_HPP

#include <array>
#include <vector>

#include "augls/geometry.hpp"
#include "augls/mesh.hpp"
#include "augls/quad.hpp"

namespace augls {

enum class Family { kRt0P1, kBdm1P2 };

/// H(div)-conforming flux space x H1-conforming potential space on a mesh.
///
/// Flux dofs are edge functionals against the global edge normal (outward of
/// the lower-index adjacent triangle, outward of the domain on the boundary):
///   RT0 : one dof per edge, the mean normal flux over the edge;
///   BDM1: two dofs per edge, mean moments against 1 and (2t-1) where t
///         parameterizes the edge from its lower to its higher vertex index.
/// Mean (not total) moments keep the dual basis O(1) pointwise, so matrix
/// entries stay bounded on deeply graded meshes. Potential dofs are vertex
/// values (P1) plus edge-midpoint values (P2). The shared functionals make
/// assembled flux fields normal-continuous.
struct SpacePair {
  Family family = Family::kRt0P1;
  const Mesh* mesh = nullptr;

  int n_flux_dofs = 0;
  int n_pot_dofs = 0;

  std::vector<int> essential_flux_dofs;  // on Neumann boundary edges, sorted
  std::vector<int> essential_pot_dofs;   // on Dirichlet boundary closure, sorted

  int flux_dofs_per_element() const { return family == Family::kRt0P1 ? 3 : 6; }
  int pot_dofs_per_element() const { return family == Family::kRt0P1 ? 3 : 6; }

  /// Global flux dof of local flux dof j on element t.
  int flux_dof(int t, int j) const;
  /// Global potential dof of local potential dof j on element t.
  int pot_dof(int t, int j) const;
};

SpacePair build_space_pair(const Mesh& mesh, Family family);

/// Unit global normal of edge e (see SpacePair docs for the orientation).
Vec2 edge_normal(const Mesh& mesh, int e);

/// Flux basis restricted to one element, evaluated at a set of barycentric
/// points. value[q][j] is basis function j at point q; the divergence of
/// every basis function is constant on the element.
struct ElementFluxBasis {
  int n = 0;
  std::array<int, 6> global = {-1, -1, -1, -1, -1, -1};
  std::vector<std::array<Vec2, 6>> value;
  std::array<double, 6> div = {};
};

/// Potential basis restricted to one element at a set of barycentric points.
struct ElementPotentialBasis {
  int n = 0;
  std::array<int, 6> global = {-1, -1, -1, -1, -1, -1};
  std::vector<std::array<double, 6>> value;
  std::vector<std::array<Vec2, 6>> grad;
};

ElementFluxBasis flux_basis(const SpacePair& space, int t,
                            const std::vector<std::array<double, 3>>& bary_points);
ElementPotentialBasis potential_basis(const SpacePair& space, int t,
                                      const std::vector<std::array<double, 3>>& bary_points);

/// Canonical interpolations. The flux variant integrates the edge moments of
/// the target field; the potential variant samples nodal values.
std::vector<double> interpolate_flux(const SpacePair& space, const VectorField& target);
std::vector<double> interpolate_potential(const SpacePair& space, const ScalarField& target);

/// Discrete field evaluation from coefficient arrays.
Vec2 eval_flux(const SpacePair& space, int t, const std::array<double, 3>& bary,
               const std::vector<double>& coeffs);
double eval_div_flux(const SpacePair& space, int t, const std::vector<double>& coeffs);
double eval_potential(const SpacePair& space, int t, const std::array<double, 3>& bary,
                      const std::vector<double>& coeffs);
Vec2 eval_grad_potential(const SpacePair& space, int t, const std::array<double, 3>& bary,
                         const std::vector<double>& coeffs);

/// Discrete solution attached to its space.
struct SolutionPair {
  const SpacePair* space = nullptr;
  std::vector<double> flux;  // n_flux_dofs coefficients
  std::vector<double> pot;   // n_pot_dofs coefficients
};

}  // namespace augls

#endif
