#ifndef AUGLS_COEFF_HPP
#define AUGLS_COEFF_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "augls/mesh.hpp"

namespace augls {

/// Which subdomain pairs touch, and how. Pairs are stored with first < second.
struct SubdomainAdjacency {
  std::vector<int> ids;                              // sorted subdomain ids
  std::vector<std::pair<int, int>> edge_adjacent;    // share at least one mesh edge
  std::vector<std::pair<int, int>> vertex_adjacent;  // share at least one vertex
};

SubdomainAdjacency subdomain_adjacency(const Mesh& mesh);

/// Piecewise-constant scalar diffusion coefficient alpha, one positive value
/// per subdomain. With A = alpha*I this is trace(A)/2 everywhere.
class CoefficientField {
 public:
  CoefficientField(std::map<int, double> subdomain_values, SubdomainAdjacency adjacency);

  double value(int subdomain) const;
  double lambda_min() const { return lambda_min_; }
  double lambda_max() const { return lambda_max_; }
  const SubdomainAdjacency& adjacency() const { return adjacency_; }
  const std::map<int, double>& subdomain_values() const { return values_; }

 private:
  std::map<int, double> values_;
  SubdomainAdjacency adjacency_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

double alpha_on_element(const CoefficientField& field, const Mesh& mesh, int element);

/// Quasi-monotonicity check. For every pair of subdomains touching in at
/// least a point there must be a path through edge-adjacent subdomains along
/// which alpha is monotone. When satisfied, `paths` holds one monotone path
/// per touching pair; otherwise `violating_pair` names one pair without any
/// monotone path.
struct QmaResult {
  bool satisfied = true;
  std::vector<std::vector<int>> paths;
  std::pair<int, int> violating_pair = {-1, -1};
  std::string note;
};

QmaResult check_qma(const CoefficientField& field);

/// The four-quadrant checkerboard: alpha = R in quadrants 1 and 3, 1 in
/// quadrants 2 and 4.
CoefficientField checkerboard_field(double contrast, const Mesh& mesh);

/// alpha identically equal to `value` on all subdomains seen in the mesh.
CoefficientField constant_field(double value, const Mesh& mesh);

}  // namespace augls

#endif
