#include "augls/coeff.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace augls {

SubdomainAdjacency subdomain_adjacency(const Mesh& mesh) {
  SubdomainAdjacency adj;
  std::set<int> ids;
  for (int t = 0; t < mesh.num_triangles(); ++t) ids.insert(mesh.subdomain_id(t));
  adj.ids.assign(ids.begin(), ids.end());

  std::set<std::pair<int, int>> edge_pairs;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.boundary()) continue;
    int a = mesh.subdomain_id(edge.tri[0]);
    int b = mesh.subdomain_id(edge.tri[1]);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    edge_pairs.insert({a, b});
  }

  // subdomains present around each vertex
  std::vector<std::set<int>> at_vertex(mesh.num_vertices());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    for (int i = 0; i < 3; ++i) at_vertex[mesh.triangle(t)[i]].insert(mesh.subdomain_id(t));
  }
  std::set<std::pair<int, int>> vertex_pairs;
  for (const auto& s : at_vertex) {
    for (auto it = s.begin(); it != s.end(); ++it) {
      for (auto jt = std::next(it); jt != s.end(); ++jt) vertex_pairs.insert({*it, *jt});
    }
  }

  adj.edge_adjacent.assign(edge_pairs.begin(), edge_pairs.end());
  adj.vertex_adjacent.assign(vertex_pairs.begin(), vertex_pairs.end());
  return adj;
}

CoefficientField::CoefficientField(std::map<int, double> subdomain_values,
                                   SubdomainAdjacency adjacency)
    : values_(std::move(subdomain_values)), adjacency_(std::move(adjacency)) {
  if (values_.empty()) throw std::invalid_argument("CoefficientField: no subdomain values");
  lambda_min_ = values_.begin()->second;
  lambda_max_ = lambda_min_;
  for (const auto& [id, a] : values_) {
    if (a <= 0.0) throw std::invalid_argument("CoefficientField: alpha must be positive");
    lambda_min_ = std::min(lambda_min_, a);
    lambda_max_ = std::max(lambda_max_, a);
  }
}

double CoefficientField::value(int subdomain) const {
  const auto it = values_.find(subdomain);
  if (it == values_.end()) throw std::out_of_range("CoefficientField: unknown subdomain id");
  return it->second;
}

double alpha_on_element(const CoefficientField& field, const Mesh& mesh, int element) {
  return field.value(mesh.subdomain_id(element));
}

namespace {

// Depth-first enumeration of simple paths from `current` to `target` in the
// edge-adjacency graph, keeping alpha monotone along the way. Nodes are
// 0-based indices into `alpha`. The subdomain graphs here are tiny, so
// exhaustive search is fine.
bool monotone_path(const std::vector<double>& alpha,
                   const std::vector<std::vector<int>>& neighbors, int current, int target,
                   int direction,  // +1 nondecreasing, -1 nonincreasing
                   std::vector<int>& path, std::vector<char>& visited) {
  if (current == target) return true;
  for (int next : neighbors[current]) {
    if (visited[next]) continue;
    const double da = alpha[next] - alpha[current];
    if (direction * da < 0.0) continue;
    visited[next] = 1;
    path.push_back(next);
    if (monotone_path(alpha, neighbors, next, target, direction, path, visited)) return true;
    path.pop_back();
    visited[next] = 0;
  }
  return false;
}

}  // namespace

QmaResult check_qma(const CoefficientField& field) {
  const SubdomainAdjacency& adj = field.adjacency();
  QmaResult result;

  std::map<int, int> index;
  std::vector<double> alpha;
  for (std::size_t i = 0; i < adj.ids.size(); ++i) {
    index[adj.ids[i]] = static_cast<int>(i);
    alpha.push_back(field.value(adj.ids[i]));
  }
  std::vector<std::vector<int>> neighbors(adj.ids.size());
  for (const auto& [a, b] : adj.edge_adjacent) {
    neighbors[index.at(a)].push_back(index.at(b));
    neighbors[index.at(b)].push_back(index.at(a));
  }

  for (const auto& [a, b] : adj.vertex_adjacent) {
    bool found = false;
    for (int direction : {+1, -1}) {
      std::vector<int> path = {index.at(a)};
      std::vector<char> visited(adj.ids.size(), 0);
      visited[index.at(a)] = 1;
      if (monotone_path(alpha, neighbors, index.at(a), index.at(b), direction, path, visited)) {
        std::vector<int> ids;
        for (int i : path) ids.push_back(adj.ids[i]);
        result.paths.push_back(std::move(ids));
        found = true;
        break;
      }
    }
    if (!found) {
      result.satisfied = false;
      result.violating_pair = {a, b};
      result.paths.clear();
      result.note = "no monotone path between subdomains " + std::to_string(a) + " and " +
                    std::to_string(b);
      return result;
    }
  }
  return result;
}

CoefficientField checkerboard_field(double contrast, const Mesh& mesh) {
  std::map<int, double> values = {
      {1, contrast}, {2, 1.0}, {3, contrast}, {4, 1.0}};
  return CoefficientField(std::move(values), subdomain_adjacency(mesh));
}

CoefficientField constant_field(double value, const Mesh& mesh) {
  std::map<int, double> values;
  for (int t = 0; t < mesh.num_triangles(); ++t) values[mesh.subdomain_id(t)] = value;
  return CoefficientField(std::move(values), subdomain_adjacency(mesh));
}

}  // namespace augls
