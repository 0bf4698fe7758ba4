#include "augls/quad.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace augls {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n must be positive");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton iteration on P_n over [-1,1], then map to [0,1].
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    const double w = 1.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

void push_orbit1(QuadRule& r, double w) {
  r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  r.weights.push_back(w);
}

// Three permutations of (1-2a, a, a).
void push_orbit3(QuadRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({b, a, a});
  r.points.push_back({a, b, a});
  r.points.push_back({a, a, b});
  r.weights.insert(r.weights.end(), 3, w);
}

QuadRule centroid_rule() {
  QuadRule r;
  r.exact_degree = 1;
  push_orbit1(r, 0.5);
  return r;
}

QuadRule degree2_rule() {
  QuadRule r;
  r.exact_degree = 2;
  push_orbit3(r, 1.0 / 6.0, 1.0 / 6.0);
  return r;
}

QuadRule degree4_rule() {
  QuadRule r;
  r.exact_degree = 4;
  push_orbit3(r, 0.44594849091596488, 0.5 * 0.22338158967801146);
  push_orbit3(r, 0.09157621350977074, 0.5 * 0.10995174365532187);
  return r;
}

QuadRule degree5_rule() {
  QuadRule r;
  r.exact_degree = 5;
  const double s15 = std::sqrt(15.0);
  push_orbit1(r, 0.5 * (9.0 / 40.0));
  push_orbit3(r, (6.0 + s15) / 21.0, 0.5 * (155.0 + s15) / 1200.0);
  push_orbit3(r, (6.0 - s15) / 21.0, 0.5 * (155.0 - s15) / 1200.0);
  return r;
}

// Collapsed Gauss product rule on the triangle, symmetrized over the three
// cyclic barycentric images so the rule is invariant under vertex relabeling.
// With the (xi,eta) -> (xi(1-eta), eta) map the Jacobian adds one degree in
// eta, hence the eta rule uses one extra point.
QuadRule collapsed_rule(int degree) {
  const int n_xi = (degree + 2) / 2;       // 2*n-1 >= degree
  const int n_eta = (degree + 3) / 2;      // 2*n-1 >= degree+1
  std::vector<double> xs, ws, ys, wy;
  gauss_legendre_01(n_xi, xs, ws);
  gauss_legendre_01(n_eta, ys, wy);

  QuadRule r;
  r.exact_degree = degree;
  for (int i = 0; i < n_xi; ++i) {
    for (int j = 0; j < n_eta; ++j) {
      const double x = xs[i] * (1.0 - ys[j]);
      const double y = ys[j];
      // the (1-eta) Jacobian of the collapse map carries the reference area
      const double w = ws[i] * wy[j] * (1.0 - ys[j]);
      const std::array<double, 3> l = {1.0 - x - y, x, y};
      // cyclic images (l0,l1,l2), (l1,l2,l0), (l2,l0,l1)
      r.points.push_back({l[0], l[1], l[2]});
      r.points.push_back({l[1], l[2], l[0]});
      r.points.push_back({l[2], l[0], l[1]});
      r.weights.insert(r.weights.end(), 3, w / 3.0);
    }
  }
  return r;
}

}  // namespace

const QuadRule& triangle_rule(int exact_degree) {
  if (exact_degree < 1 || exact_degree > 20) {
    throw std::invalid_argument("triangle_rule: unsupported exactness degree " +
                                std::to_string(exact_degree));
  }
  static std::map<int, QuadRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(exact_degree);
  if (it != cache.end()) return it->second;

  QuadRule rule;
  switch (exact_degree) {
    case 1:
      rule = centroid_rule();
      break;
    case 2:
      rule = degree2_rule();
      break;
    case 3:
    case 4:
      rule = degree4_rule();
      break;
    case 5:
      rule = degree5_rule();
      break;
    default:
      rule = collapsed_rule(exact_degree);
      break;
  }
  return cache.emplace(exact_degree, std::move(rule)).first->second;
}

}  // namespace augls
