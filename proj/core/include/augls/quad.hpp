#ifndef AUGLS_QUAD_HPP
#define AUGLS_QUAD_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "augls/geometry.hpp"

namespace augls {

/// Quadrature rule on the reference triangle {(0,0),(1,0),(0,1)}.
///
/// Points are stored in barycentric coordinates (l0,l1,l2), weights sum to
/// the reference area 1/2, all weights are positive, and the rule integrates
/// every polynomial of total degree <= exact_degree exactly.
struct QuadRule {
  int exact_degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Returns a cached rule with exactness >= the requested degree.
/// Throws std::invalid_argument for degrees outside 1..20.
const QuadRule& triangle_rule(int exact_degree);

/// Gauss-Legendre nodes/weights on [0,1]; weights sum to 1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Physical point of a barycentric tuple on triangle (p0,p1,p2).
inline Vec2 barycentric_point(const std::array<double, 3>& l, const Vec2& p0, const Vec2& p1,
                              const Vec2& p2) {
  return l[0] * p0 + l[1] * p1 + l[2] * p2;
}

/// Integrates f over the physical triangle (p0,p1,p2) with the given rule.
/// Weights carry the reference area 1/2, so the physical scale is |det J|.
template <class F>
double integrate_triangle(const QuadRule& rule, const Vec2& p0, const Vec2& p1, const Vec2& p2,
                          F&& f) {
  const double jac = std::abs(cross(p1 - p0, p2 - p0));
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    sum += rule.weights[q] * f(barycentric_point(rule.points[q], p0, p1, p2));
  }
  return jac * sum;
}

}  // namespace augls

#endif
