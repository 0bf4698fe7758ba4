#include "augls/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "augls/quad.hpp"

namespace augls {

namespace {

struct Triangle {
  Vec2 p0, p1, p2;
};

std::array<double, 3> barycentric_of(const Triangle& tri, const Vec2& x) {
  const double det = cross(tri.p1 - tri.p0, tri.p2 - tri.p0);
  const double l1 = cross(x - tri.p0, tri.p2 - tri.p0) / det;
  const double l2 = cross(tri.p1 - tri.p0, x - tri.p0) / det;
  return {1.0 - l1 - l2, l1, l2};
}

int origin_vertex(const Mesh& mesh, int t) {
  const auto& tri = mesh.triangle(t);
  for (int i = 0; i < 3; ++i) {
    const Vec2& v = mesh.vertex(tri[i]);
    if (v.x == 0.0 && v.y == 0.0) return i;
  }
  return -1;
}

/// Visits quadrature points x with weights w (including the Jacobian) that
/// integrate over element t. Elements touching the origin are covered by a
/// dyadic subdivision graded into the origin corner when `graded` is set.
template <class F>
void for_each_quad_point(const Mesh& mesh, int t, const SingularQuadPolicy& policy, bool graded,
                         F&& visit) {
  const QuadRule& rule = triangle_rule(policy.degree);
  const auto& tri = mesh.triangle(t);
  const Vec2 p[3] = {mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2])};

  const auto visit_cell = [&](const Vec2& a, const Vec2& b, const Vec2& c) {
    const double jac = std::abs(cross(b - a, c - a));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      visit(barycentric_point(rule.points[q], a, b, c), jac * rule.weights[q]);
    }
  };

  const int ov = graded ? origin_vertex(mesh, t) : -1;
  if (ov < 0) {
    visit_cell(p[0], p[1], p[2]);
    return;
  }
  const Vec2 o = p[ov];
  Vec2 a = p[(ov + 1) % 3];
  Vec2 b = p[(ov + 2) % 3];
  for (int lvl = 0; lvl < policy.graded_levels; ++lvl) {
    const Vec2 ma = midpoint(o, a), mb = midpoint(o, b), mab = midpoint(a, b);
    visit_cell(ma, a, mab);
    visit_cell(mb, mab, b);
    visit_cell(ma, mab, mb);
    a = ma;
    b = mb;
  }
  visit_cell(o, a, b);
}

/// Discrete fields restricted to one element. Both sigma_h and grad(u_h) are
/// (componentwise) affine on the element for RT0xP1 and BDM1xP2, so values at
/// the three vertices determine them; div(sigma_h) is constant.
struct ElementFields {
  Triangle phys;
  Vec2 sigma_at_vertex[3];
  Vec2 grad_u_at_vertex[3];
  double div_sigma = 0.0;

  Vec2 sigma(const std::array<double, 3>& l) const {
    return l[0] * sigma_at_vertex[0] + l[1] * sigma_at_vertex[1] + l[2] * sigma_at_vertex[2];
  }
  Vec2 grad_u(const std::array<double, 3>& l) const {
    return l[0] * grad_u_at_vertex[0] + l[1] * grad_u_at_vertex[1] + l[2] * grad_u_at_vertex[2];
  }
};

const std::vector<std::array<double, 3>>& vertex_barycentrics() {
  static const std::vector<std::array<double, 3>> pts = {
      {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
  return pts;
}

ElementFields element_fields(const Mesh& mesh, const SpacePair& space, int t,
                             const SolutionPair& solution) {
  ElementFields out;
  const auto& tri = mesh.triangle(t);
  out.phys = {mesh.vertex(tri[0]), mesh.vertex(tri[1]), mesh.vertex(tri[2])};

  const ElementFluxBasis fb = flux_basis(space, t, vertex_barycentrics());
  const ElementPotentialBasis pb = potential_basis(space, t, vertex_barycentrics());
  for (int q = 0; q < 3; ++q) {
    Vec2 s{0.0, 0.0}, g{0.0, 0.0};
    for (int j = 0; j < fb.n; ++j) s += solution.flux[fb.global[j]] * fb.value[q][j];
    for (int j = 0; j < pb.n; ++j) g += solution.pot[pb.global[j]] * pb.grad[q][j];
    out.sigma_at_vertex[q] = s;
    out.grad_u_at_vertex[q] = g;
  }
  out.div_sigma = 0.0;
  for (int j = 0; j < fb.n; ++j) out.div_sigma += solution.flux[fb.global[j]] * fb.div[j];
  return out;
}

}  // namespace

EstimateReport indicators(Method method, const Mesh& mesh, const SpacePair& space,
                          const ProblemData& data, const SolutionPair& solution,
                          int quadrature_degree) {
  const QuadRule& rule = triangle_rule(quadrature_degree);
  EstimateReport report;
  report.eta_K.resize(mesh.num_triangles());
  double total_sq = 0.0;

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double alpha = alpha_on_element(*data.coeff, mesh, t);
    const double wdiv = theta_weight(method, mesh, t) / alpha;
    const auto& tri = mesh.triangle(t);
    const Vec2 p0 = mesh.vertex(tri[0]), p1 = mesh.vertex(tri[1]), p2 = mesh.vertex(tri[2]);
    const double jac = std::abs(cross(p1 - p0, p2 - p0));

    const ElementFluxBasis fb = flux_basis(space, t, rule.points);
    const ElementPotentialBasis pb = potential_basis(space, t, rule.points);

    double div_h = 0.0;
    for (int j = 0; j < fb.n; ++j) div_h += solution.flux[fb.global[j]] * fb.div[j];

    double local_sq = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 x = barycentric_point(rule.points[q], p0, p1, p2);
      Vec2 sigma_h{0.0, 0.0};
      Vec2 grad_u_h{0.0, 0.0};
      for (int j = 0; j < fb.n; ++j) sigma_h += solution.flux[fb.global[j]] * fb.value[q][j];
      for (int j = 0; j < pb.n; ++j) grad_u_h += solution.pot[pb.global[j]] * pb.grad[q][j];

      const double rdiv = data.g(x) - div_h;
      const Vec2 rflux = data.f(x) - grad_u_h - (1.0 / alpha) * sigma_h;
      local_sq += jac * rule.weights[q] * (wdiv * rdiv * rdiv + alpha * dot(rflux, rflux));
    }
    report.eta_K[t] = std::sqrt(local_sq);
    total_sq += local_sq;
  }
  report.eta = std::sqrt(total_sq);
  return report;
}

TrueErrorResult true_error(Method method, const Mesh& mesh, const SpacePair& space,
                           const CoefficientField& coeff, const SolutionPair& solution,
                           const ExactFields& exact, const SingularQuadPolicy& policy) {
  TrueErrorResult out;
  out.per_element.resize(mesh.num_triangles());
  double theta_sq = 0.0, hls_sq = 0.0;

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double alpha = alpha_on_element(coeff, mesh, t);
    const double sqa = std::sqrt(alpha);
    const double theta = theta_weight(method, mesh, t);
    const double h2 = mesh.diameter(t) * mesh.diameter(t);
    const ElementFields fields = element_fields(mesh, space, t, solution);

    double local_theta = 0.0, local_hls = 0.0;
    for_each_quad_point(mesh, t, policy, exact.origin_singularity, [&](const Vec2& x, double w) {
      const auto bary = barycentric_of(fields.phys, x);
      const Vec2 ge = exact.grad_u(x) - fields.grad_u(bary);
      const Vec2 fe = exact.sigma(x) - fields.sigma(bary);
      const double de = exact.div_sigma(x) - fields.div_sigma;
      local_theta += w * (alpha * dot(ge, ge) + dot(fe, fe) / alpha + (theta / alpha) * de * de);
      const Vec2 c = sqa * ge + (1.0 / sqa) * fe;
      local_hls += w * (dot(c, c) + (h2 / alpha) * de * de);
    });
    out.per_element[t] = std::sqrt(std::max(0.0, local_theta));
    theta_sq += local_theta;
    hls_sq += local_hls;
  }
  out.theta_norm = std::sqrt(std::max(0.0, theta_sq));
  out.hls_norm = std::sqrt(std::max(0.0, hls_sq));
  return out;
}

double exact_theta_norm(Method method, const Mesh& mesh, const CoefficientField& coeff,
                        const ExactFields& exact, const SingularQuadPolicy& policy) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double alpha = alpha_on_element(coeff, mesh, t);
    const double theta = theta_weight(method, mesh, t);
    for_each_quad_point(mesh, t, policy, exact.origin_singularity, [&](const Vec2& x, double w) {
      const Vec2 gu = exact.grad_u(x);
      const Vec2 sg = exact.sigma(x);
      const double dv = exact.div_sigma(x);
      sum += w * (alpha * dot(gu, gu) + dot(sg, sg) / alpha + (theta / alpha) * dv * dv);
    });
  }
  return std::sqrt(sum);
}

double exact_hls_norm(const Mesh& mesh, const CoefficientField& coeff, const ExactFields& exact,
                      const SingularQuadPolicy& policy) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double alpha = alpha_on_element(coeff, mesh, t);
    const double sqa = std::sqrt(alpha);
    const double h2 = mesh.diameter(t) * mesh.diameter(t);
    for_each_quad_point(mesh, t, policy, exact.origin_singularity, [&](const Vec2& x, double w) {
      const Vec2 c = sqa * exact.grad_u(x) + (1.0 / sqa) * exact.sigma(x);
      const double dv = exact.div_sigma(x);
      sum += w * (dot(c, c) + (h2 / alpha) * dv * dv);
    });
  }
  return std::sqrt(sum);
}

EfficiencyAudit efficiency_audit(const std::vector<double>& eta_K,
                                 const std::vector<double>& err_K) {
  if (eta_K.size() != err_K.size()) {
    throw std::invalid_argument("efficiency_audit: array size mismatch");
  }
  EfficiencyAudit audit;
  bool any_error = false;
  for (std::size_t t = 0; t < eta_K.size(); ++t) {
    if (err_K[t] > 0.0) {
      any_error = true;
      const double ratio = eta_K[t] / err_K[t];
      if (ratio > audit.max_ratio) {
        audit.max_ratio = ratio;
        audit.argmax_element = static_cast<int>(t);
      }
    } else if (eta_K[t] > 0.0) {
      audit.max_ratio = std::numeric_limits<double>::infinity();
      audit.argmax_element = static_cast<int>(t);
      any_error = true;
    }
  }
  if (!any_error) {
    audit.zero_error = true;
    audit.max_ratio = 0.0;
  }
  return audit;
}

}  // namespace augls
