#ifndef AUGLS_PROBLEMS_HPP
#define AUGLS_PROBLEMS_HPP

#include <memory>
#include <string>

#include "augls/assembly.hpp"
#include "augls/coeff.hpp"
#include "augls/estimate.hpp"
#include "augls/kellogg.hpp"
#include "augls/mesh.hpp"

namespace augls {

/// A benchmark problem: data handles, exact solution handles, and the
/// coefficient field (owned; data.coeff points into it). The coefficient
/// values are keyed by subdomain id, so one setup serves every refinement of
/// the initial mesh.
struct ProblemSetup {
  std::string name;
  std::shared_ptr<const CoefficientField> coeff;
  ProblemData data;
  ExactFields exact;
  bool has_exact = false;
};

/// Checkerboard interface problem (data_index 1..4); exact solution
/// u = r^gamma mu(theta) + u0, f = grad(u0), g = 0.
ProblemSetup make_kellogg_problem(int data_index, const Mesh& initial_mesh);

/// Patch-test problem: u = x + y, alpha = 1, sigma = -(1,1), f = 0, g = 0.
ProblemSetup make_linear_patch_problem(const Mesh& initial_mesh);

/// Smooth problem: u = sin(pi x) sin(pi y), alpha = 1, f = 0,
/// g = 2 pi^2 sin(pi x) sin(pi y), homogeneous Dirichlet data.
ProblemSetup make_smooth_sine_problem(const Mesh& initial_mesh);

}  // namespace augls

#endif
