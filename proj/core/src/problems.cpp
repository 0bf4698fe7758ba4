#include "augls/problems.hpp"

#include <cmath>

namespace augls {

ProblemSetup make_kellogg_problem(int data_index, const Mesh& initial_mesh) {
  const KelloggParams params = preset_params(data_index);
  auto exact = std::make_shared<ExactSolution>(params);

  ProblemSetup setup;
  setup.name = "kellogg-data" + std::to_string(data_index);
  setup.coeff = std::make_shared<CoefficientField>(
      checkerboard_field(params.contrast, initial_mesh));
  setup.data.coeff = setup.coeff.get();
  setup.data.f = [exact](const Vec2& x) { return exact->f(x); };
  setup.data.g = [](const Vec2&) { return 0.0; };
  setup.data.dirichlet_data = [exact](const Vec2& x) { return exact->u(x); };
  setup.data.neumann_sigma = [exact](const Vec2& x) { return exact->sigma(x); };

  setup.exact.u = [exact](const Vec2& x) { return exact->u(x); };
  setup.exact.grad_u = [exact](const Vec2& x) { return exact->grad_u(x); };
  setup.exact.sigma = [exact](const Vec2& x) { return exact->sigma(x); };
  setup.exact.div_sigma = [](const Vec2&) { return 0.0; };
  setup.exact.origin_singularity = true;
  setup.has_exact = true;
  return setup;
}

ProblemSetup make_linear_patch_problem(const Mesh& initial_mesh) {
  ProblemSetup setup;
  setup.name = "patch-linear";
  setup.coeff = std::make_shared<CoefficientField>(constant_field(1.0, initial_mesh));
  setup.data.coeff = setup.coeff.get();
  setup.data.f = [](const Vec2&) { return Vec2{0.0, 0.0}; };
  setup.data.g = [](const Vec2&) { return 0.0; };
  setup.data.dirichlet_data = [](const Vec2& x) { return x.x + x.y; };
  setup.data.neumann_sigma = [](const Vec2&) { return Vec2{-1.0, -1.0}; };

  setup.exact.u = [](const Vec2& x) { return x.x + x.y; };
  setup.exact.grad_u = [](const Vec2&) { return Vec2{1.0, 1.0}; };
  setup.exact.sigma = [](const Vec2&) { return Vec2{-1.0, -1.0}; };
  setup.exact.div_sigma = [](const Vec2&) { return 0.0; };
  setup.exact.origin_singularity = false;
  setup.has_exact = true;
  return setup;
}

ProblemSetup make_smooth_sine_problem(const Mesh& initial_mesh) {
  ProblemSetup setup;
  setup.name = "smooth-sine";
  setup.coeff = std::make_shared<CoefficientField>(constant_field(1.0, initial_mesh));
  setup.data.coeff = setup.coeff.get();
  const double pi = M_PI;
  setup.data.f = [](const Vec2&) { return Vec2{0.0, 0.0}; };
  setup.data.g = [pi](const Vec2& x) {
    return 2.0 * pi * pi * std::sin(pi * x.x) * std::sin(pi * x.y);
  };
  setup.data.dirichlet_data = [](const Vec2&) { return 0.0; };
  setup.data.neumann_sigma = [pi](const Vec2& x) {
    return Vec2{-pi * std::cos(pi * x.x) * std::sin(pi * x.y),
                -pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
  };

  setup.exact.u = [pi](const Vec2& x) { return std::sin(pi * x.x) * std::sin(pi * x.y); };
  setup.exact.grad_u = [pi](const Vec2& x) {
    return Vec2{pi * std::cos(pi * x.x) * std::sin(pi * x.y),
                pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
  };
  setup.exact.sigma = [pi](const Vec2& x) {
    return Vec2{-pi * std::cos(pi * x.x) * std::sin(pi * x.y),
                -pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
  };
  setup.exact.div_sigma = [pi](const Vec2& x) {
    return 2.0 * pi * pi * std::sin(pi * x.x) * std::sin(pi * x.y);
  };
  setup.exact.origin_singularity = false;
  setup.has_exact = true;
  return setup;
}

}  // namespace augls
