#include <doctest.h>

#include <cmath>

#include "augls/adapt.hpp"
#include "augls/estimate.hpp"
#include "augls/problems.hpp"
#include "support/oracles.hpp"

using namespace augls;

namespace {

std::array<double, 3> barycentric_in(const Mesh& mesh, int t, const Vec2& x) {
  const auto& tri = mesh.triangle(t);
  const Vec2 p0 = mesh.vertex(tri[0]), p1 = mesh.vertex(tri[1]), p2 = mesh.vertex(tri[2]);
  const double det = cross(p1 - p0, p2 - p0);
  const double l1 = cross(x - p0, p2 - p0) / det;
  const double l2 = cross(p1 - p0, x - p0) / det;
  return {1.0 - l1 - l2, l1, l2};
}

}  // namespace

TEST_SUITE("estimate") {

TEST_CASE("indicators vanish for data manufactured from a discrete pair") {
  const Mesh mesh = initial_square_mesh(2);
  auto coeff = std::make_shared<CoefficientField>(checkerboard_field(5.82842712474619, mesh));
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  SolutionPair sol;
  sol.space = &space;
  sol.flux = testing::random_vector(space.n_flux_dofs, 51);
  sol.pot = testing::random_vector(space.n_pot_dofs, 52);

  ProblemData data;
  data.coeff = coeff.get();
  data.f = [&](const Vec2& x) {
    const int t = testing::locate_element(mesh, x);
    const auto bary = barycentric_in(mesh, t, x);
    const double alpha = alpha_on_element(*coeff, mesh, t);
    return eval_grad_potential(space, t, bary, sol.pot) +
           (1.0 / alpha) * eval_flux(space, t, bary, sol.flux);
  };
  data.g = [&](const Vec2& x) {
    return eval_div_flux(space, testing::locate_element(mesh, x), sol.flux);
  };

  for (Method m : {Method::kAug1, Method::kAug2}) {
    const EstimateReport report = indicators(m, mesh, space, data, sol);
    CHECK(report.eta <= 1e-13);
  }
}

TEST_CASE("global estimator is the root of summed squares") {
  const Mesh mesh = initial_square_mesh(3);
  const ProblemSetup setup = make_kellogg_problem(2, mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const SolutionPair sol = solve_discrete(mesh, space, setup.data, cfg);
  const EstimateReport report = indicators(Method::kAug1, mesh, space, setup.data, sol);
  double sum = 0.0;
  for (double v : report.eta_K) {
    CHECK(v >= 0.0);
    sum += v * v;
  }
  CHECK(report.eta * report.eta == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("estimator equals the least-squares functional of the error") {
  // polynomial problem: perturb the interpolant of the exact pair and compare
  // against the independently quadratured error functional
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_linear_patch_problem(mesh);
  for (Family fam : {Family::kRt0P1, Family::kBdm1P2}) {
    const SpacePair space = build_space_pair(mesh, fam);
    SolutionPair pair;
    pair.space = &space;
    pair.flux = interpolate_flux(space, setup.exact.sigma);
    pair.pot = interpolate_potential(space, setup.exact.u);
    // deliberate perturbation
    for (std::size_t i = 0; i < pair.flux.size(); i += 3) pair.flux[i] += 0.05 + 0.01 * i;
    for (std::size_t i = 0; i < pair.pot.size(); i += 2) pair.pot[i] -= 0.03;

    const EstimateReport ls = indicators(Method::kLs, mesh, space, setup.data, pair);
    const double j_plain = testing::ls_functional_error_sq(
        mesh, space, *setup.coeff, pair, setup.exact.sigma, setup.exact.grad_u,
        setup.exact.div_sigma, /*mesh_weighted=*/false);
    CHECK(ls.eta * ls.eta == doctest::Approx(j_plain).epsilon(1e-12));

    const EstimateReport hls = indicators(Method::kHls, mesh, space, setup.data, pair);
    const double j_weighted = testing::ls_functional_error_sq(
        mesh, space, *setup.coeff, pair, setup.exact.sigma, setup.exact.grad_u,
        setup.exact.div_sigma, /*mesh_weighted=*/true);
    CHECK(hls.eta * hls.eta == doctest::Approx(j_weighted).epsilon(1e-12));

    // the mesh-weighted estimator squared equals the hls-norm of the error
    const TrueErrorResult te =
        true_error(Method::kHls, mesh, space, *setup.coeff, pair, setup.exact);
    CHECK(hls.eta == doctest::Approx(te.hls_norm).epsilon(1e-12));
  }
}

TEST_CASE("estimator expressions coincide across method pairs") {
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  SolutionPair pair;
  pair.space = &space;
  pair.flux = testing::random_vector(space.n_flux_dofs, 61);
  pair.pot = testing::random_vector(space.n_pot_dofs, 62);
  const EstimateReport aug1 = indicators(Method::kAug1, mesh, space, setup.data, pair);
  const EstimateReport ls = indicators(Method::kLs, mesh, space, setup.data, pair);
  const EstimateReport aug2 = indicators(Method::kAug2, mesh, space, setup.data, pair);
  const EstimateReport hls = indicators(Method::kHls, mesh, space, setup.data, pair);
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    CHECK(aug1.eta_K[t] == ls.eta_K[t]);
    CHECK(aug2.eta_K[t] == hls.eta_K[t]);
  }
}

TEST_CASE("true error vanishes when the exact handles are the discrete fields") {
  const Mesh mesh = initial_square_mesh(2);
  auto coeff = std::make_shared<CoefficientField>(checkerboard_field(3.0, mesh));
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  SolutionPair sol;
  sol.space = &space;
  sol.flux = testing::random_vector(space.n_flux_dofs, 71);
  sol.pot = testing::random_vector(space.n_pot_dofs, 72);
  ExactFields fields;
  fields.u = [&](const Vec2& x) {
    const int t = testing::locate_element(mesh, x);
    return eval_potential(space, t, barycentric_in(mesh, t, x), sol.pot);
  };
  fields.grad_u = [&](const Vec2& x) {
    const int t = testing::locate_element(mesh, x);
    return eval_grad_potential(space, t, barycentric_in(mesh, t, x), sol.pot);
  };
  fields.sigma = [&](const Vec2& x) {
    const int t = testing::locate_element(mesh, x);
    return eval_flux(space, t, barycentric_in(mesh, t, x), sol.flux);
  };
  fields.div_sigma = [&](const Vec2& x) {
    return eval_div_flux(space, testing::locate_element(mesh, x), sol.flux);
  };
  const TrueErrorResult te = true_error(Method::kAug1, mesh, space, *coeff, sol, fields);
  CHECK(te.theta_norm <= 1e-13);
  CHECK(te.hls_norm <= 1e-13);
}

TEST_CASE("efficiency audit conventions") {
  SUBCASE("zero error is flagged") {
    const EfficiencyAudit audit = efficiency_audit({0.0, 0.0}, {0.0, 0.0});
    CHECK(audit.zero_error);
    CHECK(audit.max_ratio == 0.0);
  }
  SUBCASE("max ratio and location") {
    const EfficiencyAudit audit = efficiency_audit({1.0, 3.0, 0.5}, {2.0, 2.0, 1.0});
    CHECK(audit.max_ratio == doctest::Approx(1.5));
    CHECK(audit.argmax_element == 1);
  }
  SUBCASE("positive indicator with zero error is infinite") {
    const EfficiencyAudit audit = efficiency_audit({1.0}, {0.0});
    CHECK(std::isinf(audit.max_ratio));
  }
}

TEST_CASE("efficiency bound on a short benchmark run") {
  const Mesh mesh0 = initial_square_mesh(4);
  const ProblemSetup setup = make_kellogg_problem(4, mesh0);
  AdaptConfig cfg;
  cfg.method = Method::kAug1;
  cfg.fixed_iterations = 12;
  const AdaptResult res = adapt_loop(cfg, setup, /*record_per_element=*/true);
  for (std::size_t it = 0; it < res.per_iteration_eta_K.size(); ++it) {
    const EfficiencyAudit audit =
        efficiency_audit(res.per_iteration_eta_K[it], res.per_iteration_err_K[it]);
    CHECK(audit.max_ratio <= std::sqrt(2.0) * 1.05);
  }
}

TEST_CASE("adaptive run reaches the expected effectivity scale") {
  const Mesh mesh0 = initial_square_mesh(4);
  const ProblemSetup setup = make_kellogg_problem(4, mesh0);
  AdaptConfig cfg;
  cfg.method = Method::kAug1;
  const AdaptResult res = adapt_loop(cfg, setup);
  CHECK(res.history.stopping_reason == "converged");
  const HistoryRow& last = res.history.rows.back();
  CHECK(last.rel_err <= 0.010);
  CHECK(last.eff_index >= 0.95);
  CHECK(last.eff_index <= 1.15);
  CHECK(last.eta >= 0.134 / 2.0);
  CHECK(last.eta <= 0.134 * 2.0);
}

}  // TEST_SUITE
