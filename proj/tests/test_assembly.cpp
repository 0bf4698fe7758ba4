#include <doctest.h>

#include <cmath>

#include "augls/assembly.hpp"
#include "augls/problems.hpp"
#include "augls/quad.hpp"
#include "support/oracles.hpp"

using namespace augls;

namespace {

ProblemSetup zero_data_problem(const Mesh& mesh) {
  ProblemSetup setup;
  setup.coeff = std::make_shared<CoefficientField>(constant_field(1.0, mesh));
  setup.data.coeff = setup.coeff.get();
  setup.data.f = [](const Vec2&) { return Vec2{0.0, 0.0}; };
  setup.data.g = [](const Vec2&) { return 0.0; };
  setup.data.dirichlet_data = [](const Vec2&) { return 0.0; };
  setup.data.neumann_sigma = [](const Vec2&) { return Vec2{0.0, 0.0}; };
  return setup;
}

}  // namespace

TEST_SUITE("assembly") {

TEST_CASE("zero data gives a zero load") {
  const Mesh mesh = initial_square_mesh(1);
  const ProblemSetup setup = zero_data_problem(mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const LinearSystem sys = assemble(mesh, space, setup.data, cfg);
  for (double v : sys.rhs) CHECK(v == 0.0);
  CHECK(sys.load_max_norm == 0.0);
}

TEST_CASE("element mass matrix of the linear potential basis") {
  const Mesh mesh = initial_square_mesh(1);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  const QuadRule& rule = triangle_rule(4);
  const int t = 0;
  const auto& tri = mesh.triangle(t);
  const Vec2 p0 = mesh.vertex(tri[0]), p1 = mesh.vertex(tri[1]), p2 = mesh.vertex(tri[2]);
  const double jac = std::abs(cross(p1 - p0, p2 - p0));
  const ElementPotentialBasis pb = potential_basis(space, t, rule.points);
  double m[3][3] = {};
  for (std::size_t q = 0; q < rule.size(); ++q) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += jac * rule.weights[q] * pb.value[q][i] * pb.value[q][j];
    }
  }
  const double scale = mesh.area(t) / 12.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(m[i][j] == doctest::Approx(scale * (i == j ? 2.0 : 1.0)).epsilon(1e-13));
    }
  }
}

TEST_CASE("quadratic form of the augmented matrix is the theta-norm") {
  const Mesh mesh = initial_square_mesh(1);
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const LinearSystem sys = assemble(mesh, space, setup.data, cfg);
  const std::vector<double> x = testing::random_vector(sys.n_flux + sys.n_pot, 17);
  const std::vector<double> ax = sys.matrix.apply(x);
  double xbx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) xbx += x[i] * ax[i];
  const std::vector<double> flux(x.begin(), x.begin() + sys.n_flux);
  const std::vector<double> pot(x.begin() + sys.n_flux, x.end());
  const double oracle =
      testing::discrete_theta_norm_sq(mesh, space, *setup.coeff, Method::kAug1, flux, pot);
  CHECK(std::abs(xbx - oracle) <= 1e-12 * oracle);
}

TEST_CASE("continuity factor of the augmented forms") {
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  for (Method m : {Method::kAug1, Method::kAug2}) {
    const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
    MethodConfig cfg;
    cfg.method = m;
    const LinearSystem sys = assemble(mesh, space, setup.data, cfg);
    for (unsigned seed = 0; seed < 10; ++seed) {
      const std::vector<double> x = testing::random_vector(sys.n_flux + sys.n_pot, 100 + seed);
      const std::vector<double> y = testing::random_vector(sys.n_flux + sys.n_pot, 200 + seed);
      const std::vector<double> ax = sys.matrix.apply(x);
      double ybx = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) ybx += y[i] * ax[i];
      const auto norm_of = [&](const std::vector<double>& z) {
        const std::vector<double> fz(z.begin(), z.begin() + sys.n_flux);
        const std::vector<double> pz(z.begin() + sys.n_flux, z.end());
        return std::sqrt(testing::discrete_theta_norm_sq(mesh, space, *setup.coeff, m, fz, pz));
      };
      CHECK(std::abs(ybx) <= 2.0 * norm_of(x) * norm_of(y) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("symmetric and non-symmetric variants produce the same solution") {
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  for (BcLayout bc : {BcLayout::kAllDirichlet, BcLayout::kBottomDirichlet}) {
    const Mesh m = initial_square_mesh(2, bc);
    const SpacePair space = build_space_pair(m, Family::kRt0P1);
    MethodConfig plain, sym;
    plain.method = sym.method = Method::kAug1;
    sym.symmetric = true;
    const SolutionPair a = solve_discrete(m, space, setup.data, plain);
    const SolutionPair b = solve_discrete(m, space, setup.data, sym);
    for (int d = 0; d < space.n_flux_dofs; ++d) CHECK(std::abs(a.flux[d] - b.flux[d]) <= 1e-10);
    for (int d = 0; d < space.n_pot_dofs; ++d) CHECK(std::abs(a.pot[d] - b.pot[d]) <= 1e-10);
  }
}

TEST_CASE("least-squares matrices are symmetric") {
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_kellogg_problem(2, mesh);
  for (Method m : {Method::kLs, Method::kHls}) {
    for (Family fam : {Family::kRt0P1, Family::kBdm1P2}) {
      const SpacePair space = build_space_pair(mesh, fam);
      MethodConfig cfg;
      cfg.method = m;
      const LinearSystem sys = assemble(mesh, space, setup.data, cfg);
      CHECK(sys.matrix.asymmetry() <= 1e-13 * sys.matrix.max_abs());
    }
  }
}

TEST_CASE("least-squares quadratic form equals the functional") {
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kLs;
  const LinearSystem sys = assemble(mesh, space, setup.data, cfg);
  const std::vector<double> x = testing::random_vector(sys.n_flux + sys.n_pot, 31);
  const std::vector<double> ax = sys.matrix.apply(x);
  double xbx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) xbx += x[i] * ax[i];
  // J(tau, v; 0, 0) by independent quadrature
  SolutionPair sol;
  sol.space = &space;
  sol.flux.assign(x.begin(), x.begin() + sys.n_flux);
  sol.pot.assign(x.begin() + sys.n_flux, x.end());
  const double j = testing::ls_functional_error_sq(
      mesh, space, *setup.coeff, sol, [](const Vec2&) { return Vec2{0.0, 0.0}; },
      [](const Vec2&) { return Vec2{0.0, 0.0}; }, [](const Vec2&) { return 0.0; },
      /*mesh_weighted=*/false);
  CHECK(std::abs(xbx - j) <= 1e-12 * j);
}

TEST_CASE("homogeneous data produce zero essential values") {
  const Mesh mesh = initial_square_mesh(1, BcLayout::kBottomDirichlet);
  const ProblemSetup setup = zero_data_problem(mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const LinearSystem reduced = apply_essential_bc(assemble(mesh, space, setup.data, cfg), space,
                                                  setup.data);
  for (double v : reduced.essential_values) CHECK(v == 0.0);
}

TEST_CASE("Dirichlet values are vertex evaluations of the data") {
  const Mesh mesh = initial_square_mesh(1);
  ProblemSetup setup = zero_data_problem(mesh);
  setup.data.dirichlet_data = [](const Vec2& x) { return x.x + x.y; };
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const LinearSystem reduced = apply_essential_bc(assemble(mesh, space, setup.data, cfg), space,
                                                  setup.data);
  for (int d : space.essential_pot_dofs) {
    const Vec2& v = mesh.vertex(d);
    CHECK(reduced.essential_values[reduced.n_flux + d] ==
          doctest::Approx(v.x + v.y).epsilon(1e-14));
  }
}

TEST_CASE("Neumann values are mean normal fluxes of the data") {
  const Mesh mesh = initial_square_mesh(1, BcLayout::kBottomDirichlet);
  ProblemSetup setup = zero_data_problem(mesh);
  setup.data.neumann_sigma = [](const Vec2&) { return Vec2{1.0, 0.0}; };
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const LinearSystem reduced = apply_essential_bc(assemble(mesh, space, setup.data, cfg), space,
                                                  setup.data);
  for (int e : space.essential_flux_dofs) {
    const Edge& edge = mesh.edge(e);
    const Vec2 a = mesh.vertex(edge.v0), b = mesh.vertex(edge.v1);
    double expected = 0.0;
    if (a.x == 1.0 && b.x == 1.0) expected = 1.0;    // outward normal (1,0)
    if (a.x == -1.0 && b.x == -1.0) expected = -1.0; // outward normal (-1,0)
    CHECK(reduced.essential_values[e] == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("residual check behavior") {
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_kellogg_problem(1, mesh);
  const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
  MethodConfig cfg;
  cfg.method = Method::kAug1;
  const LinearSystem full = assemble(mesh, space, setup.data, cfg);
  const LinearSystem reduced = apply_essential_bc(full, space, setup.data);
  const std::vector<double> x = solve_system(reduced);
  SolutionPair sol = scatter_solution(reduced, space, x);

  SUBCASE("exact solve is near machine precision") {
    CHECK(residual_check(reduced, sol) <= 1e-10 * reduced.load_max_norm);
  }
  SUBCASE("a 1e-3 coefficient perturbation is visible") {
    SolutionPair bad = sol;
    const int free_full = reduced.free_to_full[0];
    if (free_full < reduced.n_flux) {
      bad.flux[free_full] += 1e-3;
    } else {
      bad.pot[free_full - reduced.n_flux] += 1e-3;
    }
    CHECK(residual_check(reduced, bad) > 1e-6);
  }
  SUBCASE("zero solution leaves the load itself") {
    SolutionPair zero = sol;
    std::fill(zero.flux.begin(), zero.flux.end(), 0.0);
    std::fill(zero.pot.begin(), zero.pot.end(), 0.0);
    CHECK(residual_check(reduced, zero) == doctest::Approx(reduced.load_max_norm).epsilon(1e-12));
  }
}

TEST_CASE("patch solution is reproduced exactly") {
  const Mesh mesh = initial_square_mesh(2);
  const ProblemSetup setup = make_linear_patch_problem(mesh);
  for (Method m : {Method::kAug1, Method::kAug2, Method::kLs}) {
    const SpacePair space = build_space_pair(mesh, Family::kRt0P1);
    MethodConfig cfg;
    cfg.method = m;
    const SolutionPair sol = solve_discrete(mesh, space, setup.data, cfg);
    const TrueErrorResult err =
        true_error(Method::kAug1, mesh, space, *setup.coeff, sol, setup.exact);
    CHECK(err.theta_norm <= 1e-10);
  }
  const SpacePair bdm = build_space_pair(mesh, Family::kBdm1P2);
  for (Method m : {Method::kAug1, Method::kAug2}) {
    MethodConfig cfg;
    cfg.method = m;
    const SolutionPair sol = solve_discrete(mesh, bdm, setup.data, cfg);
    const TrueErrorResult err =
        true_error(Method::kAug1, mesh, bdm, *setup.coeff, sol, setup.exact);
    CHECK(err.theta_norm <= 1e-10);
  }
}

}  // TEST_SUITE
