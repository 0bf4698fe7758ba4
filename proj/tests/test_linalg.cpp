#include <doctest.h>

#include <cmath>
#include <random>

#include "augls/linalg.hpp"
#include "support/oracles.hpp"

using namespace augls;

TEST_SUITE("linalg") {

TEST_CASE("identity system returns the right-hand side") {
  std::vector<std::tuple<int, int, double>> trips;
  for (int i = 0; i < 7; ++i) trips.emplace_back(i, i, 1.0);
  const SparseMatrix a = SparseMatrix::from_triplets(7, 7, trips);
  const std::vector<double> b = testing::random_vector(7, 1);
  const std::vector<double> x = solve(a, b);
  for (int i = 0; i < 7; ++i) CHECK(x[i] == doctest::Approx(b[i]).epsilon(1e-15));
}

TEST_CASE("small random system matches dense elimination") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 5;
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  std::vector<std::tuple<int, int, double>> trips;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double v = dist(rng);
      if (r == c) v += 4.0;  // keep it well conditioned
      dense[r][c] = v;
      trips.emplace_back(r, c, v);
    }
  }
  const SparseMatrix a = SparseMatrix::from_triplets(n, n, trips);
  const std::vector<double> b = testing::random_vector(n, 7);
  const std::vector<double> x = solve(a, b);
  const std::vector<double> x_ref = testing::dense_solve(dense, b);
  for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - x_ref[i]) <= 1e-12);
}

TEST_CASE("zero row raises a solver error") {
  std::vector<std::tuple<int, int, double>> trips = {{0, 0, 1.0}, {2, 2, 1.0}};
  const SparseMatrix a = SparseMatrix::from_triplets(3, 3, trips);
  CHECK_THROWS_AS(solve(a, {1.0, 1.0, 1.0}), SolverError);
}

TEST_CASE("repeated solves are bitwise identical") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 60;
  std::vector<std::tuple<int, int, double>> trips;
  for (int i = 0; i < n; ++i) {
    trips.emplace_back(i, i, 4.0 + dist(rng));
    if (i + 1 < n) {
      trips.emplace_back(i, i + 1, dist(rng));
      trips.emplace_back(i + 1, i, dist(rng));
    }
  }
  const SparseMatrix a = SparseMatrix::from_triplets(n, n, trips);
  const std::vector<double> b = testing::random_vector(n, 13);
  const std::vector<double> x1 = solve(a, b);
  const std::vector<double> x2 = solve(a, b);
  for (int i = 0; i < n; ++i) CHECK(x1[i] == x2[i]);
}

TEST_CASE("duplicate triplets are summed and sorted") {
  std::vector<std::tuple<int, int, double>> trips = {
      {0, 1, 2.0}, {0, 0, 1.0}, {0, 1, 3.0}, {1, 0, -1.0}, {1, 1, 2.0}};
  const SparseMatrix a = SparseMatrix::from_triplets(2, 2, trips);
  CHECK(a.row_ptr == std::vector<int>{0, 2, 4});
  CHECK(a.col_idx == std::vector<int>{0, 1, 0, 1});
  CHECK(a.values == std::vector<double>{1.0, 5.0, -1.0, 2.0});
  CHECK(a.max_abs() == 5.0);
  CHECK(a.asymmetry() == doctest::Approx(6.0));
}

TEST_CASE("extended-precision tiers agree with the double path") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 120;
  std::vector<std::tuple<int, int, double>> trips;
  for (int i = 0; i < n; ++i) {
    trips.emplace_back(i, i, 6.0 + dist(rng));
    for (int rep = 0; rep < 2; ++rep) {
      const int j = static_cast<int>(rng() % n);
      if (j != i) {
        trips.emplace_back(i, j, dist(rng));
        trips.emplace_back(j, i, 0.5 * dist(rng));
      }
    }
  }
  const SparseMatrix a = SparseMatrix::from_triplets(n, n, trips);
  const std::vector<double> b = testing::random_vector(n, 4);
  const std::vector<double> x = solve(a, b);
  const std::vector<long double> vl(a.values.begin(), a.values.end());
  const std::vector<quad_float> vq(a.values.begin(), a.values.end());
  const std::vector<double> xl = solve_longdouble(a, vl, b);
  const std::vector<double> xq = solve_quad(a, vq, b);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(x[i] - xl[i]) <= 1e-13);
    CHECK(std::abs(x[i] - xq[i]) <= 1e-13);
  }
}

}  // TEST_SUITE
