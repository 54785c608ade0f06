#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "searchgame/matrix_game.hpp"
#include "searchgame/rng.hpp"

using namespace searchgame;

namespace {

void check_certificates(const std::vector<std::vector<double>>& a,
                        const MatrixGameSolution& sol) {
  double tol = 1e-9 * (1.0 + std::fabs(sol.value));
  for (double rp : sol.row_payoffs) CHECK(rp <= sol.value + tol);
  for (double cp : sol.col_payoffs) CHECK(cp >= sol.value - tol);

  // maximin <= value <= minimax
  double maximin = -1e300, minimax = 1e300;
  for (const auto& row : a) {
    double mn = 1e300;
    for (double v : row) mn = std::min(mn, v);
    maximin = std::max(maximin, mn);
  }
  for (size_t j = 0; j < a[0].size(); ++j) {
    double mx = -1e300;
    for (const auto& row : a) mx = std::max(mx, row[j]);
    minimax = std::min(minimax, mx);
  }
  CHECK(sol.value >= maximin - tol);
  CHECK(sol.value <= minimax + tol);
}

}  // namespace

TEST_CASE("symmetric 2x2 game") {
  std::vector<std::vector<double>> a{{3, 4}, {4, 3}};
  MatrixGameSolution sol = solve_zero_sum(a);
  CHECK(sol.value == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(sol.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.col_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
  check_certificates(a, sol);
  CHECK(oracles::two_row_game_value(a) == doctest::Approx(3.5).epsilon(1e-6));
}

TEST_CASE("one by one game") {
  MatrixGameSolution sol = solve_zero_sum({{2}});
  CHECK(sol.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sol.row_strategy[0] == doctest::Approx(1.0));
  CHECK(sol.col_strategy[0] == doctest::Approx(1.0));
}

TEST_CASE("matching pennies has value zero") {
  std::vector<std::vector<double>> a{{1, -1}, {-1, 1}};
  MatrixGameSolution sol = solve_zero_sum(a);
  CHECK(sol.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sol.row_strategy[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.col_strategy[1] == doctest::Approx(0.5).epsilon(1e-9));
  check_certificates(a, sol);
}

TEST_CASE("duality gap stays below 1e-9 on random games") {
  for (int k = 0; k < 300; ++k) {
    Rng rng(derive_stream(2024, k));
    int n = (int)rng.uniform_int(1, 6);
    int m = (int)rng.uniform_int(1, 12);
    std::vector<std::vector<double>> a(n, std::vector<double>(m));
    for (auto& row : a) {
      for (double& v : row) v = rng.uniform(-5.0, 15.0);
    }
    MatrixGameSolution sol = solve_zero_sum(a);
    check_certificates(a, sol);

    double psum = 0.0, wsum = 0.0;
    for (double v : sol.row_strategy) {
      CHECK(v >= 0.0);
      psum += v;
    }
    for (double v : sol.col_strategy) {
      CHECK(v >= 0.0);
      wsum += v;
    }
    CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("agrees with the exhaustive two-row oracle") {
  for (int k = 0; k < 120; ++k) {
    Rng rng(derive_stream(555, k));
    int m = 2 + (int)rng.uniform_int(0, 1);
    std::vector<std::vector<double>> a(2, std::vector<double>(m));
    for (auto& row : a) {
      for (double& v : row) v = rng.uniform(0.0, 10.0);
    }
    MatrixGameSolution sol = solve_zero_sum(a);
    CHECK(std::fabs(sol.value - oracles::two_row_game_value(a)) <= 1e-3);
  }
}

TEST_CASE("deterministic output") {
  std::vector<std::vector<double>> a{{1.0, 7.5, 2.25}, {4.0, 0.5, 3.0}};
  MatrixGameSolution s1 = solve_zero_sum(a);
  MatrixGameSolution s2 = solve_zero_sum(a);
  CHECK(s1.value == s2.value);
  CHECK(s1.row_strategy == s2.row_strategy);
  CHECK(s1.col_strategy == s2.col_strategy);
}

TEST_CASE("rejects malformed input") {
  CHECK_THROWS_AS(solve_zero_sum({}), NumericalFailure);
  CHECK_THROWS_AS(solve_zero_sum({{1.0, 2.0}, {3.0}}), NumericalFailure);
  double nan = std::nan("");
  CHECK_THROWS_AS(solve_zero_sum({{nan}}), NumericalFailure);
}
