// Copyright 2026 the exante authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "exante/lp.hpp"

using namespace exante;

TEST_CASE("one variable, one bound") {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.ineq = {{1.0}};
  lp.ineq_rhs = {1.0};
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(1.0));
  CHECK(sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("unbounded above") {
  LinearProgram lp;
  lp.objective = {1.0};
  auto sol = solve_lp(lp);
  CHECK(sol.status == LpStatus::unbounded);
}

TEST_CASE("infeasible") {
  LinearProgram lp;
  lp.objective = {1.0};
  lp.ineq = {{1.0}};
  lp.ineq_rhs = {-1.0};  // x <= -1 contradicts x >= 0
  auto sol = solve_lp(lp);
  CHECK(sol.status == LpStatus::infeasible);
}

TEST_CASE("textbook optimum with duals") {
  LinearProgram lp;
  lp.objective = {3.0, 2.0};
  lp.ineq = {{1.0, 1.0}, {1.0, 3.0}};
  lp.ineq_rhs = {4.0, 6.0};
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(12.0));
  CHECK(sol.x[0] == doctest::Approx(4.0));
  CHECK(sol.x[1] == doctest::Approx(0.0));
  CHECK(sol.ineq_duals[0] == doctest::Approx(3.0));
  CHECK(sol.ineq_duals[1] == doctest::Approx(0.0));
}

TEST_CASE("equality constraints and free variables") {
  LinearProgram lp;
  lp.objective = {1.0, 1.0};
  lp.lower_bounds = {0.0, LinearProgram::kUnbounded};
  lp.eq = {{1.0, 1.0}};
  lp.eq_rhs = {2.0};
  lp.ineq = {{1.0, 0.0}};
  lp.ineq_rhs = {1.5};
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(2.0));
  CHECK(sol.x[0] + sol.x[1] == doctest::Approx(2.0));
  CHECK(sol.eq_duals[0] == doctest::Approx(1.0));
  CHECK(sol.ineq_duals[0] == doctest::Approx(0.0));
}

TEST_CASE("negative right-hand sides take the two-phase path") {
  // x - y <= -1 with 0 <= x, y: optimum pushes y to the constraint.
  LinearProgram lp;
  lp.objective = {1.0, -1.0};
  lp.ineq = {{1.0, -1.0}};
  lp.ineq_rhs = {-1.0};
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(-1.0));
  CHECK(sol.x[1] - sol.x[0] == doctest::Approx(1.0));
}

TEST_CASE("redundant equalities do not break the basis") {
  LinearProgram lp;
  lp.objective = {1.0, 0.0};
  lp.eq = {{1.0, 1.0}, {2.0, 2.0}};
  lp.eq_rhs = {1.0, 2.0};
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(1.0));
}

TEST_CASE("dimension mismatches are rejected") {
  LinearProgram lp;
  lp.objective = {1.0, 2.0};
  lp.ineq = {{1.0}};
  lp.ineq_rhs = {1.0};
  CHECK_THROWS_AS(solve_lp(lp), ValidationError);
}

TEST_CASE("strong duality holds on random bounded programs") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> dims(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    int n = dims(rng), mrows = dims(rng);
    LinearProgram lp;
    lp.objective.resize(n);
    for (auto& c : lp.objective) c = coef(rng);
    for (int i = 0; i < mrows; ++i) {
      Vec row(n);
      for (auto& a : row) a = coef(rng);
      lp.ineq.push_back(row);
      lp.ineq_rhs.push_back(std::abs(coef(rng)) + 0.1);
    }
    // Box the region so the program is always bounded.
    for (int j = 0; j < n; ++j) {
      Vec row(n, 0.0);
      row[j] = 1.0;
      lp.ineq.push_back(row);
      lp.ineq_rhs.push_back(3.0);
    }
    auto sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    // Primal feasibility.
    for (std::size_t i = 0; i < lp.ineq.size(); ++i)
      CHECK(dot(lp.ineq[i], sol.x) <= lp.ineq_rhs[i] + 1e-7);
    for (double x : sol.x) CHECK(x >= -1e-9);
    // Dual feasibility and strong duality.
    double dual_value = 0.0;
    for (std::size_t i = 0; i < lp.ineq.size(); ++i) {
      CHECK(sol.ineq_duals[i] >= -1e-7);
      dual_value += sol.ineq_duals[i] * lp.ineq_rhs[i];
    }
    CHECK(sol.value == doctest::Approx(dual_value).epsilon(1e-6));
    for (int j = 0; j < n; ++j) {
      double reduced = lp.objective[j];
      for (std::size_t i = 0; i < lp.ineq.size(); ++i)
        reduced -= sol.ineq_duals[i] * lp.ineq[i][j];
      CHECK(reduced <= 1e-6);  // y'A >= c columnwise
    }
  }
}
