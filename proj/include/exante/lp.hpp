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

#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "exante/common.hpp"

namespace exante {

/// Maximize objective . x subject to ineq x <= ineq_rhs, eq x = eq_rhs and
/// per-variable lower bounds (use kUnbounded for a free variable). No upper
/// bounds; encode them as inequality rows.
struct LinearProgram {
  static constexpr double kUnbounded = -std::numeric_limits<double>::infinity();

  Vec objective;
  std::vector<Vec> ineq;
  Vec ineq_rhs;
  std::vector<Vec> eq;
  Vec eq_rhs;
  Vec lower_bounds;  // defaults to zero for every variable when empty
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Vec x;
  double value = 0.0;
  /// Duals of the inequality rows (nonnegative) and the equality rows,
  /// populated only for optimal solutions.
  Vec ineq_duals;
  Vec eq_duals;
  std::size_t pivots = 0;
};

/// Dense two-phase simplex with Bland's anti-cycling rule and row scaling.
/// Feasibility tolerance 1e-9. Throws NumericalError after 10^6 pivots.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace exante
