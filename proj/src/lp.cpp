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

#include "exante/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace exante {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr std::size_t kMaxPivots = 1000000;

// Standard-form working problem: maximize c.y, M y = b, y >= 0, with the
// original rows scaled to unit max magnitude and flipped so b >= 0.
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Vec> body;          // rows x cols
  Vec rhs;                        // length rows
  std::vector<std::size_t> basis; // basic column per row
  Vec obj;                        // reduced costs z_j - c_j
  double obj_value = 0.0;
  std::vector<bool> enterable;
  std::size_t pivots = 0;

  void pivot(std::size_t prow, std::size_t pcol) {
    double inv = 1.0 / body[prow][pcol];
    for (auto& v : body[prow]) v *= inv;
    rhs[prow] *= inv;
    body[prow][pcol] = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == prow) continue;
      double f = body[i][pcol];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) body[i][j] -= f * body[prow][j];
      body[i][pcol] = 0.0;
      rhs[i] -= f * rhs[prow];
    }
    double f = obj[pcol];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * body[prow][j];
      obj[pcol] = 0.0;
      obj_value -= f * rhs[prow];
    }
    basis[prow] = pcol;
    ++pivots;
    if (pivots > kMaxPivots)
      throw NumericalError("simplex exceeded the pivot limit");
  }

  // Rebuilds reduced costs for cost vector c from the current basis.
  void set_costs(const Vec& c) {
    obj = c;
    for (auto& v : obj) v = -v;
    obj_value = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      double cb = c[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) obj[j] += cb * body[i][j];
      obj_value += cb * rhs[i];
    }
    for (std::size_t i = 0; i < rows; ++i) obj[basis[i]] = 0.0;
  }

  // Bland's rule; returns false when optimal, throws on unboundedness only
  // if allow_unbounded is false.
  enum class Step { optimal, moved, unbounded };
  Step step() {
    std::size_t pcol = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (enterable[j] && obj[j] < -kPivotTol) {
        pcol = j;
        break;
      }
    }
    if (pcol == cols) return Step::optimal;
    std::size_t prow = rows;
    double best = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (body[i][pcol] <= kPivotTol) continue;
      double ratio = rhs[i] / body[i][pcol];
      if (prow == rows || ratio < best - kPivotTol ||
          (ratio < best + kPivotTol && basis[i] < basis[prow])) {
        prow = i;
        best = ratio;
      }
    }
    if (prow == rows) return Step::unbounded;
    pivot(prow, pcol);
    return Step::moved;
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  for (const auto& row : lp.ineq)
    if (row.size() != n) throw ValidationError("inequality row size mismatch");
  for (const auto& row : lp.eq)
    if (row.size() != n) throw ValidationError("equality row size mismatch");
  if (lp.ineq.size() != lp.ineq_rhs.size() || lp.eq.size() != lp.eq_rhs.size())
    throw ValidationError("constraint/rhs count mismatch");
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n)
    throw ValidationError("lower bound count mismatch");
  auto finite_all = [](const Vec& v) {
    return std::all_of(v.begin(), v.end(),
                       [](double x) { return std::isfinite(x); });
  };
  if (!finite_all(lp.objective) || !finite_all(lp.ineq_rhs) ||
      !finite_all(lp.eq_rhs))
    throw ValidationError("linear program entries must be finite");
  for (const auto& row : lp.ineq)
    if (!finite_all(row)) throw ValidationError("linear program entries must be finite");
  for (const auto& row : lp.eq)
    if (!finite_all(row)) throw ValidationError("linear program entries must be finite");

  // Column layout: shifted variable per finite lower bound, a +/- pair per
  // free variable, then one slack or artificial per row.
  Vec lower(n, 0.0);
  if (!lp.lower_bounds.empty()) lower = lp.lower_bounds;
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = ncols++;
    if (lower[j] == LinearProgram::kUnbounded) neg_col[j] = ncols++;
  }
  const std::size_t structural = ncols;
  const std::size_t m = lp.ineq.size() + lp.eq.size();

  struct RowInfo {
    bool equality = false;
    double scale = 1.0;
    double sign = 1.0;
    std::size_t identity_col = 0;  // slack or artificial with a unit entry
  };
  std::vector<RowInfo> info(m);

  // First pass to count slack/artificial columns.
  std::vector<Vec> raw(m);
  Vec raw_rhs(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    bool is_eq = i >= lp.ineq.size();
    const Vec& src = is_eq ? lp.eq[i - lp.ineq.size()] : lp.ineq[i];
    double b = is_eq ? lp.eq_rhs[i - lp.ineq.size()] : lp.ineq_rhs[i];
    info[i].equality = is_eq;
    Vec row(structural, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      row[pos_col[j]] = src[j];
      if (neg_col[j] != SIZE_MAX)
        row[neg_col[j]] = -src[j];
      else
        b -= src[j] * lower[j];
    }
    double scale = 0.0;
    for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale < kPivotTol) scale = 1.0;
    for (auto& v : row) v /= scale;
    b /= scale;
    info[i].scale = scale;
    if (b < 0.0) {
      for (auto& v : row) v = -v;
      b = -b;
      info[i].sign = -1.0;
    }
    raw[i] = std::move(row);
    raw_rhs[i] = b;
  }

  std::size_t extra = 0;
  std::vector<bool> needs_artificial(m, false);
  std::vector<bool> needs_surplus(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (info[i].equality) {
      needs_artificial[i] = true;
      extra += 1;
    } else if (info[i].sign < 0.0) {
      needs_surplus[i] = true;  // flipped <= row became >=
      needs_artificial[i] = true;
      extra += 2;
    } else {
      extra += 1;  // plain slack
    }
  }

  Tableau t;
  t.rows = m;
  t.cols = structural + extra;
  t.body.assign(m, Vec(t.cols, 0.0));
  t.rhs = raw_rhs;
  t.basis.assign(m, 0);
  t.enterable.assign(t.cols, true);
  std::vector<bool> artificial(t.cols, false);

  std::size_t next = structural;
  for (std::size_t i = 0; i < m; ++i) {
    std::copy(raw[i].begin(), raw[i].end(), t.body[i].begin());
    if (needs_surplus[i]) t.body[i][next++] = -1.0;
    std::size_t unit = next++;
    t.body[i][unit] = 1.0;
    t.basis[i] = unit;
    info[i].identity_col = unit;
    if (needs_artificial[i]) artificial[unit] = true;
  }

  // Phase 1: drive out the artificials.
  bool any_artificial =
      std::any_of(artificial.begin(), artificial.end(), [](bool b) { return b; });
  double rhs_norm = 1.0;
  for (double b : t.rhs) rhs_norm = std::max(rhs_norm, std::abs(b));
  if (any_artificial) {
    Vec phase1(t.cols, 0.0);
    for (std::size_t j = 0; j < t.cols; ++j)
      if (artificial[j]) phase1[j] = -1.0;
    t.set_costs(phase1);
    while (t.step() == Tableau::Step::moved) {
    }
    if (t.obj_value < -kFeasTol * rhs_norm) {
      LpSolution sol;
      sol.status = LpStatus::infeasible;
      sol.pivots = t.pivots;
      return sol;
    }
    for (std::size_t j = 0; j < t.cols; ++j)
      if (artificial[j]) t.enterable[j] = false;
    // Degenerate artificials still in the basis: pivot them out when the
    // row has a well-scaled non-artificial column, else the row is
    // redundant and the artificial stays parked at zero.
    for (std::size_t i = 0; i < m; ++i) {
      if (!artificial[t.basis[i]]) continue;
      for (std::size_t j = 0; j < structural + extra; ++j) {
        if (artificial[j]) continue;
        if (std::abs(t.body[i][j]) > 1e-7) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  Vec costs(t.cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    costs[pos_col[j]] = lp.objective[j];
    if (neg_col[j] != SIZE_MAX) costs[neg_col[j]] = -lp.objective[j];
  }
  t.set_costs(costs);
  for (;;) {
    auto step = t.step();
    if (step == Tableau::Step::optimal) break;
    if (step == Tableau::Step::unbounded) {
      LpSolution sol;
      sol.status = LpStatus::unbounded;
      sol.pivots = t.pivots;
      return sol;
    }
  }

  Vec column_values(t.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    column_values[t.basis[i]] = std::max(t.rhs[i], 0.0);

  LpSolution sol;
  sol.status = LpStatus::optimal;
  sol.pivots = t.pivots;
  sol.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (neg_col[j] != SIZE_MAX)
      sol.x[j] = column_values[pos_col[j]] - column_values[neg_col[j]];
    else
      sol.x[j] = column_values[pos_col[j]] + lower[j];
  }
  sol.value = dot(lp.objective, sol.x);

  // Simplex multipliers live in the reduced costs of each row's original
  // unit column; undo the row scaling and sign flips.
  sol.ineq_duals.assign(lp.ineq.size(), 0.0);
  sol.eq_duals.assign(lp.eq.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double pi = t.obj[info[i].identity_col] * info[i].sign / info[i].scale;
    if (info[i].equality)
      sol.eq_duals[i - lp.ineq.size()] = pi;
    else
      sol.ineq_duals[i] = pi;
  }
  return sol;
}

}  // namespace exante
