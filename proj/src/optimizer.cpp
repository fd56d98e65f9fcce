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

#include "exante/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "exante/lp.hpp"
#include "exante/punishment.hpp"

namespace exante {

UnconstrainedOptimum unconstrained_optimum(const ModelSpec& model) {
  validate(model);
  UnconstrainedOptimum best;
  const std::size_t R = model.num_outcomes();
  best.allocation.rows.assign(model.num_profiles(), Vec(R, 0.0));
  best.ties.resize(model.num_profiles());
  for (std::size_t index = 0; index < model.num_profiles(); ++index) {
    double top = model.receiver_payoff[0][index];
    for (std::size_t r = 1; r < R; ++r)
      top = std::max(top, model.receiver_payoff[r][index]);
    for (std::size_t r = 0; r < R; ++r)
      if (model.receiver_payoff[r][index] >= top - kTieTol)
        best.ties[index].push_back(r);
    best.allocation.rows[index][best.ties[index].front()] = 1.0;
    best.value += model.profile_prior(index) * top;
  }
  return best;
}

Optimum constrained_optimum(const ModelSpec& model) {
  validate(model);
  const std::size_t R = model.num_outcomes();
  const std::size_t N = model.num_profiles();

  // One variable per (profile, outcome) probability.
  LinearProgram lp;
  lp.objective.assign(N * R, 0.0);
  for (std::size_t index = 0; index < N; ++index) {
    double mass = model.profile_prior(index);
    for (std::size_t r = 0; r < R; ++r)
      lp.objective[index * R + r] = mass * model.receiver_payoff[r][index];
  }
  for (std::size_t index = 0; index < N; ++index) {
    Vec row(N * R, 0.0);
    for (std::size_t r = 0; r < R; ++r) row[index * R + r] = 1.0;
    lp.eq.push_back(std::move(row));
    lp.eq_rhs.push_back(1.0);
  }

  // Incentive rows: at every non-degenerate test belief the interim
  // allocation payoff must cover the punishment value. Degenerate beliefs
  // can never cut the feasible set.
  std::vector<std::pair<std::size_t, Belief>> cuts;
  for (std::size_t i = 0; i < model.num_senders(); ++i) {
    TestBeliefSet set = enumerate_vertices(model, i);
    const auto& payoff = model.senders[i].payoff;
    for (const auto& tb : set.vertices) {
      double floor = grim_trigger(model, tb.belief).value;
      Vec row(N * R, 0.0);
      for (std::size_t index = 0; index < N; ++index) {
        std::size_t t = model.type_in_profile(index, i);
        double w = tb.belief.probs[t] * model.opponent_prior(index, i);
        if (w == 0.0) continue;
        for (std::size_t r = 0; r < R; ++r)
          row[index * R + r] = -w * payoff[r][t];
      }
      lp.ineq.push_back(std::move(row));
      lp.ineq_rhs.push_back(-floor);
      cuts.emplace_back(i, tb.belief);
    }
  }

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw NumericalError("receiver program did not solve to optimality");

  Optimum opt;
  opt.value = sol.value;
  opt.allocation.rows.assign(N, Vec(R, 0.0));
  opt.deterministic = true;
  for (std::size_t index = 0; index < N; ++index) {
    double sum = 0.0;
    double top = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
      double x = sol.x[index * R + r] <= 0.0 ? 0.0 : sol.x[index * R + r];
      opt.allocation.rows[index][r] = x;
      sum += x;
      top = std::max(top, x);
    }
    // Determinism is read from the raw basic solution, not a rounded copy.
    if (sum - top > kTieTol || std::abs(top - 1.0) > kTieTol)
      opt.deterministic = false;
    for (auto& x : opt.allocation.rows[index]) x /= sum;
  }
  // The inequality rows are exactly the incentive cuts, in order.
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    double slack = lp.ineq_rhs[k] - dot(lp.ineq[k], sol.x);
    if (std::abs(slack) <= kIcTol) opt.binding.push_back(cuts[k]);
  }

  UnconstrainedOptimum best = unconstrained_optimum(model);
  opt.unconstrained_value = best.value;
  opt.unconstrained_ties = std::move(best.ties);
  opt.first_best_gap = opt.unconstrained_value - opt.value;
  return opt;
}

std::vector<ParetoViolation> pareto_support_audit(const ModelSpec& model,
                                                  const Allocation& p) {
  validate(model, p);
  std::vector<ParetoViolation> violations;
  for (std::size_t index = 0; index < model.num_profiles(); ++index) {
    auto profile = model.unflatten(index);
    for (std::size_t r = 0; r < model.num_outcomes(); ++r) {
      if (p.rows[index][r] <= kTieTol) continue;
      for (std::size_t other = 0; other < model.num_outcomes(); ++other) {
        if (model.receiver_payoff[other][index] <=
            model.receiver_payoff[r][index])
          continue;
        bool dominates = true;
        for (std::size_t i = 0; i < model.num_senders(); ++i) {
          const auto& payoff = model.senders[i].payoff;
          if (payoff[other][profile[i]] <= payoff[r][profile[i]]) {
            dominates = false;
            break;
          }
        }
        if (dominates) violations.push_back({index, r, other});
      }
    }
  }
  return violations;
}

std::string to_json(const ModelSpec& model, const Optimum& opt, int indent) {
  nlohmann::ordered_json doc;
  doc["value"] = opt.value;
  doc["allocation"] =
      nlohmann::ordered_json::parse(to_json(model, opt.allocation));
  auto binding = nlohmann::ordered_json::array();
  for (const auto& [sender, belief] : opt.binding)
    binding.push_back({{"sender", sender}, {"belief", belief.probs}});
  doc["binding"] = std::move(binding);
  doc["deterministic"] = opt.deterministic;
  doc["first_best_gap"] = opt.first_best_gap;
  doc["unconstrained_value"] = opt.unconstrained_value;
  return doc.dump(indent);
}

}  // namespace exante
