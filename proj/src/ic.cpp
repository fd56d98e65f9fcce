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

#include "exante/ic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "exante/lp.hpp"
#include "exante/punishment.hpp"

namespace exante {

std::string to_string(IcMethod m) {
  switch (m) {
    case IcMethod::vertex: return "vertex";
    case IcMethod::primal_lp: return "primal-lp";
    case IcMethod::dual_lp: return "dual-lp";
    case IcMethod::grid: return "grid";
  }
  return "vertex";
}

IcMethod ic_method_from_string(const std::string& name) {
  if (name == "vertex") return IcMethod::vertex;
  if (name == "primal-lp") return IcMethod::primal_lp;
  if (name == "dual-lp") return IcMethod::dual_lp;
  if (name == "grid") return IcMethod::grid;
  throw ValidationError("unknown method: " + name);
}

double deviation_gap_at(const ModelSpec& model, const Allocation& p,
                        const Belief& mu) {
  validate(model, p);
  Vec interim = interim_payoff(model, p, mu.sender);
  return grim_trigger(model, mu).value - dot(mu.probs, interim);
}

namespace {

double gap_at(const ModelSpec& model, const Vec& interim, const Belief& mu) {
  return grim_trigger(model, mu).value - dot(mu.probs, interim);
}

DeviationSplit make_split(const ModelSpec& model, const Belief& worst) {
  const Vec& prior = model.senders[worst.sender].prior;
  DeviationSplit split;
  split.alpha = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < prior.size(); ++t)
    if (worst.probs[t] > kTieTol)
      split.alpha = std::min(split.alpha, prior[t] / worst.probs[t]);
  split.alpha = std::min(split.alpha, 1.0);
  split.residual.resize(prior.size());
  for (std::size_t t = 0; t < prior.size(); ++t)
    split.residual[t] =
        std::max(prior[t] - split.alpha * worst.probs[t], 0.0);
  return split;
}

// Rational-coordinate beliefs with denominator k, visited in lexicographic
// order of the numerators.
template <typename Fn>
void for_each_grid_belief(std::size_t num_types, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> numer(num_types, 0);
  Vec probs(num_types, 0.0);
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == num_types) {
      numer[pos] = left;
      for (std::size_t t = 0; t < num_types; ++t)
        probs[t] = static_cast<double>(numer[t]) / static_cast<double>(k);
      fn(probs);
      return;
    }
    for (std::size_t take = 0; take <= left; ++take) {
      numer[pos] = take;
      self(self, pos + 1, left - take);
    }
  };
  recurse(recurse, 0, k);
}

DeviationReport finish_report(const ModelSpec& model, std::size_t sender,
                              IcMethod method, double gap,
                              const Belief& worst) {
  DeviationReport report;
  report.sender = sender;
  report.method = method;
  report.deviation_gap = gap;
  report.worst_belief = worst;
  report.implementable = gap <= kIcTol;
  report.boundary = gap > 0.0 && gap <= kIcTol;
  report.grim_set = grim_trigger(model, worst).minimizers;
  report.deviation = make_split(model, worst);
  return report;
}

DeviationReport check_vertex(const ModelSpec& model, const Vec& interim,
                             std::size_t sender) {
  TestBeliefSet set = enumerate_vertices(model, sender);
  double best = -std::numeric_limits<double>::infinity();
  const TestBelief* argmax = nullptr;
  auto all = set.all();
  for (const TestBelief* tb : all) {
    double g = gap_at(model, interim, tb->belief);
    if (g > best) {
      best = g;
      argmax = tb;
    }
  }
  DeviationReport report =
      finish_report(model, sender, IcMethod::vertex, best, argmax->belief);
  for (const TestBelief* tb : all)
    if (gap_at(model, interim, tb->belief) >= best - kIcTol)
      report.near_worst.push_back(tb->belief);
  return report;
}

DeviationReport check_primal(const ModelSpec& model, const Vec& interim,
                             std::size_t sender, IcMethod tag) {
  const auto& payoff = model.senders[sender].payoff;
  const std::size_t m = interim.size();
  // Variables (z, mu): maximize z subject to z <= sum_t mu_t (u(r,t) - interim_t)
  // for every outcome, mu a distribution.
  LinearProgram lp;
  lp.objective.assign(m + 1, 0.0);
  lp.objective[0] = 1.0;
  lp.lower_bounds.assign(m + 1, 0.0);
  lp.lower_bounds[0] = LinearProgram::kUnbounded;
  for (std::size_t r = 0; r < model.num_outcomes(); ++r) {
    Vec row(m + 1, 0.0);
    row[0] = 1.0;
    for (std::size_t t = 0; t < m; ++t) row[t + 1] = -(payoff[r][t] - interim[t]);
    lp.ineq.push_back(std::move(row));
    lp.ineq_rhs.push_back(0.0);
  }
  Vec ones(m + 1, 1.0);
  ones[0] = 0.0;
  lp.eq.push_back(std::move(ones));
  lp.eq_rhs.push_back(1.0);

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw NumericalError("deviation program must be feasible and bounded");
  Belief worst;
  worst.sender = sender;
  worst.probs.assign(sol.x.begin() + 1, sol.x.end());
  double total = 0.0;
  for (auto& x : worst.probs) {
    if (x <= 0.0) x = 0.0;
    total += x;
  }
  for (auto& x : worst.probs) x /= total;
  return finish_report(model, sender, tag, sol.value, worst);
}

DeviationReport check_dual(const ModelSpec& model, const Vec& interim,
                           std::size_t sender) {
  const auto& payoff = model.senders[sender].payoff;
  const std::size_t m = interim.size();
  const std::size_t R = model.num_outcomes();
  // Variables (w, rho): minimize w subject to
  // sum_r rho_r (u(r,t) - interim_t) <= w per type, rho a distribution.
  LinearProgram lp;
  lp.objective.assign(R + 1, 0.0);
  lp.objective[0] = -1.0;
  lp.lower_bounds.assign(R + 1, 0.0);
  lp.lower_bounds[0] = LinearProgram::kUnbounded;
  for (std::size_t t = 0; t < m; ++t) {
    Vec row(R + 1, 0.0);
    row[0] = -1.0;
    for (std::size_t r = 0; r < R; ++r) row[r + 1] = payoff[r][t] - interim[t];
    lp.ineq.push_back(std::move(row));
    lp.ineq_rhs.push_back(0.0);
  }
  Vec ones(R + 1, 1.0);
  ones[0] = 0.0;
  lp.eq.push_back(std::move(ones));
  lp.eq_rhs.push_back(1.0);

  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw NumericalError("punishment program must be feasible and bounded");
  // The per-type multipliers recover the adversarial belief.
  Belief worst;
  worst.sender = sender;
  worst.probs.assign(m, 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    worst.probs[t] = sol.ineq_duals[t] <= 0.0 ? 0.0 : sol.ineq_duals[t];
    total += worst.probs[t];
  }
  if (total <= kTieTol) {
    // Degenerate duals (every punishment already optimal); fall back to the
    // exact primal certificate.
    return check_primal(model, interim, sender, IcMethod::dual_lp);
  }
  for (auto& x : worst.probs) x /= total;
  return finish_report(model, sender, IcMethod::dual_lp, -sol.value, worst);
}

DeviationReport check_grid(const ModelSpec& model, const Vec& interim,
                           std::size_t sender, std::size_t k) {
  if (k == 0) throw ValidationError("grid denominator must be positive");
  const std::size_t m = interim.size();
  double best = -std::numeric_limits<double>::infinity();
  Belief worst;
  worst.sender = sender;
  Belief probe;
  probe.sender = sender;
  for_each_grid_belief(m, k, [&](const Vec& probs) {
    probe.probs = probs;
    double g = gap_at(model, interim, probe);
    if (g > best) {
      best = g;
      worst.probs = probs;
    }
  });
  DeviationReport report =
      finish_report(model, sender, IcMethod::grid, best, worst);
  for_each_grid_belief(m, k, [&](const Vec& probs) {
    probe.probs = probs;
    if (gap_at(model, interim, probe) >= best - kIcTol)
      report.near_worst.push_back(Belief{sender, probs});
  });
  return report;
}

}  // namespace

DeviationReport check_sender_ic(const ModelSpec& model, const Allocation& p,
                                std::size_t sender, IcMethod method,
                                std::size_t grid_denominator) {
  validate(model, p);
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  Vec interim = interim_payoff(model, p, sender);
  switch (method) {
    case IcMethod::vertex: return check_vertex(model, interim, sender);
    case IcMethod::primal_lp:
      return check_primal(model, interim, sender, IcMethod::primal_lp);
    case IcMethod::dual_lp: return check_dual(model, interim, sender);
    case IcMethod::grid:
      return check_grid(model, interim, sender, grid_denominator);
  }
  throw ValidationError("unknown method");
}

ImplementabilityReport check_implementable(const ModelSpec& model,
                                           const Allocation& p) {
  ImplementabilityReport report;
  report.implementable = true;
  for (std::size_t i = 0; i < model.num_senders(); ++i) {
    report.senders.push_back(check_sender_ic(model, p, i, IcMethod::vertex));
    report.implementable =
        report.implementable && report.senders.back().implementable;
  }
  return report;
}

std::vector<bool> experiment_implementable(const ModelSpec& model,
                                           const Allocation& p) {
  validate(model, p);
  std::vector<bool> result;
  for (std::size_t i = 0; i < model.num_senders(); ++i) {
    Belief prior{i, model.senders[i].prior};
    result.push_back(deviation_gap_at(model, p, prior) <= kIcTol);
  }
  return result;
}

namespace {

nlohmann::ordered_json report_to_json(const ModelSpec& model,
                                      const DeviationReport& r) {
  nlohmann::ordered_json j;
  j["sender"] = r.sender;
  j["sender_name"] = model.senders[r.sender].name;
  j["implementable"] = r.implementable;
  j["boundary"] = r.boundary;
  j["method"] = to_string(r.method);
  j["deviation_gap"] = r.deviation_gap;
  j["worst_belief"] = r.worst_belief.probs;
  auto grim = nlohmann::ordered_json::array();
  for (std::size_t g : r.grim_set) grim.push_back(model.outcomes[g]);
  j["grim_set"] = std::move(grim);
  j["deviation_distribution"] = {{"alpha", r.deviation.alpha},
                                 {"worst_belief", r.worst_belief.probs},
                                 {"residual", r.deviation.residual}};
  auto ties = nlohmann::ordered_json::array();
  for (const auto& b : r.near_worst) ties.push_back(b.probs);
  j["near_worst"] = std::move(ties);
  return j;
}

}  // namespace

std::string to_json(const ModelSpec& model, const DeviationReport& report,
                    int indent) {
  return report_to_json(model, report).dump(indent);
}

std::string to_json(const ModelSpec& model, const ImplementabilityReport& report,
                    int indent) {
  nlohmann::ordered_json doc;
  doc["implementable"] = report.implementable;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : report.senders) arr.push_back(report_to_json(model, r));
  doc["senders"] = std::move(arr);
  return doc.dump(indent);
}

}  // namespace exante
