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

#include "exante/apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace exante {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json parse(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ValidationError("malformed JSON document");
  return doc;
}

Vec as_vec(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ValidationError(what + " must be numeric");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<Vec> as_matrix(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of arrays");
  std::vector<Vec> m;
  for (const auto& row : j) m.push_back(as_vec(row, what));
  return m;
}

std::vector<Vec> resolve_priors(const std::vector<Vec>& priors,
                                const std::vector<std::size_t>& type_counts) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < type_counts.size(); ++i) {
    if (i < priors.size() && !priors[i].empty()) {
      out.push_back(priors[i]);
    } else {
      out.emplace_back(type_counts[i],
                       1.0 / static_cast<double>(type_counts[i]));
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Audit design
// ---------------------------------------------------------------------------

AuditParams load_audit_params(const std::string& json_text) {
  ordered_json doc = parse(json_text);
  if (!doc.is_object() || !doc.contains("firms"))
    throw ValidationError("audit params need a firms array");
  AuditParams params;
  for (const auto& jf : doc["firms"]) {
    AuditFirm firm;
    firm.fine_cost = jf.value("c", 1.0);
    firm.repatriation = jf.value("eps", 0.1);
    firm.prior_pollute = jf.value("prior_pollute", 0.5);
    params.firms.push_back(firm);
  }
  return params;
}

ModelSpec gen_audit_model(const AuditParams& params) {
  const std::size_t n = params.firms.size();
  if (n == 0) throw ValidationError("need at least one firm");
  if (n > 4)
    throw ValidationError(
        "at most 4 firms (the outcome space is the power set); decompose "
        "larger instances per firm instead");
  for (const auto& firm : params.firms) {
    if (!(firm.fine_cost > 0.0) || !(firm.repatriation > 0.0))
      throw ValidationError("fine cost and repatriation must be positive");
    if (!(firm.prior_pollute > 0.0 && firm.prior_pollute < 1.0))
      throw ValidationError("prior_pollute must be interior");
  }

  ModelSpec model;
  const std::size_t R = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < R; ++mask) {
    std::string label = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      if (!first) label += ",";
      label += "firm" + std::to_string(i);
      first = false;
    }
    label += "}";
    model.outcomes.push_back(label);
  }
  for (std::size_t i = 0; i < n; ++i) {
    SenderSpec s;
    s.name = "firm" + std::to_string(i);
    s.types = {"clean", "polluting"};
    s.prior = {1.0 - params.firms[i].prior_pollute, params.firms[i].prior_pollute};
    for (std::size_t mask = 0; mask < R; ++mask) {
      bool fined = mask & (std::size_t{1} << i);
      s.payoff.push_back(fined ? Vec{params.firms[i].repatriation, -1.0}
                               : Vec{0.0, 1.0});
    }
    model.senders.push_back(std::move(s));
  }
  const std::size_t N = model.num_profiles();
  model.receiver_payoff.assign(R, Vec(N, 0.0));
  for (std::size_t mask = 0; mask < R; ++mask) {
    for (std::size_t index = 0; index < N; ++index) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        bool fined = mask & (std::size_t{1} << i);
        bool polluting = model.type_in_profile(index, i) == 1;
        if (fined)
          v += polluting ? 1.0 : -params.firms[i].fine_cost;
        else
          v += polluting ? -1.0 : 0.0;
      }
      model.receiver_payoff[mask][index] = v;
    }
  }
  validate(model);
  return model;
}

AuditPlan audit_closed_form(const AuditParams& params) {
  AuditPlan plan;
  std::size_t mask = 0;
  for (std::size_t i = 0; i < params.firms.size(); ++i) {
    const auto& firm = params.firms[i];
    double ratio = firm.prior_pollute / (1.0 - firm.prior_pollute);
    double diff = ratio - firm.fine_cost / 2.0;
    if (std::abs(diff) <= kTieTol) {
      plan.indifferent.push_back(i);
    } else if (diff > 0.0) {
      plan.fined.push_back(i);
      mask |= std::size_t{1} << i;
    }
    if (diff > 0.0 && std::abs(diff) > kTieTol)
      plan.value += firm.prior_pollute * 1.0 -
                    (1.0 - firm.prior_pollute) * firm.fine_cost;
    else
      plan.value += firm.prior_pollute * -1.0;
  }
  plan.outcome = mask;
  return plan;
}

Allocation audit_plan_allocation(const ModelSpec& model, const AuditPlan& plan) {
  Allocation p;
  Vec row(model.num_outcomes(), 0.0);
  row.at(plan.outcome) = 1.0;
  p.rows.assign(model.num_profiles(), row);
  return p;
}

std::string to_json(const AuditPlan& plan, const AuditParams& params,
                    int indent) {
  ordered_json doc;
  doc["fined"] = plan.fined;
  doc["indifferent"] = plan.indifferent;
  doc["value"] = plan.value;
  auto thresholds = ordered_json::array();
  for (const auto& firm : params.firms) {
    double ratio = firm.prior_pollute / (1.0 - firm.prior_pollute);
    thresholds.push_back(
        {{"half_cost", firm.fine_cost / 2.0}, {"prior_odds", ratio}});
  }
  doc["thresholds"] = std::move(thresholds);
  return doc.dump(indent);
}

// ---------------------------------------------------------------------------
// Grant design
// ---------------------------------------------------------------------------

GrantParams load_grant_params(const std::string& json_text) {
  ordered_json doc = parse(json_text);
  if (!doc.is_object() || !doc.contains("f") || !doc.contains("g"))
    throw ValidationError("grant params need f and g tables");
  GrantParams params;
  params.award_payoff = as_matrix(doc["f"], "f");
  params.outside_payoff = as_matrix(doc["g"], "g");
  if (doc.contains("lambda")) params.weights = as_vec(doc["lambda"], "lambda");
  if (doc.contains("priors")) params.priors = as_matrix(doc["priors"], "priors");
  return params;
}

GrantDesign gen_grant_model(const GrantParams& params) {
  const std::size_t n = params.award_payoff.size();
  if (n == 0) throw ValidationError("grant design needs at least one sender");
  if (params.outside_payoff.size() != n)
    throw ValidationError("f and g must have the same sender count");
  Vec weights = params.weights;
  if (weights.empty()) weights.assign(n, 1.0 / static_cast<double>(n));
  if (weights.size() != n)
    throw ValidationError("one weight per sender required");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw ValidationError("weights must sum to one");

  GrantDesign design;
  design.hypothesis_holds = true;
  std::vector<std::size_t> type_counts;
  for (std::size_t i = 0; i < n; ++i) {
    if (params.outside_payoff[i].size() != params.award_payoff[i].size())
      throw ValidationError("f and g rows must have matching type counts");
    type_counts.push_back(params.award_payoff[i].size());
    for (std::size_t t = 0; t + 1 < type_counts[i]; ++t) {
      double now = params.award_payoff[i][t] - params.outside_payoff[i][t];
      double next = params.award_payoff[i][t + 1] - params.outside_payoff[i][t + 1];
      if (next < now - kTieTol) design.hypothesis_holds = false;
    }
  }
  auto priors = resolve_priors(params.priors, type_counts);

  ModelSpec& model = design.model;
  for (std::size_t i = 0; i < n; ++i)
    model.outcomes.push_back("s" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    SenderSpec s;
    s.name = "s" + std::to_string(i);
    for (std::size_t t = 0; t < type_counts[i]; ++t)
      s.types.push_back("t" + std::to_string(t));
    s.prior = priors[i];
    for (std::size_t r = 0; r < n; ++r)
      s.payoff.push_back(r == i ? params.award_payoff[i]
                                : params.outside_payoff[i]);
    model.senders.push_back(std::move(s));
  }
  const std::size_t N = model.num_profiles();
  model.receiver_payoff.assign(n, Vec(N, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t index = 0; index < N; ++index) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t t = model.type_in_profile(index, i);
        v += weights[i] * (r == i ? params.award_payoff[i][t]
                                  : params.outside_payoff[i][t]);
      }
      model.receiver_payoff[r][index] = v;
    }
  validate(model);

  design.efficient.rows.assign(N, Vec(n, 0.0));
  for (std::size_t index = 0; index < N; ++index) {
    std::size_t winner = 0;
    for (std::size_t r = 1; r < n; ++r)
      if (model.receiver_payoff[r][index] >
          model.receiver_payoff[winner][index] + kTieTol)
        winner = r;
    design.efficient.rows[index][winner] = 1.0;
  }
  return design;
}

// ---------------------------------------------------------------------------
// Auctions with allocation externalities
// ---------------------------------------------------------------------------

AuctionParams load_auction_params(const std::string& json_text) {
  ordered_json doc = parse(json_text);
  if (!doc.is_object() || !doc.contains("f") || !doc.contains("g"))
    throw ValidationError("auction params need f and g tables");
  AuctionParams params;
  params.value = as_matrix(doc["f"], "f");
  if (!doc["g"].is_array())
    throw ValidationError("g must be an array of per-sender tables");
  for (const auto& jg : doc["g"])
    params.externality.push_back(as_matrix(jg, "g"));
  if (doc.contains("cap") && !doc["cap"].is_null())
    params.transfer_cap = doc["cap"].get<double>();
  if (doc.contains("priors")) params.priors = as_matrix(doc["priors"], "priors");
  return params;
}

AuctionDesign gen_auction_model(const AuctionParams& params) {
  const std::size_t n = params.value.size();
  if (n == 0) throw ValidationError("auction needs at least one sender");
  if (params.externality.size() != n)
    throw ValidationError("externality table needs one entry per sender");
  std::vector<std::size_t> type_counts;
  for (std::size_t i = 0; i < n; ++i) {
    type_counts.push_back(params.value[i].size());
    if (type_counts[i] == 0) throw ValidationError("empty type space");
    for (double f : params.value[i])
      if (!(f > 0.0)) throw ValidationError("values f must be strictly positive");
    if (params.externality[i].size() != n)
      throw ValidationError("externality tables must cover every winner");
    for (std::size_t r = 0; r < n; ++r) {
      if (params.externality[i][r].size() != type_counts[i])
        throw ValidationError("externality row length must match type count");
      if (r == i) continue;  // a winner suffers no externality from itself
      for (double g : params.externality[i][r])
        if (g < 0.0) throw ValidationError("externalities g must be nonnegative");
    }
  }
  auto priors = resolve_priors(params.priors, type_counts);

  AuctionDesign design;
  ModelSpec& model = design.model;
  const bool with_null = n == 1;  // the outside option needs somewhere to point
  for (std::size_t i = 0; i < n; ++i)
    model.outcomes.push_back("s" + std::to_string(i));
  if (with_null) model.outcomes.push_back("none");
  const std::size_t R = model.outcomes.size();

  for (std::size_t i = 0; i < n; ++i) {
    SenderSpec s;
    s.name = "s" + std::to_string(i);
    for (std::size_t t = 0; t < type_counts[i]; ++t)
      s.types.push_back("t" + std::to_string(t));
    s.prior = priors[i];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) {
        s.payoff.push_back(params.value[i]);
      } else {
        Vec row = params.externality[i][r];
        for (auto& x : row) x = -x;
        s.payoff.push_back(std::move(row));
      }
    }
    if (with_null) s.payoff.emplace_back(type_counts[i], 0.0);
    model.senders.push_back(std::move(s));
  }

  const std::size_t N = model.num_profiles();
  model.receiver_payoff.assign(R, Vec(N, 0.0));
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t index = 0; index < N; ++index) {
      double welfare = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t t = model.type_in_profile(index, i);
        welfare += model.senders[i].payoff[r][t];
      }
      model.receiver_payoff[r][index] = welfare;
    }
  validate(model);

  // Welfare-efficient winner, and the efficient winner with each sender
  // barred from winning (everyone's externalities still count).
  auto winner_among = [&](std::size_t index, std::size_t skip) {
    std::size_t best = SIZE_MAX;
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == skip) continue;
      double w = model.receiver_payoff[r][index];
      if (w > top + kTieTol) {
        best = r;
        top = w;
      }
    }
    return best;
  };

  design.efficient.rows.assign(N, Vec(R, 0.0));
  design.removed_winner.assign(n, std::vector<std::size_t>(N, 0));
  design.transfers.assign(n, Vec(N, 0.0));
  for (std::size_t index = 0; index < N; ++index) {
    std::size_t star = winner_among(index, SIZE_MAX);
    design.efficient.rows[index][star] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t alt = n == 1 ? n /* the explicit no-award outcome */
                               : winner_among(index, i);
      design.removed_winner[i][index] = alt;
      std::size_t t = model.type_in_profile(index, i);
      design.transfers[i][index] =
          model.senders[i].payoff[star][t] - model.senders[i].payoff[alt][t];
      if (params.transfer_cap &&
          design.transfers[i][index] > *params.transfer_cap + kTieTol)
        design.cap_violations.emplace_back(i, index);
    }
  }
  return design;
}

}  // namespace exante
