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
#include <optional>
#include <string>
#include <vector>

#include "exante/model.hpp"

namespace exante {

// ---------------------------------------------------------------------------
// Audit design: binary-type firms hire their own auditors, the regulator
// commits to a fine set per posterior.
// ---------------------------------------------------------------------------

struct AuditFirm {
  double fine_cost = 1.0;      // regulator's cost of fining a clean firm
  double repatriation = 0.1;   // clean firm's recovery value from an unjust fine
  double prior_pollute = 0.5;  // prior mass on the polluting type
};

struct AuditParams {
  std::vector<AuditFirm> firms;
};

AuditParams load_audit_params(const std::string& json_text);

/// Model over the power set of firms (at most 4 firms), additive receiver
/// payoff. Types per firm are ordered (clean, polluting).
ModelSpec gen_audit_model(const AuditParams& params);

/// The constrained-optimal fine set in closed form: fine firm i iff
/// fine_cost/2 < prior_pollute/(1 - prior_pollute). Ties within kTieTol are
/// reported indifferent.
struct AuditPlan {
  std::vector<std::size_t> fined;
  std::vector<std::size_t> indifferent;
  std::size_t outcome = 0;  // index of the fine set in the generated model
  double value = 0.0;       // receiver value of the constant allocation
};

AuditPlan audit_closed_form(const AuditParams& params);

/// The constant allocation playing the plan's fine set everywhere.
Allocation audit_plan_allocation(const ModelSpec& model, const AuditPlan& plan);

// ---------------------------------------------------------------------------
// Grant design: one indivisible award, type-dependent outside options.
// ---------------------------------------------------------------------------

struct GrantParams {
  Vec weights;                      // nonnegative, summing to one
  std::vector<Vec> award_payoff;    // f[i][t]
  std::vector<Vec> outside_payoff;  // g[i][t]
  std::vector<Vec> priors;          // optional, defaults to uniform
};

GrantParams load_grant_params(const std::string& json_text);

struct GrantDesign {
  ModelSpec model;
  Allocation efficient;  // weight-efficient winner, lexicographic ties
  /// True when f - g is weakly increasing for every sender (the hypothesis
  /// under which the efficient allocation is guaranteed implementable).
  bool hypothesis_holds = true;
};

GrantDesign gen_grant_model(const GrantParams& params);

// ---------------------------------------------------------------------------
// Auctions with allocation externalities and transfers.
// ---------------------------------------------------------------------------

struct AuctionParams {
  std::vector<Vec> value;                         // f[i][t] > 0
  std::vector<std::vector<Vec>> externality;      // g[i][winner][t] >= 0
  std::optional<double> transfer_cap;             // admissible transfers [0, cap]
  std::vector<Vec> priors;                        // optional, defaults to uniform
};

AuctionParams load_auction_params(const std::string& json_text);

struct AuctionDesign {
  ModelSpec model;
  Allocation efficient;                      // welfare-maximizing winner
  std::vector<std::vector<std::size_t>> removed_winner;  // [i][profile]
  std::vector<Vec> transfers;                // x[i][profile]
  /// (sender, profile) pairs whose transfer exceeds the cap.
  std::vector<std::pair<std::size_t, std::size_t>> cap_violations;
};

/// Efficient allocation, per-sender removed-winner outside options, and the
/// transfers that make ex-post participation bind exactly. A single-sender
/// auction gains an explicit no-award outcome so the outside option exists.
AuctionDesign gen_auction_model(const AuctionParams& params);

std::string to_json(const AuditPlan& plan, const AuditParams& params,
                    int indent = -1);

}  // namespace exante
