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
#include <string>
#include <vector>

#include "exante/common.hpp"

namespace exante {

/// One sender: a finite type space with a full-support prior and a payoff
/// matrix over (outcome, own type).
struct SenderSpec {
  std::string name;
  std::vector<std::string> types;
  Vec prior;                     // over types, full support
  std::vector<Vec> payoff;       // payoff[r][t], |R| x |T_i|

  std::size_t num_types() const { return types.size(); }
};

/// A posterior belief about one sender's type.
struct Belief {
  std::size_t sender = 0;
  Vec probs;

  static Belief degenerate(std::size_t sender, std::size_t type,
                           std::size_t num_types);
  bool is_degenerate(double tol = kTieTol) const;
};

/// A problem instance. Immutable after construction; all operations in this
/// library are pure functions of their arguments.
///
/// Type profiles are flattened row-major in sender declaration order: the
/// first sender varies slowest. This convention is part of the JSON format
/// for `receiver_payoff`.
struct ModelSpec {
  std::vector<SenderSpec> senders;
  std::vector<std::string> outcomes;
  std::vector<Vec> receiver_payoff;  // v[r][profile], |R| x prod |T_i|

  std::size_t num_senders() const { return senders.size(); }
  std::size_t num_outcomes() const { return outcomes.size(); }
  std::size_t num_profiles() const;

  std::size_t flatten(const std::vector<std::size_t>& profile) const;
  std::vector<std::size_t> unflatten(std::size_t index) const;
  /// Type of sender i in the flattened profile.
  std::size_t type_in_profile(std::size_t index, std::size_t sender) const;
  /// Prior mass of a full profile.
  double profile_prior(std::size_t index) const;
  /// Prior mass of everyone except `sender` at this profile.
  double opponent_prior(std::size_t index, std::size_t sender) const;

  std::size_t outcome_index(const std::string& label) const;
};

/// A (possibly stochastic) allocation: one distribution over outcomes per
/// flattened type profile.
struct Allocation {
  std::vector<Vec> rows;  // rows[profile][outcome]
};

/// Throws ValidationError unless every invariant holds (dimensions, prior
/// normalization and full support, finite entries, unique labels).
void validate(const ModelSpec& model);
void validate(const ModelSpec& model, const Allocation& p);
void validate(const ModelSpec& model, const Belief& belief);

/// Parses and validates a model document. See README for the schema.
ModelSpec load_model(const std::string& json_text);
std::string to_json(const ModelSpec& model, int indent = -1);

/// Parses an allocation document against a model. Profiles are matched by
/// type labels, so row order in the file does not matter; every profile must
/// appear exactly once.
Allocation load_allocation(const ModelSpec& model, const std::string& json_text);
std::string to_json(const ModelSpec& model, const Allocation& p, int indent = -1);

/// Expected payoff to sender i under truthful reporting, one entry per own
/// type: other senders' types are integrated out under their priors. Never
/// reads sender i's own prior.
Vec interim_payoff(const ModelSpec& model, const Allocation& p, std::size_t sender);

/// Receiver's expected payoff from the allocation under the prior.
double receiver_value(const ModelSpec& model, const Allocation& p);

}  // namespace exante
