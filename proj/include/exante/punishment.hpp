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
#include <functional>
#include <optional>
#include <vector>

#include "exante/model.hpp"

namespace exante {

/// The worst-case punishment at a belief: the set of pure outcomes that
/// minimize the sender's expected payoff, and the minimized value.
struct PunishmentSet {
  std::size_t sender = 0;
  Belief belief;
  std::vector<std::size_t> minimizers;  // ascending outcome indices
  double value = 0.0;
};

/// Exact argmin over pure outcomes of expected sender payoff at `mu`.
/// Members tie with the minimum within kTieTol.
PunishmentSet grim_trigger(const ModelSpec& model, const Belief& mu);

/// The map mu -> minimized expected payoff for one sender. Concave in mu.
std::function<double(const Belief&)> punishment_value_fn(const ModelSpec& model,
                                                         std::size_t sender);

/// How a profile of beliefs was classified when evaluating the mechanism.
enum class MechanismPath {
  on_path,      // all beliefs degenerate: the allocation applies
  punishment,   // exactly one non-degenerate belief: grim trigger applies
  off_path,     // two or more non-degenerate beliefs: unconstrained default
};

struct MechanismOutcome {
  Vec dist;  // over outcomes
  MechanismPath path = MechanismPath::on_path;
  std::optional<std::size_t> punished_sender;
  std::optional<double> punishment_value;
};

/// Evaluates the direct grim-trigger mechanism for allocation `p` at one
/// belief per sender. With a single non-degenerate belief the punishment is
/// the lexicographically first minimizer; with two or more the value is a
/// declared-arbitrary default (point mass on outcome 0) flagged off_path.
MechanismOutcome evaluate_mechanism(const ModelSpec& model, const Allocation& p,
                                    const std::vector<Belief>& beliefs);

}  // namespace exante
