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

#include "exante/punishment.hpp"

#include <algorithm>
#include <limits>

namespace exante {

PunishmentSet grim_trigger(const ModelSpec& model, const Belief& mu) {
  validate(model, mu);
  const auto& payoff = model.senders[mu.sender].payoff;
  PunishmentSet set;
  set.sender = mu.sender;
  set.belief = mu;
  Vec expected(model.num_outcomes(), 0.0);
  set.value = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < model.num_outcomes(); ++r) {
    expected[r] = dot(payoff[r], mu.probs);
    set.value = std::min(set.value, expected[r]);
  }
  for (std::size_t r = 0; r < model.num_outcomes(); ++r)
    if (expected[r] <= set.value + kTieTol) set.minimizers.push_back(r);
  return set;
}

std::function<double(const Belief&)> punishment_value_fn(const ModelSpec& model,
                                                         std::size_t sender) {
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  // Captured by value so the callable outlives the caller's model.
  return [model, sender](const Belief& mu) {
    Belief b = mu;
    b.sender = sender;
    return grim_trigger(model, b).value;
  };
}

MechanismOutcome evaluate_mechanism(const ModelSpec& model, const Allocation& p,
                                    const std::vector<Belief>& beliefs) {
  validate(model, p);
  if (beliefs.size() != model.num_senders())
    throw ValidationError("need exactly one belief per sender");
  std::vector<std::size_t> deviators;
  std::vector<std::size_t> profile(model.num_senders(), 0);
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    Belief b = beliefs[i];
    b.sender = i;
    validate(model, b);
    if (b.is_degenerate()) {
      auto it = std::max_element(b.probs.begin(), b.probs.end());
      profile[i] = static_cast<std::size_t>(it - b.probs.begin());
    } else {
      deviators.push_back(i);
    }
  }

  MechanismOutcome out;
  out.dist.assign(model.num_outcomes(), 0.0);
  if (deviators.empty()) {
    out.path = MechanismPath::on_path;
    out.dist = p.rows[model.flatten(profile)];
  } else if (deviators.size() == 1) {
    std::size_t i = deviators.front();
    Belief b = beliefs[i];
    b.sender = i;
    auto punishment = grim_trigger(model, b);
    out.path = MechanismPath::punishment;
    out.punished_sender = i;
    out.punishment_value = punishment.value;
    out.dist[punishment.minimizers.front()] = 1.0;
  } else {
    // Unconstrained region: no single-deviator profile reads this value.
    out.path = MechanismPath::off_path;
    out.dist[0] = 1.0;
  }
  return out;
}

}  // namespace exante
