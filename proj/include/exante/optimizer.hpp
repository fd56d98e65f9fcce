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
#include <utility>
#include <vector>

#include "exante/ic.hpp"
#include "exante/model.hpp"

namespace exante {

/// The receiver's favourite outcome at each profile, ties broken by
/// declaration order; `ties` records all maximizers per profile.
struct UnconstrainedOptimum {
  Allocation allocation;
  double value = 0.0;
  std::vector<std::vector<std::size_t>> ties;
};

UnconstrainedOptimum unconstrained_optimum(const ModelSpec& model);

/// Solution of the receiver's problem over stochastic allocations subject to
/// incentive constraints at every non-degenerate test belief.
struct Optimum {
  Allocation allocation;
  double value = 0.0;
  /// Incentive constraints with slack at most kIcTol at the optimum.
  std::vector<std::pair<std::size_t, Belief>> binding;
  /// Every row of the raw LP solution is within kTieTol of a point mass.
  bool deterministic = false;
  double unconstrained_value = 0.0;
  double first_best_gap = 0.0;
  std::vector<std::vector<std::size_t>> unconstrained_ties;
};

Optimum constrained_optimum(const ModelSpec& model);

/// An outcome in the allocation's support strictly dominated, at its
/// profile, for the receiver and every sender at once.
struct ParetoViolation {
  std::size_t profile = 0;
  std::size_t outcome = 0;    // supported by p
  std::size_t dominator = 0;  // strictly better for everyone
};

std::vector<ParetoViolation> pareto_support_audit(const ModelSpec& model,
                                                  const Allocation& p);

std::string to_json(const ModelSpec& model, const Optimum& opt, int indent = -1);

}  // namespace exante
