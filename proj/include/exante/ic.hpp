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

#include "exante/beliefs.hpp"
#include "exante/model.hpp"

namespace exante {

/// How the worst deviation value is computed.
///
/// vertex    exact finite search over the test belief set (default)
/// primal_lp exact LP over beliefs, max of the concave lower envelope
/// dual_lp   exact LP over punishment lotteries (the minimax dual)
/// grid      brute force over beliefs with a fixed denominator
enum class IcMethod { vertex, primal_lp, dual_lp, grid };

std::string to_string(IcMethod m);
IcMethod ic_method_from_string(const std::string& name);

/// A Bayes-plausible deviation: weight `alpha` on the worst belief and the
/// remaining prior mass on degenerate beliefs, reconstructing the prior
/// exactly. alpha is maximal subject to the residual staying nonnegative.
struct DeviationSplit {
  double alpha = 0.0;
  Vec residual;  // per type, weight on the degenerate belief
};

struct DeviationReport {
  std::size_t sender = 0;
  bool implementable = false;
  /// True when the worst gap is positive but inside the tolerance band.
  bool boundary = false;
  Belief worst_belief;
  double deviation_gap = 0.0;          // punishment value minus allocation value
  std::vector<std::size_t> grim_set;   // punishment minimizers at worst_belief
  DeviationSplit deviation;
  IcMethod method = IcMethod::vertex;
  /// Finite-search methods list every maximizer within kIcTol of the worst.
  std::vector<Belief> near_worst;
};

struct ImplementabilityReport {
  std::vector<DeviationReport> senders;
  bool implementable = false;
};

/// Worst-case punishment value at mu minus the sender's expected allocation
/// payoff at mu. The allocation is implementable for the sender iff this is
/// nonpositive at every belief.
double deviation_gap_at(const ModelSpec& model, const Allocation& p,
                        const Belief& mu);

DeviationReport check_sender_ic(const ModelSpec& model, const Allocation& p,
                                std::size_t sender,
                                IcMethod method = IcMethod::vertex,
                                std::size_t grid_denominator = 40);

/// Checks every sender with the vertex method; overall verdict is the
/// conjunction.
ImplementabilityReport check_implementable(const ModelSpec& model,
                                           const Allocation& p);

/// The weaker notion where the mechanism also observes the chosen
/// experiment: one incentive check per sender, at the prior.
std::vector<bool> experiment_implementable(const ModelSpec& model,
                                           const Allocation& p);

std::string to_json(const ModelSpec& model, const DeviationReport& report,
                    int indent = -1);
std::string to_json(const ModelSpec& model, const ImplementabilityReport& report,
                    int indent = -1);

}  // namespace exante
