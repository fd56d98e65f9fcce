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

#include "exante/model.hpp"

namespace exante {

/// One linear inequality coeffs . mu <= 0 over a sender's belief simplex.
struct DominanceConstraint {
  std::size_t other_outcome = 0;
  Vec coeffs;  // u(r, t) - u(other, t), normalized to unit max magnitude
};

/// Halfspace description of the region where outcome `outcome` is a
/// worst-case punishment for `sender`: the |R|-1 dominance inequalities plus
/// the simplex constraints (entries >= 0, summing to one).
struct PunishmentRegion {
  std::size_t sender = 0;
  std::size_t outcome = 0;
  std::vector<DominanceConstraint> dominance;

  bool contains(const Vec& probs, double tol = kSumTol) const;
};

PunishmentRegion region_membership(const ModelSpec& model, std::size_t sender,
                                   std::size_t outcome);

enum class TestBeliefKind { degenerate, vertex };

/// Which constraint of the region's combined system is active at a vertex.
struct ActiveConstraint {
  enum class Kind { nonnegativity, dominance } kind;
  std::size_t index;  // type index or competing-outcome index
};

struct TestBelief {
  Belief belief;
  TestBeliefKind kind = TestBeliefKind::vertex;
  /// Region whose enumeration produced this point (for vertices).
  std::size_t source_region = 0;
  std::vector<ActiveConstraint> active;
  /// All outcomes whose region contains the point within kTieTol, i.e. the
  /// grim-trigger minimizer set there.
  std::vector<std::size_t> regions;
};

/// The finite set of beliefs that pins down a sender's global incentive
/// constraints: every degenerate belief plus every vertex of every
/// punishment region, deduplicated (L1 distance below 1e-8).
struct TestBeliefSet {
  std::size_t sender = 0;
  std::vector<TestBelief> degenerate;
  std::vector<TestBelief> vertices;

  std::vector<const TestBelief*> all() const;
};

/// Enumerates region vertices exhaustively: every cardinality-(|T_i|-1)
/// subset of the combined constraint system (nonnegativity plus dominance)
/// is solved together with the normalization equality; solutions feasible
/// for all constraints are kept. Rank-deficient subsets are skipped
/// (scaled determinant below 1e-12).
TestBeliefSet enumerate_vertices(const ModelSpec& model, std::size_t sender);

std::string to_json(const ModelSpec& model, const TestBeliefSet& set,
                    int indent = -1);

/// A two-type belief making one pair of outcomes exactly indifferent.
struct PairwiseIndifference {
  std::size_t outcome_a = 0;
  std::size_t outcome_b = 0;
  std::size_t type_pos = 0;   // payoff gap favors outcome_a here
  std::size_t type_neg = 0;   // and favors outcome_b here
  double alpha = 0.0;         // weight on type_pos
  Belief belief;
};

struct PairwiseIndifferenceSet {
  std::size_t sender = 0;
  std::vector<PairwiseIndifference> entries;
};

/// For every outcome pair and every type pair whose payoff gaps have
/// opposite signs, the unique two-type belief equalizing the two expected
/// payoffs. A fast prefilter: necessary but not sufficient for locating the
/// worst deviation belief.
PairwiseIndifferenceSet pairwise_prefilter(const ModelSpec& model,
                                           std::size_t sender);

}  // namespace exante
