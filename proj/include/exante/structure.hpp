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

/// A two-outcome payoff basis for one sender: every outcome's payoff column
/// coincides, type by type, with the column of `high_outcome` or of
/// `low_outcome`. Generalizes binary-action and good-allocation problems.
struct TwoClassCert {
  std::size_t sender = 0;
  std::size_t high_outcome = 0;  // r1
  std::size_t low_outcome = 0;   // r2
  enum class Class { high, low };
  std::vector<Class> class_of;   // per outcome
  bool valid = false;
};

/// Searches outcome pairs in declaration order; returns the first valid
/// decomposition, or nullopt when payoffs do not collapse to two classes.
std::optional<TwoClassCert> find_two_class_decomposition(const ModelSpec& model,
                                                         std::size_t sender);

/// Types sorted so that the payoff gap u(r1, t) - u(r2, t) is ascending and
/// therefore crosses zero at most once. crossing_index is the first position
/// in the order with a nonnegative gap (num_types when the gap stays
/// negative).
struct SingleCrossingOrder {
  std::size_t sender = 0;
  std::vector<std::size_t> type_order;
  std::size_t crossing_index = 0;
  Vec gaps;  // in type_order
};

SingleCrossingOrder single_crossing_order(const ModelSpec& model,
                                          std::size_t sender,
                                          const TwoClassCert& cert);

/// Interim probability that the allocation lands in the sender's high payoff
/// class, one entry per own type.
Vec interim_high_class_prob(const ModelSpec& model, const Allocation& p,
                            std::size_t sender, const TwoClassCert& cert);

/// Checks that the interim high-class probability is nondecreasing along the
/// single-crossing order, within kTieTol.
bool is_monotone(const ModelSpec& model, const Allocation& p, std::size_t sender,
                 const TwoClassCert& cert, const SingleCrossingOrder& order);

enum class CertificateVerdict { implementable, not_implementable, inconclusive };

struct MonotoneCertificate {
  std::size_t sender = 0;
  CertificateVerdict verdict = CertificateVerdict::inconclusive;
  std::optional<TwoClassCert> decomposition;
  std::optional<SingleCrossingOrder> order;
  Vec interim_high;  // indexed by type, empty without a decomposition
};

/// Fast structural certificates, one per sender: implementable when the
/// sender's payoffs split into two single-crossing classes and the
/// allocation is monotone; not_implementable when a strictly-preferring type
/// receives the high class with strictly lower probability than a
/// strictly-averse type; inconclusive otherwise.
std::vector<MonotoneCertificate> monotone_certificate_check(const ModelSpec& model,
                                                            const Allocation& p);

/// The outcome minimizing every payoff column of the sender within kTieTol,
/// if one exists. Equivalent to every allocation being implementable for
/// that sender.
std::optional<std::size_t> common_least_favorite(const ModelSpec& model,
                                                 std::size_t sender);

/// A subset of at most `max_subset` types showing the allocation bottoms the
/// sender out while the subset disagrees on a worst outcome, certified by a
/// belief on the subset with a strictly positive deviation gap.
struct LeastFavoriteConflict {
  std::size_t sender = 0;
  std::vector<std::size_t> types;
  Belief witness;
  double gap = 0.0;
};

/// Search is over subsets where every type is handed its least favorite
/// among the outcomes the allocation uses on the subset and the subset has
/// no common least favorite overall. Candidates are only reported with a
/// positive-gap certificate, so a returned conflict always proves the
/// allocation is not implementable. `exhaustive` lifts the default size cap
/// of 3.
std::optional<LeastFavoriteConflict> no_fall_guys_check(const ModelSpec& model,
                                                        const Allocation& p,
                                                        std::size_t sender,
                                                        bool exhaustive = false);

/// Component-wise product of models with matching sender counts: product
/// type and outcome spaces, payoffs added across components, independent
/// product priors, receiver payoff summed. The product of the component
/// allocations is returned with it.
struct ProductModel {
  ModelSpec model;
  Allocation allocation;
};

ProductModel product_compose(const std::vector<ModelSpec>& models,
                             const std::vector<Allocation>& allocations);

/// Per-sender classification report (decomposition, order, common least
/// favorite, certificates when an allocation is supplied).
std::string structure_report_json(const ModelSpec& model,
                                  const Allocation* p = nullptr,
                                  int indent = -1);

}  // namespace exante
