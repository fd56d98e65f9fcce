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

#include "exante/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <nlohmann/json.hpp>

#include "exante/punishment.hpp"

namespace exante {

namespace {

constexpr double kSingularTol = 1e-12;
constexpr double kDedupTol = 1e-8;

// Gaussian elimination with partial pivoting on rows pre-scaled to unit max
// magnitude; rejects systems whose scaled determinant is below kSingularTol.
std::optional<Vec> solve_square(std::vector<Vec> a, Vec b) {
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    double scale = 0.0;
    for (double v : a[i]) scale = std::max(scale, std::abs(v));
    if (scale < kSingularTol) return std::nullopt;
    for (auto& v : a[i]) v /= scale;
    b[i] /= scale;
  }
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a[i][col]) > std::abs(a[pivot][col])) pivot = i;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    det *= a[col][col];
    if (std::abs(det) < kSingularTol) return std::nullopt;
    for (std::size_t i = col + 1; i < n; ++i) {
      double f = a[i][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  Vec x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

// Next k-subset of {0..n-1} in lexicographic order; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

bool PunishmentRegion::contains(const Vec& probs, double tol) const {
  double sum = 0.0;
  for (double x : probs) {
    if (x < -tol) return false;
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol) return false;
  for (const auto& c : dominance)
    if (dot(c.coeffs, probs) > tol) return false;
  return true;
}

PunishmentRegion region_membership(const ModelSpec& model, std::size_t sender,
                                   std::size_t outcome) {
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  if (outcome >= model.num_outcomes())
    throw ValidationError("outcome index out of range");
  const auto& payoff = model.senders[sender].payoff;
  PunishmentRegion region;
  region.sender = sender;
  region.outcome = outcome;
  for (std::size_t other = 0; other < model.num_outcomes(); ++other) {
    if (other == outcome) continue;
    DominanceConstraint c;
    c.other_outcome = other;
    c.coeffs.resize(payoff[outcome].size());
    double scale = 0.0;
    for (std::size_t t = 0; t < c.coeffs.size(); ++t) {
      c.coeffs[t] = payoff[outcome][t] - payoff[other][t];
      scale = std::max(scale, std::abs(c.coeffs[t]));
    }
    if (scale > kSingularTol)
      for (auto& v : c.coeffs) v /= scale;
    region.dominance.push_back(std::move(c));
  }
  return region;
}

std::vector<const TestBelief*> TestBeliefSet::all() const {
  std::vector<const TestBelief*> out;
  out.reserve(degenerate.size() + vertices.size());
  for (const auto& b : degenerate) out.push_back(&b);
  for (const auto& b : vertices) out.push_back(&b);
  return out;
}

TestBeliefSet enumerate_vertices(const ModelSpec& model, std::size_t sender) {
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  const std::size_t m = model.senders[sender].num_types();

  TestBeliefSet set;
  set.sender = sender;
  for (std::size_t t = 0; t < m; ++t) {
    TestBelief tb;
    tb.belief = Belief::degenerate(sender, t, m);
    tb.kind = TestBeliefKind::degenerate;
    tb.regions = grim_trigger(model, tb.belief).minimizers;
    set.degenerate.push_back(std::move(tb));
  }
  if (m == 1) return set;  // the whole simplex is one point

  auto known = [&](const Vec& probs) {
    for (const auto& b : set.degenerate)
      if (l1_distance(b.belief.probs, probs) < kDedupTol) return true;
    for (const auto& b : set.vertices)
      if (l1_distance(b.belief.probs, probs) < kDedupTol) return true;
    return false;
  };

  for (std::size_t r = 0; r < model.num_outcomes(); ++r) {
    PunishmentRegion region = region_membership(model, sender, r);
    // Combined inequality system: m nonnegativity rows then the dominance
    // rows; any m-1 of them active plus the normalization gives a candidate.
    const std::size_t total = m + region.dominance.size();
    std::vector<std::size_t> pick(m - 1);
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
    do {
      std::vector<Vec> a;
      Vec b;
      for (std::size_t idx : pick) {
        if (idx < m) {
          Vec row(m, 0.0);
          row[idx] = -1.0;
          a.push_back(std::move(row));
        } else {
          a.push_back(region.dominance[idx - m].coeffs);
        }
        b.push_back(0.0);
      }
      a.emplace_back(m, 1.0);
      b.push_back(1.0);
      auto solution = solve_square(std::move(a), std::move(b));
      if (!solution) continue;
      Vec& probs = *solution;
      if (!region.contains(probs, kSumTol)) continue;
      for (auto& x : probs)
        if (x <= 0.0) x = 0.0;
      double sum = 0.0;
      for (double x : probs) sum += x;
      for (auto& x : probs) x /= sum;
      if (known(probs)) continue;

      TestBelief tb;
      tb.belief.sender = sender;
      tb.belief.probs = std::move(probs);
      tb.kind = TestBeliefKind::vertex;
      tb.source_region = r;
      for (std::size_t idx : pick) {
        ActiveConstraint ac;
        if (idx < m) {
          ac.kind = ActiveConstraint::Kind::nonnegativity;
          ac.index = idx;
        } else {
          ac.kind = ActiveConstraint::Kind::dominance;
          ac.index = region.dominance[idx - m].other_outcome;
        }
        tb.active.push_back(ac);
      }
      tb.regions = grim_trigger(model, tb.belief).minimizers;
      set.vertices.push_back(std::move(tb));
    } while (next_combination(pick, total));
  }
  return set;
}

std::string to_json(const ModelSpec& model, const TestBeliefSet& set,
                    int indent) {
  nlohmann::ordered_json doc;
  doc["sender"] = set.sender;
  auto beliefs = nlohmann::ordered_json::array();
  for (const TestBelief* tb : set.all()) {
    nlohmann::ordered_json jb;
    jb["probs"] = tb->belief.probs;
    jb["kind"] = tb->kind == TestBeliefKind::degenerate ? "degenerate" : "vertex";
    auto regions = nlohmann::ordered_json::array();
    for (std::size_t r : tb->regions) regions.push_back(model.outcomes[r]);
    jb["regions"] = std::move(regions);
    beliefs.push_back(std::move(jb));
  }
  doc["beliefs"] = std::move(beliefs);
  return doc.dump(indent);
}

PairwiseIndifferenceSet pairwise_prefilter(const ModelSpec& model,
                                           std::size_t sender) {
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  const auto& payoff = model.senders[sender].payoff;
  const std::size_t m = model.senders[sender].num_types();
  PairwiseIndifferenceSet set;
  set.sender = sender;
  for (std::size_t ra = 0; ra < model.num_outcomes(); ++ra) {
    for (std::size_t rb = ra + 1; rb < model.num_outcomes(); ++rb) {
      for (std::size_t ta = 0; ta < m; ++ta) {
        for (std::size_t tb = ta + 1; tb < m; ++tb) {
          double ga = payoff[ra][ta] - payoff[rb][ta];
          double gb = payoff[ra][tb] - payoff[rb][tb];
          std::size_t pos, neg;
          if (ga > kTieTol && gb < -kTieTol) {
            pos = ta;
            neg = tb;
          } else if (gb > kTieTol && ga < -kTieTol) {
            pos = tb;
            neg = ta;
            std::swap(ga, gb);
          } else {
            continue;  // no preference crossing on this type pair
          }
          PairwiseIndifference entry;
          entry.outcome_a = ra;
          entry.outcome_b = rb;
          entry.type_pos = pos;
          entry.type_neg = neg;
          entry.alpha = -gb / (ga - gb);
          entry.belief.sender = sender;
          entry.belief.probs.assign(m, 0.0);
          entry.belief.probs[pos] = entry.alpha;
          entry.belief.probs[neg] = 1.0 - entry.alpha;
          set.entries.push_back(std::move(entry));
        }
      }
    }
  }
  return set;
}

}  // namespace exante
