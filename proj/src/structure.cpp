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

#include "exante/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "exante/ic.hpp"
#include "exante/punishment.hpp"

namespace exante {

namespace {

bool columns_match(const std::vector<Vec>& payoff, std::size_t ra,
                   std::size_t rb) {
  for (std::size_t t = 0; t < payoff[ra].size(); ++t)
    if (std::abs(payoff[ra][t] - payoff[rb][t]) > kTieTol) return false;
  return true;
}

// Distribution over outcomes sender i faces at own type t, others integrated
// out under their priors.
std::vector<Vec> interim_outcome_dist(const ModelSpec& model,
                                      const Allocation& p, std::size_t sender) {
  const std::size_t m = model.senders[sender].num_types();
  std::vector<Vec> dist(m, Vec(model.num_outcomes(), 0.0));
  for (std::size_t index = 0; index < model.num_profiles(); ++index) {
    std::size_t t = model.type_in_profile(index, sender);
    double w = model.opponent_prior(index, sender);
    for (std::size_t r = 0; r < model.num_outcomes(); ++r)
      dist[t][r] += w * p.rows[index][r];
  }
  return dist;
}

}  // namespace

std::optional<TwoClassCert> find_two_class_decomposition(const ModelSpec& model,
                                                         std::size_t sender) {
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  const auto& payoff = model.senders[sender].payoff;
  const std::size_t R = model.num_outcomes();
  TwoClassCert cert;
  cert.sender = sender;
  if (R == 1) {
    cert.high_outcome = cert.low_outcome = 0;
    cert.class_of = {TwoClassCert::Class::high};
    cert.valid = true;
    return cert;
  }
  for (std::size_t a = 0; a < R; ++a) {
    for (std::size_t b = a + 1; b < R; ++b) {
      cert.class_of.assign(R, TwoClassCert::Class::high);
      bool ok = true;
      for (std::size_t r = 0; r < R && ok; ++r) {
        if (columns_match(payoff, r, a))
          cert.class_of[r] = TwoClassCert::Class::high;
        else if (columns_match(payoff, r, b))
          cert.class_of[r] = TwoClassCert::Class::low;
        else
          ok = false;
      }
      if (ok) {
        cert.high_outcome = a;
        cert.low_outcome = b;
        cert.valid = true;
        return cert;
      }
    }
  }
  return std::nullopt;
}

SingleCrossingOrder single_crossing_order(const ModelSpec& model,
                                          std::size_t sender,
                                          const TwoClassCert& cert) {
  if (!cert.valid) throw ValidationError("decomposition certificate not valid");
  const auto& payoff = model.senders[sender].payoff;
  const std::size_t m = model.senders[sender].num_types();
  SingleCrossingOrder order;
  order.sender = sender;
  order.type_order.resize(m);
  std::iota(order.type_order.begin(), order.type_order.end(), 0);
  Vec gap(m, 0.0);
  for (std::size_t t = 0; t < m; ++t)
    gap[t] = payoff[cert.high_outcome][t] - payoff[cert.low_outcome][t];
  std::stable_sort(order.type_order.begin(), order.type_order.end(),
                   [&gap](std::size_t x, std::size_t y) { return gap[x] < gap[y]; });
  order.gaps.resize(m);
  order.crossing_index = m;
  for (std::size_t pos = 0; pos < m; ++pos) {
    order.gaps[pos] = gap[order.type_order[pos]];
    if (order.crossing_index == m && order.gaps[pos] >= 0.0)
      order.crossing_index = pos;
  }
  return order;
}

Vec interim_high_class_prob(const ModelSpec& model, const Allocation& p,
                            std::size_t sender, const TwoClassCert& cert) {
  validate(model, p);
  auto dist = interim_outcome_dist(model, p, sender);
  Vec high(dist.size(), 0.0);
  for (std::size_t t = 0; t < dist.size(); ++t)
    for (std::size_t r = 0; r < model.num_outcomes(); ++r)
      if (cert.class_of[r] == TwoClassCert::Class::high) high[t] += dist[t][r];
  return high;
}

bool is_monotone(const ModelSpec& model, const Allocation& p, std::size_t sender,
                 const TwoClassCert& cert, const SingleCrossingOrder& order) {
  Vec high = interim_high_class_prob(model, p, sender, cert);
  for (std::size_t pos = 0; pos + 1 < order.type_order.size(); ++pos)
    if (high[order.type_order[pos + 1]] < high[order.type_order[pos]] - kTieTol)
      return false;
  return true;
}

std::vector<MonotoneCertificate> monotone_certificate_check(const ModelSpec& model,
                                                            const Allocation& p) {
  validate(model, p);
  std::vector<MonotoneCertificate> result;
  for (std::size_t i = 0; i < model.num_senders(); ++i) {
    MonotoneCertificate mc;
    mc.sender = i;
    mc.decomposition = find_two_class_decomposition(model, i);
    if (!mc.decomposition) {
      mc.verdict = CertificateVerdict::inconclusive;
      result.push_back(std::move(mc));
      continue;
    }
    mc.order = single_crossing_order(model, i, *mc.decomposition);
    mc.interim_high = interim_high_class_prob(model, p, i, *mc.decomposition);
    if (is_monotone(model, p, i, *mc.decomposition, *mc.order)) {
      mc.verdict = CertificateVerdict::implementable;
      result.push_back(std::move(mc));
      continue;
    }
    // A strictly-preferring type served the high class strictly less often
    // than a strictly-averse one rules the allocation out.
    mc.verdict = CertificateVerdict::inconclusive;
    const auto& payoff = model.senders[i].payoff;
    const auto& cert = *mc.decomposition;
    double min_high = std::numeric_limits<double>::infinity();
    double max_low = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < mc.interim_high.size(); ++t) {
      double gap = payoff[cert.high_outcome][t] - payoff[cert.low_outcome][t];
      if (gap > kTieTol) min_high = std::min(min_high, mc.interim_high[t]);
      if (gap < -kTieTol) max_low = std::max(max_low, mc.interim_high[t]);
    }
    if (min_high < max_low - kTieTol)
      mc.verdict = CertificateVerdict::not_implementable;
    result.push_back(std::move(mc));
  }
  return result;
}

std::optional<std::size_t> common_least_favorite(const ModelSpec& model,
                                                 std::size_t sender) {
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  const auto& payoff = model.senders[sender].payoff;
  const std::size_t m = model.senders[sender].num_types();
  for (std::size_t r = 0; r < model.num_outcomes(); ++r) {
    bool worst_everywhere = true;
    for (std::size_t t = 0; t < m && worst_everywhere; ++t)
      for (std::size_t other = 0; other < model.num_outcomes(); ++other)
        if (payoff[r][t] > payoff[other][t] + kTieTol) {
          worst_everywhere = false;
          break;
        }
    if (worst_everywhere) return r;
  }
  return std::nullopt;
}

namespace {

// Restriction of one sender's problem to a subset of own types: the face of
// the belief simplex supported there, with the interim outcome distribution
// as a single-sender allocation.
struct RestrictedProblem {
  ModelSpec model;
  Allocation allocation;
  std::vector<std::size_t> types;  // restricted index -> original type
};

RestrictedProblem restrict_to_subset(const ModelSpec& model,
                                     const std::vector<Vec>& interim_dist,
                                     std::size_t sender,
                                     const std::vector<std::size_t>& subset) {
  RestrictedProblem sub;
  sub.types = subset;
  SenderSpec s;
  s.name = model.senders[sender].name;
  const double u = 1.0 / static_cast<double>(subset.size());
  for (std::size_t t : subset) {
    s.types.push_back(model.senders[sender].types[t]);
    s.prior.push_back(u);
  }
  for (std::size_t r = 0; r < model.num_outcomes(); ++r) {
    Vec row;
    for (std::size_t t : subset)
      row.push_back(model.senders[sender].payoff[r][t]);
    s.payoff.push_back(std::move(row));
  }
  sub.model.senders.push_back(std::move(s));
  sub.model.outcomes = model.outcomes;
  sub.model.receiver_payoff.assign(model.num_outcomes(),
                                   Vec(subset.size(), 0.0));
  for (std::size_t t : subset) sub.allocation.rows.push_back(interim_dist[t]);
  return sub;
}

}  // namespace

std::optional<LeastFavoriteConflict> no_fall_guys_check(const ModelSpec& model,
                                                        const Allocation& p,
                                                        std::size_t sender,
                                                        bool exhaustive) {
  validate(model, p);
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  const auto& payoff = model.senders[sender].payoff;
  const std::size_t m = model.senders[sender].num_types();
  const std::size_t R = model.num_outcomes();
  auto interim_dist = interim_outcome_dist(model, p, sender);

  std::vector<std::vector<bool>> least(m, std::vector<bool>(R, false));
  for (std::size_t t = 0; t < m; ++t) {
    double bottom = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < R; ++r) bottom = std::min(bottom, payoff[r][t]);
    for (std::size_t r = 0; r < R; ++r)
      least[t][r] = payoff[r][t] <= bottom + kTieTol;
  }

  const std::size_t cap = exhaustive ? m : std::min<std::size_t>(m, 3);
  std::vector<std::size_t> subset;
  std::optional<LeastFavoriteConflict> found;

  auto consider = [&](const std::vector<std::size_t>& types) {
    if (found) return;
    // Disagreement on the worst outcome across the subset.
    std::vector<bool> common(R, true);
    for (std::size_t t : types)
      for (std::size_t r = 0; r < R; ++r)
        common[r] = common[r] && least[t][r];
    if (std::any_of(common.begin(), common.end(), [](bool b) { return b; }))
      return;
    // Each type is handed its worst among the outcomes used on the subset.
    std::vector<bool> used(R, false);
    for (std::size_t t : types)
      for (std::size_t r = 0; r < R; ++r)
        if (interim_dist[t][r] > kTieTol) used[r] = true;
    for (std::size_t t : types) {
      double floor = std::numeric_limits<double>::infinity();
      double got = 0.0;
      for (std::size_t r = 0; r < R; ++r) {
        if (used[r]) floor = std::min(floor, payoff[r][t]);
        got += interim_dist[t][r] * payoff[r][t];
      }
      if (got > floor + kTieTol) return;
    }
    // Certify with an explicit profitable deviation on the subset's face.
    RestrictedProblem sub = restrict_to_subset(model, interim_dist, sender, types);
    DeviationReport sub_report =
        check_sender_ic(sub.model, sub.allocation, 0, IcMethod::vertex);
    if (sub_report.deviation_gap <= kIcTol) return;
    LeastFavoriteConflict conflict;
    conflict.sender = sender;
    conflict.types = types;
    conflict.gap = sub_report.deviation_gap;
    conflict.witness.sender = sender;
    conflict.witness.probs.assign(m, 0.0);
    for (std::size_t k = 0; k < types.size(); ++k)
      conflict.witness.probs[types[k]] = sub_report.worst_belief.probs[k];
    found = std::move(conflict);
  };

  auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (found) return;
    if (subset.size() >= 2) consider(subset);
    if (subset.size() == cap) return;
    for (std::size_t t = start; t < m; ++t) {
      subset.push_back(t);
      self(self, t + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);
  return found;
}

ProductModel product_compose(const std::vector<ModelSpec>& models,
                             const std::vector<Allocation>& allocations) {
  if (models.empty()) throw ValidationError("need at least one component model");
  if (models.size() != allocations.size())
    throw ValidationError("need one allocation per component model");
  const std::size_t n = models[0].num_senders();
  for (std::size_t k = 0; k < models.size(); ++k) {
    validate(models[k]);
    validate(models[k], allocations[k]);
    if (models[k].num_senders() != n)
      throw ValidationError("component models must have matching sender counts");
  }
  const std::size_t K = models.size();

  ProductModel product;
  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (k) s += "|";
      s += parts[k];
    }
    return s;
  };

  // Component indices from a product index, component 0 most significant.
  auto split_index = [K](std::size_t index,
                         const std::vector<std::size_t>& radix) {
    std::vector<std::size_t> parts(K, 0);
    for (std::size_t k = K; k-- > 0;) {
      parts[k] = index % radix[k];
      index /= radix[k];
    }
    return parts;
  };

  std::vector<std::size_t> outcome_radix;
  for (const auto& mk : models) outcome_radix.push_back(mk.num_outcomes());
  std::size_t R = 1;
  for (std::size_t rk : outcome_radix) R *= rk;
  for (std::size_t ro = 0; ro < R; ++ro) {
    auto parts = split_index(ro, outcome_radix);
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < K; ++k)
      labels.push_back(models[k].outcomes[parts[k]]);
    product.model.outcomes.push_back(join(labels));
  }

  std::vector<std::vector<std::size_t>> type_radix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& mk : models)
      type_radix[i].push_back(mk.senders[i].num_types());
    SenderSpec s;
    s.name = models[0].senders[i].name;
    std::size_t M = 1;
    for (std::size_t tk : type_radix[i]) M *= tk;
    for (std::size_t to = 0; to < M; ++to) {
      auto parts = split_index(to, type_radix[i]);
      std::vector<std::string> labels;
      double mass = 1.0;
      for (std::size_t k = 0; k < K; ++k) {
        labels.push_back(models[k].senders[i].types[parts[k]]);
        mass *= models[k].senders[i].prior[parts[k]];
      }
      s.types.push_back(join(labels));
      s.prior.push_back(mass);
    }
    s.payoff.assign(R, Vec(M, 0.0));
    for (std::size_t ro = 0; ro < R; ++ro) {
      auto rparts = split_index(ro, outcome_radix);
      for (std::size_t to = 0; to < M; ++to) {
        auto tparts = split_index(to, type_radix[i]);
        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k)
          sum += models[k].senders[i].payoff[rparts[k]][tparts[k]];
        s.payoff[ro][to] = sum;
      }
    }
    product.model.senders.push_back(std::move(s));
  }

  const std::size_t N = product.model.num_profiles();
  product.model.receiver_payoff.assign(R, Vec(N, 0.0));
  product.allocation.rows.assign(N, Vec(R, 0.0));
  for (std::size_t index = 0; index < N; ++index) {
    auto profile = product.model.unflatten(index);
    // Component profiles of the product profile.
    std::vector<std::size_t> component_flat(K, 0);
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<std::size_t> comp_profile(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        comp_profile[i] = split_index(profile[i], type_radix[i])[k];
      component_flat[k] = models[k].flatten(comp_profile);
    }
    for (std::size_t ro = 0; ro < R; ++ro) {
      auto rparts = split_index(ro, outcome_radix);
      double v = 0.0;
      double mass = 1.0;
      for (std::size_t k = 0; k < K; ++k) {
        v += models[k].receiver_payoff[rparts[k]][component_flat[k]];
        mass *= allocations[k].rows[component_flat[k]][rparts[k]];
      }
      product.model.receiver_payoff[ro][index] = v;
      product.allocation.rows[index][ro] = mass;
    }
  }
  validate(product.model);
  validate(product.model, product.allocation);
  return product;
}

std::string structure_report_json(const ModelSpec& model, const Allocation* p,
                                  int indent) {
  validate(model);
  if (p) validate(model, *p);
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  std::vector<MonotoneCertificate> certs;
  if (p) certs = monotone_certificate_check(model, *p);
  for (std::size_t i = 0; i < model.num_senders(); ++i) {
    nlohmann::ordered_json js;
    js["sender"] = model.senders[i].name;
    auto cert = find_two_class_decomposition(model, i);
    if (cert) {
      nlohmann::ordered_json jc;
      jc["high_outcome"] = model.outcomes[cert->high_outcome];
      jc["low_outcome"] = model.outcomes[cert->low_outcome];
      nlohmann::ordered_json classes;
      for (std::size_t r = 0; r < model.num_outcomes(); ++r)
        classes[model.outcomes[r]] =
            cert->class_of[r] == TwoClassCert::Class::high ? "high" : "low";
      jc["classes"] = std::move(classes);
      js["two_class_decomposition"] = std::move(jc);
      auto order = single_crossing_order(model, i, *cert);
      nlohmann::ordered_json jo;
      auto labels = nlohmann::ordered_json::array();
      for (std::size_t t : order.type_order)
        labels.push_back(model.senders[i].types[t]);
      jo["type_order"] = std::move(labels);
      jo["crossing_index"] = order.crossing_index;
      jo["gaps"] = order.gaps;
      js["single_crossing"] = std::move(jo);
    } else {
      js["two_class_decomposition"] = nullptr;
      js["single_crossing"] = nullptr;
    }
    auto clf = common_least_favorite(model, i);
    js["common_least_favorite"] =
        clf ? nlohmann::ordered_json(model.outcomes[*clf])
            : nlohmann::ordered_json(nullptr);
    if (p) {
      const auto& mc = certs[i];
      switch (mc.verdict) {
        case CertificateVerdict::implementable:
          js["certificate"] = "certified-implementable";
          break;
        case CertificateVerdict::not_implementable:
          js["certificate"] = "certified-not";
          break;
        case CertificateVerdict::inconclusive:
          js["certificate"] = "inconclusive";
          break;
      }
      if (!mc.interim_high.empty()) js["interim_high_class"] = mc.interim_high;
      auto conflict = no_fall_guys_check(model, *p, i);
      if (conflict) {
        nlohmann::ordered_json jv;
        auto types = nlohmann::ordered_json::array();
        for (std::size_t t : conflict->types)
          types.push_back(model.senders[i].types[t]);
        jv["types"] = std::move(types);
        jv["witness_belief"] = conflict->witness.probs;
        jv["deviation_gap"] = conflict->gap;
        js["least_favorite_conflict"] = std::move(jv);
      } else {
        js["least_favorite_conflict"] = nullptr;
      }
    }
    doc.push_back(std::move(js));
  }
  return doc.dump(indent);
}

}  // namespace exante
