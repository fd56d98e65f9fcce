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

#include "exante/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace exante {

using ordered_json = nlohmann::ordered_json;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double l1_distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

bool is_distribution(const Vec& v, double tol) {
  double sum = 0.0;
  for (double x : v) {
    if (!std::isfinite(x) || x < -tol) return false;
    sum += x;
  }
  return std::abs(sum - 1.0) <= tol;
}

Belief Belief::degenerate(std::size_t sender, std::size_t type,
                          std::size_t num_types) {
  Belief b;
  b.sender = sender;
  b.probs.assign(num_types, 0.0);
  b.probs.at(type) = 1.0;
  return b;
}

bool Belief::is_degenerate(double tol) const {
  return std::any_of(probs.begin(), probs.end(),
                     [tol](double x) { return x >= 1.0 - tol; });
}

std::size_t ModelSpec::num_profiles() const {
  std::size_t n = 1;
  for (const auto& s : senders) n *= s.num_types();
  return n;
}

std::size_t ModelSpec::flatten(const std::vector<std::size_t>& profile) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < senders.size(); ++i)
    index = index * senders[i].num_types() + profile[i];
  return index;
}

std::vector<std::size_t> ModelSpec::unflatten(std::size_t index) const {
  std::vector<std::size_t> profile(senders.size(), 0);
  for (std::size_t i = senders.size(); i-- > 0;) {
    profile[i] = index % senders[i].num_types();
    index /= senders[i].num_types();
  }
  return profile;
}

std::size_t ModelSpec::type_in_profile(std::size_t index,
                                       std::size_t sender) const {
  for (std::size_t i = senders.size(); i-- > 0;) {
    std::size_t t = index % senders[i].num_types();
    if (i == sender) return t;
    index /= senders[i].num_types();
  }
  throw ValidationError("sender index out of range");
}

double ModelSpec::profile_prior(std::size_t index) const {
  double mass = 1.0;
  for (std::size_t i = senders.size(); i-- > 0;) {
    mass *= senders[i].prior[index % senders[i].num_types()];
    index /= senders[i].num_types();
  }
  return mass;
}

double ModelSpec::opponent_prior(std::size_t index, std::size_t sender) const {
  double mass = 1.0;
  for (std::size_t i = senders.size(); i-- > 0;) {
    std::size_t t = index % senders[i].num_types();
    if (i != sender) mass *= senders[i].prior[t];
    index /= senders[i].num_types();
  }
  return mass;
}

std::size_t ModelSpec::outcome_index(const std::string& label) const {
  auto it = std::find(outcomes.begin(), outcomes.end(), label);
  if (it == outcomes.end())
    throw ValidationError("unknown outcome label: " + label);
  return static_cast<std::size_t>(it - outcomes.begin());
}

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw ValidationError(message);
}

void check_unique(const std::vector<std::string>& labels,
                  const std::string& what) {
  std::set<std::string> seen(labels.begin(), labels.end());
  require(seen.size() == labels.size(), "duplicate " + what + " label");
}

}  // namespace

void validate(const ModelSpec& model) {
  require(!model.senders.empty(), "model needs at least one sender");
  require(!model.outcomes.empty(), "model needs at least one outcome");
  check_unique(model.outcomes, "outcome");
  std::vector<std::string> names;
  for (const auto& s : model.senders) names.push_back(s.name);
  check_unique(names, "sender");

  const std::size_t R = model.num_outcomes();
  for (const auto& s : model.senders) {
    require(!s.types.empty(), "sender " + s.name + " needs at least one type");
    check_unique(s.types, "type (sender " + s.name + ")");
    require(s.prior.size() == s.num_types(),
            "prior size mismatch for sender " + s.name);
    double sum = 0.0;
    for (double m : s.prior) {
      require(std::isfinite(m) && m >= 0.0,
              "prior entries must be finite and nonnegative (sender " + s.name + ")");
      sum += m;
    }
    require(std::abs(sum - 1.0) <= kSumTol,
            "prior does not sum to one (sender " + s.name + ")");
    for (double m : s.prior)
      require(m > 0.0, "prior must have full support (sender " + s.name + ")");
    require(s.payoff.size() == R,
            "payoff row count must equal outcome count (sender " + s.name + ")");
    for (const auto& row : s.payoff) {
      require(row.size() == s.num_types(),
              "payoff column count must equal type count (sender " + s.name + ")");
      for (double x : row)
        require(std::isfinite(x), "payoff entries must be finite");
    }
  }

  require(model.receiver_payoff.size() == R,
          "receiver_payoff row count must equal outcome count");
  for (const auto& row : model.receiver_payoff) {
    require(row.size() == model.num_profiles(),
            "receiver_payoff column count must equal profile count");
    for (double x : row)
      require(std::isfinite(x), "receiver payoff entries must be finite");
  }
}

void validate(const ModelSpec& model, const Allocation& p) {
  require(p.rows.size() == model.num_profiles(),
          "allocation must cover every type profile exactly once");
  for (const auto& row : p.rows) {
    require(row.size() == model.num_outcomes(),
            "allocation rows must span the outcome set");
    require(is_distribution(row), "allocation rows must be distributions");
  }
}

void validate(const ModelSpec& model, const Belief& belief) {
  require(belief.sender < model.num_senders(), "sender index out of range");
  require(belief.probs.size() == model.senders[belief.sender].num_types(),
          "belief dimension mismatch");
  require(is_distribution(belief.probs), "belief must be a distribution");
}

namespace {

ordered_json parse(const std::string& text) {
  ordered_json doc = ordered_json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ValidationError("malformed JSON document");
  return doc;
}

Vec as_vec(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw ValidationError(what + " must be numeric");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<Vec> as_matrix(const ordered_json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array of arrays");
  std::vector<Vec> m;
  for (const auto& row : j) m.push_back(as_vec(row, what));
  return m;
}

}  // namespace

ModelSpec load_model(const std::string& json_text) {
  ordered_json doc = parse(json_text);
  if (!doc.is_object()) throw ValidationError("model document must be an object");
  ModelSpec model;
  if (!doc.contains("outcomes") || !doc.contains("senders") ||
      !doc.contains("receiver_payoff"))
    throw ValidationError("model document needs outcomes, senders and receiver_payoff");
  for (const auto& o : doc["outcomes"]) {
    if (!o.is_string()) throw ValidationError("outcome labels must be strings");
    model.outcomes.push_back(o.get<std::string>());
  }
  for (const auto& js : doc["senders"]) {
    SenderSpec s;
    if (!js.is_object() || !js.contains("types") || !js.contains("prior") ||
        !js.contains("payoff"))
      throw ValidationError("each sender needs types, prior and payoff");
    s.name = js.value("name", "s" + std::to_string(model.senders.size()));
    for (const auto& t : js["types"]) {
      if (!t.is_string()) throw ValidationError("type labels must be strings");
      s.types.push_back(t.get<std::string>());
    }
    s.prior = as_vec(js["prior"], "prior");
    s.payoff = as_matrix(js["payoff"], "payoff");
    model.senders.push_back(std::move(s));
  }
  model.receiver_payoff = as_matrix(doc["receiver_payoff"], "receiver_payoff");
  validate(model);
  return model;
}

std::string to_json(const ModelSpec& model, int indent) {
  ordered_json doc;
  doc["outcomes"] = model.outcomes;
  doc["senders"] = ordered_json::array();
  for (const auto& s : model.senders) {
    ordered_json js;
    js["name"] = s.name;
    js["types"] = s.types;
    js["prior"] = s.prior;
    js["payoff"] = s.payoff;
    doc["senders"].push_back(std::move(js));
  }
  doc["receiver_payoff"] = model.receiver_payoff;
  return doc.dump(indent);
}

Allocation load_allocation(const ModelSpec& model, const std::string& json_text) {
  ordered_json doc = parse(json_text);
  if (!doc.is_object() || !doc.contains("rows"))
    throw ValidationError("allocation document needs a rows array");
  Allocation p;
  p.rows.assign(model.num_profiles(), Vec());
  for (const auto& row : doc["rows"]) {
    if (!row.is_object() || !row.contains("profile") || !row.contains("dist"))
      throw ValidationError("each allocation row needs profile and dist");
    const auto& labels = row["profile"];
    if (labels.size() != model.num_senders())
      throw ValidationError("profile length must equal sender count");
    std::vector<std::size_t> profile;
    for (std::size_t i = 0; i < model.num_senders(); ++i) {
      const auto& types = model.senders[i].types;
      auto it = std::find(types.begin(), types.end(),
                          labels[i].get<std::string>());
      if (it == types.end())
        throw ValidationError("unknown type label in allocation profile");
      profile.push_back(static_cast<std::size_t>(it - types.begin()));
    }
    std::size_t index = model.flatten(profile);
    if (!p.rows[index].empty())
      throw ValidationError("duplicate allocation row for a profile");
    p.rows[index] = as_vec(row["dist"], "dist");
  }
  for (const auto& row : p.rows)
    if (row.empty()) throw ValidationError("allocation misses a profile");
  validate(model, p);
  return p;
}

std::string to_json(const ModelSpec& model, const Allocation& p, int indent) {
  ordered_json rows = ordered_json::array();
  for (std::size_t index = 0; index < p.rows.size(); ++index) {
    ordered_json row;
    ordered_json labels = ordered_json::array();
    auto profile = model.unflatten(index);
    for (std::size_t i = 0; i < profile.size(); ++i)
      labels.push_back(model.senders[i].types[profile[i]]);
    row["profile"] = std::move(labels);
    row["dist"] = p.rows[index];
    rows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(indent);
}

Vec interim_payoff(const ModelSpec& model, const Allocation& p,
                   std::size_t sender) {
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  const auto& payoff = model.senders[sender].payoff;
  Vec result(model.senders[sender].num_types(), 0.0);
  for (std::size_t index = 0; index < p.rows.size(); ++index) {
    std::size_t t = model.type_in_profile(index, sender);
    double w = model.opponent_prior(index, sender);
    if (w == 0.0) continue;
    double payoff_here = 0.0;
    for (std::size_t r = 0; r < model.num_outcomes(); ++r)
      payoff_here += p.rows[index][r] * payoff[r][t];
    result[t] += w * payoff_here;
  }
  return result;
}

double receiver_value(const ModelSpec& model, const Allocation& p) {
  double total = 0.0;
  for (std::size_t index = 0; index < p.rows.size(); ++index) {
    double mass = model.profile_prior(index);
    double payoff_here = 0.0;
    for (std::size_t r = 0; r < model.num_outcomes(); ++r)
      payoff_here += p.rows[index][r] * model.receiver_payoff[r][index];
    total += mass * payoff_here;
  }
  return total;
}

}  // namespace exante
