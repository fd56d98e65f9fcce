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

#include <optional>
#include <random>
#include <vector>

#include "exante/ic.hpp"
#include "exante/model.hpp"

namespace exante::testing {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Fixed fixtures
// ---------------------------------------------------------------------------

// Used-car certification: two quality types, buy or pass, a seller who wants
// to sell regardless of quality.
inline ModelSpec car_model(double prior_high = 0.3) {
  ModelSpec m;
  m.outcomes = {"B", "N"};
  SenderSpec s;
  s.name = "seller";
  s.types = {"H", "L"};
  s.prior = {prior_high, 1.0 - prior_high};
  s.payoff = {{1.0, 1.0}, {0.0, 0.0}};
  m.senders.push_back(s);
  m.receiver_payoff = {{1.0, -1.0}, {0.0, 0.0}};
  return m;
}

inline Allocation car_full_info(const ModelSpec&) {
  Allocation p;
  p.rows = {{1.0, 0.0}, {0.0, 1.0}};  // buy at H, pass at L
  return p;
}

// Single sender, three types, four outcomes; the allocation hands out D, A, A.
inline ModelSpec mixed_reveal_model() {
  ModelSpec m;
  m.outcomes = {"A", "B", "C", "D"};
  SenderSpec s;
  s.name = "agent";
  s.types = {"t1", "t2", "t3"};
  s.prior = {0.25, 0.25, 0.5};
  s.payoff = {
      {0.0, 0.0, 10.0},          // A
      {20.0, -100.0, -10.0},     // B
      {-10.0, -100.0, 20.0},     // C
      {-20.0, -100.0, 100.0},    // D
  };
  m.senders.push_back(s);
  m.receiver_payoff.assign(4, Vec(3, 0.0));
  return m;
}

inline Allocation mixed_reveal_allocation() {
  Allocation p;
  p.rows = {{0, 0, 0, 1}, {1, 0, 0, 0}, {1, 0, 0, 0}};
  return p;
}

// Single sender, cyclic payoffs: only the fully pooling belief is a
// profitable deviation against the shifted allocation.
inline ModelSpec cyclic_model() {
  ModelSpec m;
  m.outcomes = {"A", "B", "C"};
  SenderSpec s;
  s.name = "agent";
  s.types = {"t1", "t2", "t3"};
  s.prior = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  s.payoff = {
      {100.0, -1.0, 0.0},   // A
      {0.0, 100.0, -1.0},   // B
      {-1.0, 0.0, 100.0},   // C
  };
  m.senders.push_back(s);
  m.receiver_payoff.assign(3, Vec(3, 0.0));
  return m;
}

inline Allocation cyclic_allocation() {
  Allocation p;
  p.rows = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};  // t1->B, t2->C, t3->A
  return p;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

inline Vec random_simplex(Rng& rng, std::size_t n, double min_mass = 0.0) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Vec v(n);
  double sum = 0.0;
  for (auto& x : v) {
    x = u(rng);
    sum += x;
  }
  for (auto& x : v) x = min_mass + (1.0 - n * min_mass) * x / sum;
  return v;
}

struct RandomModelOptions {
  std::size_t min_senders = 1, max_senders = 2;
  std::size_t min_types = 2, max_types = 3;
  std::size_t min_outcomes = 2, max_outcomes = 4;
  double payoff_lo = -10.0, payoff_hi = 10.0;
};

inline ModelSpec random_model(Rng& rng, const RandomModelOptions& opt = {}) {
  std::uniform_int_distribution<std::size_t> senders(opt.min_senders,
                                                     opt.max_senders);
  std::uniform_int_distribution<std::size_t> types(opt.min_types, opt.max_types);
  std::uniform_int_distribution<std::size_t> outcomes(opt.min_outcomes,
                                                      opt.max_outcomes);
  std::uniform_real_distribution<double> pay(opt.payoff_lo, opt.payoff_hi);

  ModelSpec m;
  const std::size_t R = outcomes(rng);
  for (std::size_t r = 0; r < R; ++r) m.outcomes.push_back("r" + std::to_string(r));
  const std::size_t n = senders(rng);
  for (std::size_t i = 0; i < n; ++i) {
    SenderSpec s;
    s.name = "s" + std::to_string(i);
    const std::size_t T = types(rng);
    for (std::size_t t = 0; t < T; ++t) s.types.push_back("t" + std::to_string(t));
    s.prior = random_simplex(rng, T, 0.05);
    s.payoff.assign(R, Vec(T, 0.0));
    for (auto& row : s.payoff)
      for (auto& x : row) x = pay(rng);
    m.senders.push_back(std::move(s));
  }
  m.receiver_payoff.assign(R, Vec(m.num_profiles(), 0.0));
  for (auto& row : m.receiver_payoff)
    for (auto& x : row) x = pay(rng);
  return m;
}

inline Allocation random_allocation(Rng& rng, const ModelSpec& m,
                                    bool deterministic = false) {
  Allocation p;
  p.rows.assign(m.num_profiles(), Vec(m.num_outcomes(), 0.0));
  if (deterministic) {
    std::uniform_int_distribution<std::size_t> pick(0, m.num_outcomes() - 1);
    for (auto& row : p.rows) row[pick(rng)] = 1.0;
  } else {
    for (auto& row : p.rows) row = random_simplex(rng, m.num_outcomes());
  }
  return p;
}

// Rejection sampling biased toward a constant allocation (always
// implementable), verified with the exact check before returning.
inline std::optional<Allocation> random_implementable_allocation(
    Rng& rng, const ModelSpec& m, std::size_t attempts = 60) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, m.num_outcomes() - 1);
  for (std::size_t k = 0; k < attempts; ++k) {
    Allocation p = random_allocation(rng, m);
    // Later attempts shrink toward a random constant allocation.
    double lam = 1.0 - unit(rng) * (static_cast<double>(k) / attempts);
    std::size_t anchor = pick(rng);
    for (auto& row : p.rows) {
      for (auto& x : row) x *= lam;
      row[anchor] += 1.0 - lam;
    }
    if (check_implementable(m, p).implementable) return p;
  }
  return std::nullopt;
}

inline Allocation convex_mix(const Allocation& a, const Allocation& b,
                             double lam) {
  Allocation p = a;
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    for (std::size_t r = 0; r < p.rows[i].size(); ++r)
      p.rows[i][r] = lam * a.rows[i][r] + (1.0 - lam) * b.rows[i][r];
  return p;
}

}  // namespace exante::testing
