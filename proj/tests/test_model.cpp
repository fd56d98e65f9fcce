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

#include <doctest.h>

#include "exante/model.hpp"
#include "support.hpp"

using namespace exante;
using namespace exante::testing;

TEST_CASE("load_model accepts the car instance") {
  const char* doc = R"({
    "outcomes": ["B", "N"],
    "senders": [{"name": "seller", "types": ["H", "L"],
                 "prior": [0.3, 0.7], "payoff": [[1, 1], [0, 0]]}],
    "receiver_payoff": [[1, -1], [0, 0]]
  })";
  ModelSpec m = load_model(doc);
  CHECK(m.num_senders() == 1);
  CHECK(m.num_outcomes() == 2);
  CHECK(m.senders[0].payoff[0][0] == 1.0);
  CHECK(m.num_profiles() == 2);
}

TEST_CASE("load_model accepts the mixed-reveal instance") {
  ModelSpec m = mixed_reveal_model();
  CHECK_NOTHROW(validate(m));
  ModelSpec reparsed = load_model(to_json(m));
  CHECK(reparsed.senders[0].prior == m.senders[0].prior);
  CHECK(reparsed.receiver_payoff == m.receiver_payoff);
}

TEST_CASE("load_model rejects bad documents") {
  ModelSpec m = car_model();
  SUBCASE("zero-mass type") {
    m.senders[0].types = {"a", "b", "c"};
    m.senders[0].prior = {0.5, 0.5, 0.0};
    m.senders[0].payoff = {{1, 1, 1}, {0, 0, 0}};
    m.receiver_payoff = {{1, -1, 0}, {0, 0, 0}};
    CHECK_THROWS_AS(validate(m), ValidationError);
  }
  SUBCASE("unnormalized prior") {
    m.senders[0].prior = {0.5, 0.6};
    CHECK_THROWS_AS(validate(m), ValidationError);
  }
  SUBCASE("dimension mismatch") {
    m.receiver_payoff = {{1, -1}};
    CHECK_THROWS_AS(validate(m), ValidationError);
  }
  SUBCASE("malformed json") {
    CHECK_THROWS_AS(load_model("{not json"), ValidationError);
  }
}

TEST_CASE("allocation documents are matched by labels") {
  ModelSpec m = car_model();
  const char* doc = R"({"rows": [
    {"profile": ["L"], "dist": [0, 1]},
    {"profile": ["H"], "dist": [1, 0]}
  ]})";
  Allocation p = load_allocation(m, doc);
  CHECK(p.rows[0][0] == 1.0);  // H row first in flattened order
  CHECK(p.rows[1][1] == 1.0);

  CHECK_THROWS_AS(load_allocation(m, R"({"rows": [
    {"profile": ["H"], "dist": [1, 0]},
    {"profile": ["H"], "dist": [1, 0]}
  ]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_allocation(m, R"({"rows": [
    {"profile": ["H"], "dist": [1, 0]}
  ]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_allocation(m, R"({"rows": [
    {"profile": ["H"], "dist": [0.7, 0.2]},
    {"profile": ["L"], "dist": [0, 1]}
  ]})"),
                  ValidationError);
}

TEST_CASE("interim payoff reads the payoff table through the allocation") {
  SUBCASE("full information car sale") {
    ModelSpec m = car_model();
    Vec u = interim_payoff(m, car_full_info(m), 0);
    CHECK(u[0] == doctest::Approx(1.0));
    CHECK(u[1] == doctest::Approx(0.0));
  }
  SUBCASE("single sender means no averaging") {
    Vec u = interim_payoff(mixed_reveal_model(), mixed_reveal_allocation(), 0);
    CHECK(u[0] == doctest::Approx(-20.0));
    CHECK(u[1] == doctest::Approx(0.0));
    CHECK(u[2] == doctest::Approx(10.0));
  }
  SUBCASE("constant allocation returns one payoff column") {
    Rng rng(7);
    ModelSpec m = random_model(rng);
    Allocation p;
    p.rows.assign(m.num_profiles(), Vec(m.num_outcomes(), 0.0));
    for (auto& row : p.rows) row[1] = 1.0;
    for (std::size_t i = 0; i < m.num_senders(); ++i) {
      Vec u = interim_payoff(m, p, i);
      for (std::size_t t = 0; t < u.size(); ++t)
        CHECK(u[t] == doctest::Approx(m.senders[i].payoff[1][t]));
    }
  }
  SUBCASE("out of range sender") {
    ModelSpec m = car_model();
    CHECK_THROWS_AS(interim_payoff(m, car_full_info(m), 5), ValidationError);
  }
}

TEST_CASE("receiver value") {
  SUBCASE("full information car sale is worth the good prior mass") {
    ModelSpec m = car_model(0.3);
    CHECK(receiver_value(m, car_full_info(m)) == doctest::Approx(0.3));
  }
  SUBCASE("constant receiver payoff is passed through") {
    Rng rng(11);
    ModelSpec m = random_model(rng);
    for (auto& row : m.receiver_payoff)
      for (auto& x : row) x = 2.5;
    Allocation p;
    p.rows.assign(m.num_profiles(),
                  Vec(m.num_outcomes(), 1.0 / m.num_outcomes()));
    CHECK(receiver_value(m, p) == doctest::Approx(2.5));
  }
}

TEST_CASE("interim payoff and receiver value are linear in the allocation") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    ModelSpec m = random_model(rng);
    Allocation a = random_allocation(rng, m);
    Allocation b = random_allocation(rng, m);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double lam = unit(rng);
    Allocation mix = convex_mix(a, b, lam);
    for (std::size_t i = 0; i < m.num_senders(); ++i) {
      Vec ua = interim_payoff(m, a, i);
      Vec ub = interim_payoff(m, b, i);
      Vec um = interim_payoff(m, mix, i);
      for (std::size_t t = 0; t < um.size(); ++t)
        CHECK(um[t] == doctest::Approx(lam * ua[t] + (1 - lam) * ub[t]));
    }
    CHECK(receiver_value(m, mix) ==
          doctest::Approx(lam * receiver_value(m, a) +
                          (1 - lam) * receiver_value(m, b)));
  }
}

TEST_CASE("a sender's own prior never enters their interim payoff") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    ModelSpec m = random_model(rng);
    Allocation p = random_allocation(rng, m);
    for (std::size_t i = 0; i < m.num_senders(); ++i) {
      Vec before = interim_payoff(m, p, i);
      ModelSpec other = m;
      other.senders[i].prior =
          random_simplex(rng, m.senders[i].num_types(), 0.01);
      Vec after = interim_payoff(other, p, i);
      CHECK(before == after);  // bitwise: the prior is never read
    }
  }
}

TEST_CASE("profile flattening is row-major in declaration order") {
  Rng rng(5);
  RandomModelOptions opt;
  opt.min_senders = opt.max_senders = 2;
  ModelSpec m = random_model(rng, opt);
  std::size_t t1 = m.senders[1].num_types();
  CHECK(m.flatten({1, 0}) == t1);
  auto profile = m.unflatten(t1);
  CHECK(profile[0] == 1);
  CHECK(profile[1] == 0);
  CHECK(m.type_in_profile(t1, 0) == 1);
  CHECK(m.type_in_profile(t1, 1) == 0);
  double mass = m.senders[0].prior[1] * m.senders[1].prior[0];
  CHECK(m.profile_prior(t1) == doctest::Approx(mass));
  CHECK(m.opponent_prior(t1, 0) == doctest::Approx(m.senders[1].prior[0]));
}

TEST_CASE("allocation json round trip") {
  ModelSpec m = mixed_reveal_model();
  Allocation p = mixed_reveal_allocation();
  Allocation q = load_allocation(m, to_json(m, p));
  CHECK(q.rows == p.rows);
}
