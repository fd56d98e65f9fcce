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

#include "exante/apps.hpp"
#include "exante/ic.hpp"
#include "exante/structure.hpp"
#include "support.hpp"

using namespace exante;
using namespace exante::testing;

TEST_CASE("audit model generation") {
  SUBCASE("one firm reproduces the canonical tables") {
    AuditParams params;
    params.firms = {{1.0, 0.1, 0.4}};
    ModelSpec m = gen_audit_model(params);
    CHECK(m.num_outcomes() == 2);  // {} and {firm0}
    CHECK(m.senders[0].types == std::vector<std::string>{"clean", "polluting"});
    // Sender payoffs: spared (0, 1); fined (eps, -1).
    CHECK(m.senders[0].payoff[0] == Vec{0.0, 1.0});
    CHECK(m.senders[0].payoff[1] == Vec{0.1, -1.0});
    // Receiver: spared (0, -1); fined (-c, 1).
    CHECK(m.receiver_payoff[0] == Vec{0.0, -1.0});
    CHECK(m.receiver_payoff[1] == Vec{-1.0, 1.0});
  }
  SUBCASE("two firms give the power set") {
    AuditParams params;
    params.firms = {{1.0, 0.1, 0.4}, {2.0, 0.2, 0.7}};
    ModelSpec m = gen_audit_model(params);
    CHECK(m.num_outcomes() == 4);
    CHECK(m.num_profiles() == 4);
    // Receiver payoffs add across firms.
    std::size_t both = 3, profile_both_pollute = m.flatten({1, 1});
    CHECK(m.receiver_payoff[both][profile_both_pollute] == doctest::Approx(2.0));
  }
  SUBCASE("five firms are rejected") {
    AuditParams params;
    params.firms.assign(5, {1.0, 0.1, 0.4});
    CHECK_THROWS_AS(gen_audit_model(params), ValidationError);
  }
}

TEST_CASE("audit closed form") {
  SUBCASE("cheap fines and bad odds: fine") {
    AuditParams params;
    params.firms = {{1.0, 0.1, 0.4}};  // odds 2/3 > 1/2
    AuditPlan plan = audit_closed_form(params);
    CHECK(plan.fined == std::vector<std::size_t>{0});
    CHECK(plan.indifferent.empty());
    CHECK(plan.value == doctest::Approx(0.4 - 0.6));
  }
  SUBCASE("expensive fines: spare") {
    AuditParams params;
    params.firms = {{4.0, 0.1, 0.5}};  // odds 1 < 2
    AuditPlan plan = audit_closed_form(params);
    CHECK(plan.fined.empty());
    CHECK(plan.value == doctest::Approx(-0.5));
  }
  SUBCASE("the knife edge is flagged") {
    AuditParams params;
    params.firms = {{1.0, 0.1, 1.0 / 3.0}};  // odds 1/2 == c/2
    AuditPlan plan = audit_closed_form(params);
    CHECK(plan.indifferent == std::vector<std::size_t>{0});
    CHECK(plan.fined.empty());
  }
  SUBCASE("the constant plan allocation earns the closed-form value") {
    AuditParams params;
    params.firms = {{1.0, 0.1, 0.4}};
    ModelSpec m = gen_audit_model(params);
    AuditPlan plan = audit_closed_form(params);
    Allocation p = audit_plan_allocation(m, plan);
    CHECK(receiver_value(m, p) == doctest::Approx(-0.2));
    CHECK(receiver_value(m, p) == doctest::Approx(plan.value));
    CHECK(check_implementable(m, p).implementable);
  }
}

TEST_CASE("grant designs") {
  SUBCASE("rising stakes make the efficient allocation certified monotone") {
    GrantParams params;
    params.award_payoff = {{1.0, 4.0}, {2.0, 3.0}};
    params.outside_payoff = {{2.0, 1.0}, {1.0, 2.0}};  // f-g: (-1,3), (1,1)
    auto design = gen_grant_model(params);
    CHECK(design.hypothesis_holds);
    auto verdicts = monotone_certificate_check(design.model, design.efficient);
    for (const auto& v : verdicts)
      CHECK(v.verdict == CertificateVerdict::implementable);
    CHECK(check_implementable(design.model, design.efficient).implementable);
  }
  SUBCASE("awards dominating outside options give a common least favorite") {
    GrantParams params;
    params.award_payoff = {{3.0, 5.0}, {4.0, 6.0}};
    params.outside_payoff = {{1.0, 2.0}, {2.0, 2.0}};
    auto design = gen_grant_model(params);
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(common_least_favorite(design.model, i));
    Rng rng(127);
    for (int k = 0; k < 10; ++k) {
      Allocation p = random_allocation(rng, design.model);
      CHECK(check_implementable(design.model, p).implementable);
    }
  }
  SUBCASE("a single applicant always wins") {
    GrantParams params;
    params.award_payoff = {{1.0, 2.0}};
    params.outside_payoff = {{0.0, 0.5}};
    auto design = gen_grant_model(params);
    for (const auto& row : design.efficient.rows) CHECK(row[0] == 1.0);
  }
  SUBCASE("a falling f-g only warns") {
    GrantParams params;
    params.award_payoff = {{5.0, 1.0}};
    params.outside_payoff = {{0.0, 0.0}};
    auto design = gen_grant_model(params);
    CHECK(!design.hypothesis_holds);
  }
}

TEST_CASE("auction designs") {
  SUBCASE("winners pay, losers do not, participation binds") {
    AuctionParams params;
    params.value = {{4.0, 6.0}, {3.0, 5.0}};
    params.externality.assign(2, std::vector<Vec>(2, Vec(2, 0.0)));
    params.externality[0][1] = {1.0, 2.0};  // sender 0 suffers when 1 wins
    params.externality[1][0] = {0.5, 0.5};
    auto design = gen_auction_model(params);
    const ModelSpec& m = design.model;
    for (std::size_t index = 0; index < m.num_profiles(); ++index) {
      for (std::size_t i = 0; i < 2; ++i) {
        bool wins = design.efficient.rows[index][i] == 1.0;
        double x = design.transfers[i][index];
        if (wins)
          CHECK(x > 0.0);
        else
          CHECK(x == doctest::Approx(0.0));
        // Paying the transfer leaves exactly the removed-winner payoff.
        std::size_t t = m.type_in_profile(index, i);
        std::size_t star = 0;
        while (design.efficient.rows[index][star] != 1.0) ++star;
        double kept = m.senders[i].payoff[star][t] - x;
        double outside =
            m.senders[i].payoff[design.removed_winner[i][index]][t];
        CHECK(kept == doctest::Approx(outside));
      }
    }
    CHECK(check_implementable(m, design.efficient).implementable);
  }
  SUBCASE("no externalities reduce the winner's transfer to their value") {
    AuctionParams params;
    params.value = {{4.0, 6.0}, {3.0, 5.0}};
    params.externality.assign(2, std::vector<Vec>(2, Vec(2, 0.0)));
    auto design = gen_auction_model(params);
    for (std::size_t index = 0; index < design.model.num_profiles(); ++index)
      for (std::size_t i = 0; i < 2; ++i)
        if (design.efficient.rows[index][i] == 1.0) {
          std::size_t t = design.model.type_in_profile(index, i);
          CHECK(design.transfers[i][index] ==
                doctest::Approx(params.value[i][t]));
        }
  }
  SUBCASE("a lone bidder pays their full value against the no-award option") {
    AuctionParams params;
    params.value = {{2.0, 7.0}};
    params.externality = {{{0.0, 0.0}}};
    auto design = gen_auction_model(params);
    CHECK(design.model.outcomes.back() == "none");
    for (std::size_t index = 0; index < design.model.num_profiles(); ++index) {
      CHECK(design.efficient.rows[index][0] == 1.0);
      std::size_t t = design.model.type_in_profile(index, 0);
      CHECK(design.transfers[0][index] == doctest::Approx(params.value[0][t]));
    }
  }
  SUBCASE("transfer caps are reported") {
    AuctionParams params;
    params.value = {{4.0, 6.0}, {3.0, 5.0}};
    params.externality.assign(2, std::vector<Vec>(2, Vec(2, 0.0)));
    params.transfer_cap = 3.5;
    auto design = gen_auction_model(params);
    CHECK(!design.cap_violations.empty());
    for (const auto& [i, index] : design.cap_violations)
      CHECK(design.transfers[i][index] > 3.5);
  }
  SUBCASE("nonpositive values are rejected") {
    AuctionParams params;
    params.value = {{0.0}};
    params.externality = {{{0.0}}};
    CHECK_THROWS_AS(gen_auction_model(params), ValidationError);
  }
}

TEST_CASE("efficient grants are implementable whenever stakes rise") {
  Rng rng(131);
  std::uniform_int_distribution<std::size_t> types(2, 3);
  std::uniform_real_distribution<double> base(0.0, 5.0);
  std::uniform_real_distribution<double> stake(-2.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    GrantParams params;
    params.weights = random_simplex(rng, 2);
    for (int i = 0; i < 2; ++i) {
      std::size_t T = types(rng);
      Vec f(T), d(T);
      for (auto& x : f) x = base(rng);
      for (auto& x : d) x = stake(rng);
      std::sort(d.begin(), d.end());  // f - g weakly increasing
      Vec g(T);
      for (std::size_t t = 0; t < T; ++t) g[t] = f[t] - d[t];
      params.award_payoff.push_back(f);
      params.outside_payoff.push_back(g);
    }
    auto design = gen_grant_model(params);
    REQUIRE(design.hypothesis_holds);
    CHECK(check_implementable(design.model, design.efficient).implementable);
  }
}

TEST_CASE("params load from JSON") {
  auto audit = load_audit_params(
      R"({"firms": [{"c": 1.5, "eps": 0.2, "prior_pollute": 0.3}]})");
  CHECK(audit.firms.size() == 1);
  CHECK(audit.firms[0].fine_cost == 1.5);

  auto grant = load_grant_params(
      R"({"lambda": [0.5, 0.5], "f": [[1, 2], [3, 4]], "g": [[0, 0], [1, 1]]})");
  CHECK(grant.weights == Vec{0.5, 0.5});
  CHECK(grant.award_payoff[1][1] == 4.0);

  auto auction = load_auction_params(
      R"({"f": [[1], [2]], "g": [[[0], [1]], [[2], [0]]], "cap": 10})");
  CHECK(auction.value.size() == 2);
  CHECK(auction.externality[0][1][0] == 1.0);
  CHECK(*auction.transfer_cap == 10.0);

  CHECK_THROWS_AS(load_audit_params("[]"), ValidationError);
  CHECK_THROWS_AS(load_grant_params(R"({"f": [[1]]})"), ValidationError);
}
