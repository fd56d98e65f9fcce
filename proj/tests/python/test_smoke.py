# Copyright 2026 the exante authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json

import pytest

import exante

CAR = json.dumps(
    {
        "outcomes": ["B", "N"],
        "senders": [
            {
                "name": "seller",
                "types": ["H", "L"],
                "prior": [0.3, 0.7],
                "payoff": [[1, 1], [0, 0]],
            }
        ],
        "receiver_payoff": [[1, -1], [0, 0]],
    }
)

CYCLIC = json.dumps(
    {
        "outcomes": ["A", "B", "C"],
        "senders": [
            {
                "name": "agent",
                "types": ["t1", "t2", "t3"],
                "prior": [1 / 3, 1 / 3, 1 / 3],
                "payoff": [[100, -1, 0], [0, 100, -1], [-1, 0, 100]],
            }
        ],
        "receiver_payoff": [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
    }
)


def test_check_full_information_car():
    model = exante.load_model(CAR)
    alloc = exante.Allocation(rows=[[1.0, 0.0], [0.0, 1.0]])
    report = exante.check_implementable(model, alloc)
    assert report.implementable
    assert report.senders[0].deviation_gap == pytest.approx(0.0, abs=1e-12)


def test_optimize_car_reaches_first_best():
    model = exante.load_model(CAR)
    opt = exante.constrained_optimum(model)
    assert opt.value == pytest.approx(0.3, abs=1e-9)
    assert opt.deterministic
    assert opt.first_best_gap == pytest.approx(0.0, abs=1e-9)


def test_cyclic_full_pooling_gap():
    model = exante.load_model(CYCLIC)
    alloc = exante.Allocation(rows=[[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    uniform = exante.Belief(sender=0, probs=[1 / 3, 1 / 3, 1 / 3])
    assert exante.deviation_gap_at(model, alloc, uniform) == pytest.approx(33.0)
    report = exante.check_sender_ic(model, alloc, 0, method="primal-lp")
    assert not report.implementable
    assert report.deviation_gap == pytest.approx(33.0)


def test_vertex_enumeration_contains_uniform():
    model = exante.load_model(CYCLIC)
    beliefs = exante.enumerate_vertices(model, 0)
    assert any(
        max(abs(x - 1 / 3) for x in tb.belief.probs) < 1e-8
        for tb in beliefs.vertices
    )


def test_grim_trigger_values():
    model = exante.load_model(CYCLIC)
    punish = exante.grim_trigger(model, exante.Belief(0, [1 / 3, 1 / 3, 1 / 3]))
    assert punish.value == pytest.approx(33.0)
    assert punish.minimizers == [0, 1, 2]


def test_audit_closed_form_and_program_agree():
    params = json.dumps({"firms": [{"c": 1.0, "eps": 0.1, "prior_pollute": 0.4}]})
    plan = exante.audit_closed_form(params)
    assert plan.fined == [0]
    model = exante.audit_model(params)
    opt = exante.constrained_optimum(model)
    assert opt.value == pytest.approx(plan.value, abs=1e-9)


def test_structure_and_conflict():
    model = exante.load_model(CYCLIC)
    assert exante.common_least_favorite(model, 0) is None
    alloc = exante.Allocation(rows=[[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    verdicts = exante.monotone_certificate_check(model, alloc)
    assert verdicts[0].verdict == "inconclusive"


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        exante.load_model("{}")
    with pytest.raises(ValueError):
        exante.load_model(
            json.dumps(
                {
                    "outcomes": ["A"],
                    "senders": [
                        {
                            "name": "s",
                            "types": ["a", "b"],
                            "prior": [1.0, 0.0],
                            "payoff": [[0, 0]],
                        }
                    ],
                    "receiver_payoff": [[0, 0]],
                }
            )
        )


def test_solve_lp_roundtrip():
    lp = exante.LinearProgram()
    lp.objective = [3.0, 2.0]
    lp.ineq = [[1.0, 1.0], [1.0, 3.0]]
    lp.ineq_rhs = [4.0, 6.0]
    sol = exante.solve_lp(lp)
    assert sol.status == "optimal"
    assert sol.value == pytest.approx(12.0)
    assert sol.ineq_duals[0] == pytest.approx(3.0)
