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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exante/apps.hpp"
#include "exante/beliefs.hpp"
#include "exante/cli.hpp"
#include "exante/ic.hpp"
#include "exante/lp.hpp"
#include "exante/model.hpp"
#include "exante/optimizer.hpp"
#include "exante/punishment.hpp"
#include "exante/structure.hpp"

namespace py = pybind11;
using namespace exante;

namespace {

std::string verdict_name(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::implementable: return "certified-implementable";
    case CertificateVerdict::not_implementable: return "certified-not";
    case CertificateVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace

PYBIND11_MODULE(exante, m) {
  m.doc() =
      "Implementability of allocations, worst-case deviations and "
      "constrained-optimal design when senders control the information";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_RuntimeError);

  py::class_<SenderSpec>(m, "SenderSpec")
      .def_readonly("name", &SenderSpec::name)
      .def_readonly("types", &SenderSpec::types)
      .def_readonly("prior", &SenderSpec::prior)
      .def_readonly("payoff", &SenderSpec::payoff);

  py::class_<ModelSpec>(m, "ModelSpec")
      .def_readonly("senders", &ModelSpec::senders)
      .def_readonly("outcomes", &ModelSpec::outcomes)
      .def_readonly("receiver_payoff", &ModelSpec::receiver_payoff)
      .def("num_profiles", &ModelSpec::num_profiles)
      .def("to_json",
           [](const ModelSpec& model) { return to_json(model, 2); });

  py::class_<Belief>(m, "Belief")
      .def(py::init([](std::size_t sender, Vec probs) {
             return Belief{sender, std::move(probs)};
           }),
           py::arg("sender"), py::arg("probs"))
      .def_readonly("sender", &Belief::sender)
      .def_readonly("probs", &Belief::probs)
      .def("is_degenerate",
           [](const Belief& b) { return b.is_degenerate(); });

  py::class_<Allocation>(m, "Allocation")
      .def(py::init([](std::vector<Vec> rows) {
             return Allocation{std::move(rows)};
           }),
           py::arg("rows"))
      .def_readonly("rows", &Allocation::rows);

  m.def("load_model", &load_model, py::arg("json_text"));
  m.def("load_allocation", &load_allocation, py::arg("model"),
        py::arg("json_text"));
  m.def(
      "allocation_to_json",
      [](const ModelSpec& model, const Allocation& p) {
        return to_json(model, p, 2);
      },
      py::arg("model"), py::arg("allocation"));
  m.def("interim_payoff", &interim_payoff, py::arg("model"),
        py::arg("allocation"), py::arg("sender"));
  m.def("receiver_value", &receiver_value, py::arg("model"),
        py::arg("allocation"));

  py::class_<PunishmentSet>(m, "PunishmentSet")
      .def_readonly("sender", &PunishmentSet::sender)
      .def_readonly("belief", &PunishmentSet::belief)
      .def_readonly("minimizers", &PunishmentSet::minimizers)
      .def_readonly("value", &PunishmentSet::value);

  m.def("grim_trigger", &grim_trigger, py::arg("model"), py::arg("belief"));

  py::class_<TestBelief>(m, "TestBelief")
      .def_readonly("belief", &TestBelief::belief)
      .def_readonly("regions", &TestBelief::regions)
      .def_property_readonly("kind", [](const TestBelief& tb) {
        return tb.kind == TestBeliefKind::degenerate ? "degenerate" : "vertex";
      });

  py::class_<TestBeliefSet>(m, "TestBeliefSet")
      .def_readonly("sender", &TestBeliefSet::sender)
      .def_readonly("degenerate", &TestBeliefSet::degenerate)
      .def_readonly("vertices", &TestBeliefSet::vertices);

  m.def("enumerate_vertices", &enumerate_vertices, py::arg("model"),
        py::arg("sender"));
  m.def(
      "test_beliefs_to_json",
      [](const ModelSpec& model, const TestBeliefSet& set) {
        return to_json(model, set, 2);
      },
      py::arg("model"), py::arg("set"));

  py::class_<PairwiseIndifference>(m, "PairwiseIndifference")
      .def_readonly("outcome_a", &PairwiseIndifference::outcome_a)
      .def_readonly("outcome_b", &PairwiseIndifference::outcome_b)
      .def_readonly("type_pos", &PairwiseIndifference::type_pos)
      .def_readonly("type_neg", &PairwiseIndifference::type_neg)
      .def_readonly("alpha", &PairwiseIndifference::alpha)
      .def_readonly("belief", &PairwiseIndifference::belief);

  py::class_<PairwiseIndifferenceSet>(m, "PairwiseIndifferenceSet")
      .def_readonly("sender", &PairwiseIndifferenceSet::sender)
      .def_readonly("entries", &PairwiseIndifferenceSet::entries);

  m.def("pairwise_prefilter", &pairwise_prefilter, py::arg("model"),
        py::arg("sender"));

  py::class_<DeviationSplit>(m, "DeviationSplit")
      .def_readonly("alpha", &DeviationSplit::alpha)
      .def_readonly("residual", &DeviationSplit::residual);

  py::class_<DeviationReport>(m, "DeviationReport")
      .def_readonly("sender", &DeviationReport::sender)
      .def_readonly("implementable", &DeviationReport::implementable)
      .def_readonly("boundary", &DeviationReport::boundary)
      .def_readonly("worst_belief", &DeviationReport::worst_belief)
      .def_readonly("deviation_gap", &DeviationReport::deviation_gap)
      .def_readonly("grim_set", &DeviationReport::grim_set)
      .def_readonly("deviation", &DeviationReport::deviation)
      .def_readonly("near_worst", &DeviationReport::near_worst)
      .def_property_readonly("method", [](const DeviationReport& r) {
        return to_string(r.method);
      });

  py::class_<ImplementabilityReport>(m, "ImplementabilityReport")
      .def_readonly("senders", &ImplementabilityReport::senders)
      .def_readonly("implementable", &ImplementabilityReport::implementable);

  m.def("deviation_gap_at", &deviation_gap_at, py::arg("model"),
        py::arg("allocation"), py::arg("belief"));
  m.def(
      "check_sender_ic",
      [](const ModelSpec& model, const Allocation& p, std::size_t sender,
         const std::string& method, std::size_t grid_denominator) {
        return check_sender_ic(model, p, sender,
                               ic_method_from_string(method),
                               grid_denominator);
      },
      py::arg("model"), py::arg("allocation"), py::arg("sender"),
      py::arg("method") = "vertex", py::arg("grid_denominator") = 40);
  m.def("check_implementable", &check_implementable, py::arg("model"),
        py::arg("allocation"));
  m.def("experiment_implementable", &experiment_implementable,
        py::arg("model"), py::arg("allocation"));
  m.def(
      "report_to_json",
      [](const ModelSpec& model, const ImplementabilityReport& report) {
        return to_json(model, report, 2);
      },
      py::arg("model"), py::arg("report"));

  py::class_<UnconstrainedOptimum>(m, "UnconstrainedOptimum")
      .def_readonly("allocation", &UnconstrainedOptimum::allocation)
      .def_readonly("value", &UnconstrainedOptimum::value)
      .def_readonly("ties", &UnconstrainedOptimum::ties);

  py::class_<Optimum>(m, "Optimum")
      .def_readonly("allocation", &Optimum::allocation)
      .def_readonly("value", &Optimum::value)
      .def_readonly("binding", &Optimum::binding)
      .def_readonly("deterministic", &Optimum::deterministic)
      .def_readonly("unconstrained_value", &Optimum::unconstrained_value)
      .def_readonly("first_best_gap", &Optimum::first_best_gap);

  m.def("unconstrained_optimum", &unconstrained_optimum, py::arg("model"));
  m.def("constrained_optimum", &constrained_optimum, py::arg("model"));
  m.def(
      "optimum_to_json",
      [](const ModelSpec& model, const Optimum& opt) {
        return to_json(model, opt, 2);
      },
      py::arg("model"), py::arg("optimum"));

  py::class_<ParetoViolation>(m, "ParetoViolation")
      .def_readonly("profile", &ParetoViolation::profile)
      .def_readonly("outcome", &ParetoViolation::outcome)
      .def_readonly("dominator", &ParetoViolation::dominator);

  m.def("pareto_support_audit", &pareto_support_audit, py::arg("model"),
        py::arg("allocation"));

  py::class_<TwoClassCert>(m, "TwoClassCert")
      .def_readonly("sender", &TwoClassCert::sender)
      .def_readonly("high_outcome", &TwoClassCert::high_outcome)
      .def_readonly("low_outcome", &TwoClassCert::low_outcome)
      .def_readonly("valid", &TwoClassCert::valid)
      .def_property_readonly("classes", [](const TwoClassCert& cert) {
        std::vector<std::string> out;
        for (auto c : cert.class_of)
          out.push_back(c == TwoClassCert::Class::high ? "high" : "low");
        return out;
      });

  py::class_<SingleCrossingOrder>(m, "SingleCrossingOrder")
      .def_readonly("sender", &SingleCrossingOrder::sender)
      .def_readonly("type_order", &SingleCrossingOrder::type_order)
      .def_readonly("crossing_index", &SingleCrossingOrder::crossing_index)
      .def_readonly("gaps", &SingleCrossingOrder::gaps);

  py::class_<MonotoneCertificate>(m, "MonotoneCertificate")
      .def_readonly("sender", &MonotoneCertificate::sender)
      .def_readonly("decomposition", &MonotoneCertificate::decomposition)
      .def_readonly("order", &MonotoneCertificate::order)
      .def_readonly("interim_high", &MonotoneCertificate::interim_high)
      .def_property_readonly("verdict", [](const MonotoneCertificate& mc) {
        return verdict_name(mc.verdict);
      });

  py::class_<LeastFavoriteConflict>(m, "LeastFavoriteConflict")
      .def_readonly("sender", &LeastFavoriteConflict::sender)
      .def_readonly("types", &LeastFavoriteConflict::types)
      .def_readonly("witness", &LeastFavoriteConflict::witness)
      .def_readonly("gap", &LeastFavoriteConflict::gap);

  py::class_<ProductModel>(m, "ProductModel")
      .def_readonly("model", &ProductModel::model)
      .def_readonly("allocation", &ProductModel::allocation);

  m.def("find_two_class_decomposition", &find_two_class_decomposition,
        py::arg("model"), py::arg("sender"));
  m.def("single_crossing_order", &single_crossing_order, py::arg("model"),
        py::arg("sender"), py::arg("cert"));
  m.def("is_monotone", &is_monotone, py::arg("model"), py::arg("allocation"),
        py::arg("sender"), py::arg("cert"), py::arg("order"));
  m.def("monotone_certificate_check", &monotone_certificate_check,
        py::arg("model"), py::arg("allocation"));
  m.def("common_least_favorite", &common_least_favorite, py::arg("model"),
        py::arg("sender"));
  m.def("no_fall_guys_check", &no_fall_guys_check, py::arg("model"),
        py::arg("allocation"), py::arg("sender"), py::arg("exhaustive") = false);
  m.def("product_compose", &product_compose, py::arg("models"),
        py::arg("allocations"));
  m.def(
      "structure_report",
      [](const ModelSpec& model, const Allocation* p) {
        return structure_report_json(model, p, 2);
      },
      py::arg("model"), py::arg("allocation") = nullptr);

  py::class_<AuditPlan>(m, "AuditPlan")
      .def_readonly("fined", &AuditPlan::fined)
      .def_readonly("indifferent", &AuditPlan::indifferent)
      .def_readonly("outcome", &AuditPlan::outcome)
      .def_readonly("value", &AuditPlan::value);

  py::class_<GrantDesign>(m, "GrantDesign")
      .def_readonly("model", &GrantDesign::model)
      .def_readonly("efficient", &GrantDesign::efficient)
      .def_readonly("hypothesis_holds", &GrantDesign::hypothesis_holds);

  py::class_<AuctionDesign>(m, "AuctionDesign")
      .def_readonly("model", &AuctionDesign::model)
      .def_readonly("efficient", &AuctionDesign::efficient)
      .def_readonly("removed_winner", &AuctionDesign::removed_winner)
      .def_readonly("transfers", &AuctionDesign::transfers)
      .def_readonly("cap_violations", &AuctionDesign::cap_violations);

  m.def("audit_model", [](const std::string& params_json) {
    return gen_audit_model(load_audit_params(params_json));
  });
  m.def("audit_closed_form", [](const std::string& params_json) {
    return audit_closed_form(load_audit_params(params_json));
  });
  m.def("audit_plan_allocation", &audit_plan_allocation, py::arg("model"),
        py::arg("plan"));
  m.def("grant_design", [](const std::string& params_json) {
    return gen_grant_model(load_grant_params(params_json));
  });
  m.def("auction_design", [](const std::string& params_json) {
    return gen_auction_model(load_auction_params(params_json));
  });

  py::class_<LinearProgram>(m, "LinearProgram")
      .def(py::init<>())
      .def_readwrite("objective", &LinearProgram::objective)
      .def_readwrite("ineq", &LinearProgram::ineq)
      .def_readwrite("ineq_rhs", &LinearProgram::ineq_rhs)
      .def_readwrite("eq", &LinearProgram::eq)
      .def_readwrite("eq_rhs", &LinearProgram::eq_rhs)
      .def_readwrite("lower_bounds", &LinearProgram::lower_bounds)
      .def_readonly_static("UNBOUNDED", &LinearProgram::kUnbounded);

  py::class_<LpSolution>(m, "LpSolution")
      .def_readonly("x", &LpSolution::x)
      .def_readonly("value", &LpSolution::value)
      .def_readonly("ineq_duals", &LpSolution::ineq_duals)
      .def_readonly("eq_duals", &LpSolution::eq_duals)
      .def_readonly("pivots", &LpSolution::pivots)
      .def_property_readonly("status", [](const LpSolution& sol) {
        switch (sol.status) {
          case LpStatus::optimal: return "optimal";
          case LpStatus::infeasible: return "infeasible";
          case LpStatus::unbounded: return "unbounded";
        }
        return "optimal";
      });

  m.def("solve_lp", &solve_lp, py::arg("lp"));

  m.attr("SUM_TOL") = kSumTol;
  m.attr("IC_TOL") = kIcTol;
  m.attr("TIE_TOL") = kTieTol;
}
