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

#include "exante/cli.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "exante/apps.hpp"
#include "exante/beliefs.hpp"
#include "exante/ic.hpp"
#include "exante/model.hpp"
#include "exante/optimizer.hpp"
#include "exante/structure.hpp"

namespace exante {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(std::ostream& out, const ModelSpec& model,
                  const DeviationReport& r) {
  out << "sender " << model.senders[r.sender].name << ": "
      << (r.implementable ? "ok" : "PROFITABLE DEVIATION")
      << (r.boundary ? " (boundary)" : "") << "  gap=" << r.deviation_gap
      << "  worst_belief=[";
  for (std::size_t t = 0; t < r.worst_belief.probs.size(); ++t)
    out << (t ? "," : "") << r.worst_belief.probs[t];
  out << "]  grim={";
  for (std::size_t k = 0; k < r.grim_set.size(); ++k)
    out << (k ? "," : "") << model.outcomes[r.grim_set[k]];
  out << "}\n";
}

int run_check(const std::string& model_path, const std::string& alloc_path,
              const std::string& method_name, std::size_t grid_k, bool as_json,
              bool parallel, std::ostream& out) {
  ModelSpec model = load_model(slurp(model_path));
  Allocation p = load_allocation(model, slurp(alloc_path));
  IcMethod method = ic_method_from_string(method_name);

  ImplementabilityReport report;
  report.implementable = true;
  if (parallel) {
    std::vector<std::future<DeviationReport>> jobs;
    for (std::size_t i = 0; i < model.num_senders(); ++i)
      jobs.push_back(std::async(std::launch::async, [&, i] {
        return check_sender_ic(model, p, i, method, grid_k);
      }));
    for (auto& job : jobs) report.senders.push_back(job.get());
  } else {
    for (std::size_t i = 0; i < model.num_senders(); ++i)
      report.senders.push_back(check_sender_ic(model, p, i, method, grid_k));
  }
  for (const auto& r : report.senders)
    report.implementable = report.implementable && r.implementable;

  if (as_json) {
    out << to_json(model, report, 2) << "\n";
  } else {
    for (const auto& r : report.senders) print_report(out, model, r);
    out << (report.implementable ? "implementable" : "not implementable")
        << "\n";
  }
  return report.implementable ? kExitOk : kExitNotImplementable;
}

int run_optimize(const std::string& model_path, bool as_json,
                 std::ostream& out) {
  ModelSpec model = load_model(slurp(model_path));
  Optimum opt = constrained_optimum(model);
  if (as_json) {
    out << to_json(model, opt, 2) << "\n";
  } else {
    out << "value " << opt.value << " (first best " << opt.unconstrained_value
        << ", gap " << opt.first_best_gap << ")\n"
        << (opt.deterministic ? "deterministic" : "stochastic") << ", "
        << opt.binding.size() << " binding constraint(s)\n"
        << to_json(model, opt.allocation, 2) << "\n";
  }
  return kExitOk;
}

int run_deviate(const std::string& model_path, const std::string& alloc_path,
                std::size_t sender, bool as_json, std::ostream& out) {
  ModelSpec model = load_model(slurp(model_path));
  Allocation p = load_allocation(model, slurp(alloc_path));
  DeviationReport report = check_sender_ic(model, p, sender, IcMethod::vertex);
  if (as_json) {
    out << to_json(model, report, 2) << "\n";
  } else {
    print_report(out, model, report);
    out << "deviation: weight " << report.deviation.alpha
        << " on the worst belief, residual on degenerate beliefs [";
    for (std::size_t t = 0; t < report.deviation.residual.size(); ++t)
      out << (t ? "," : "") << report.deviation.residual[t];
    out << "]\n";
  }
  return report.implementable ? kExitOk : kExitNotImplementable;
}

int run_beliefs(const std::string& model_path, std::size_t sender,
                std::ostream& out) {
  ModelSpec model = load_model(slurp(model_path));
  if (sender >= model.num_senders())
    throw ValidationError("sender index out of range");
  out << to_json(model, enumerate_vertices(model, sender), 2) << "\n";
  return kExitOk;
}

int run_structure(const std::string& model_path, const std::string& alloc_path,
                  std::ostream& out) {
  ModelSpec model = load_model(slurp(model_path));
  if (alloc_path.empty()) {
    out << structure_report_json(model, nullptr, 2) << "\n";
  } else {
    Allocation p = load_allocation(model, slurp(alloc_path));
    out << structure_report_json(model, &p, 2) << "\n";
  }
  return kExitOk;
}

int run_app(const std::string& kind, const std::string& params_path,
            bool cross_check, std::ostream& out) {
  const std::string text = slurp(params_path);
  nlohmann::ordered_json doc;
  if (kind == "audit") {
    AuditParams params = load_audit_params(text);
    ModelSpec model = gen_audit_model(params);
    AuditPlan plan = audit_closed_form(params);
    doc["model"] = nlohmann::ordered_json::parse(to_json(model));
    doc["closed_form"] = nlohmann::ordered_json::parse(to_json(plan, params));
    doc["constant_outcome"] = model.outcomes[plan.outcome];
    if (cross_check) {
      Optimum opt = constrained_optimum(model);
      bool value_ok = std::abs(opt.value - plan.value) <= 1e-6;
      bool support_ok = true;
      for (const auto& row : opt.allocation.rows)
        if (row[plan.outcome] < 1.0 - 1e-6) support_ok = false;
      doc["cross_check"] = {{"lp_value", opt.value},
                            {"closed_form_value", plan.value},
                            {"value_agrees", value_ok},
                            {"support_agrees", support_ok}};
      out << doc.dump(2) << "\n";
      return value_ok && support_ok ? kExitOk : kExitNumericalFailure;
    }
  } else if (kind == "grant") {
    GrantParams params = load_grant_params(text);
    GrantDesign design = gen_grant_model(params);
    doc["model"] = nlohmann::ordered_json::parse(to_json(design.model));
    doc["allocation"] =
        nlohmann::ordered_json::parse(to_json(design.model, design.efficient));
    doc["hypothesis_holds"] = design.hypothesis_holds;
    if (!design.hypothesis_holds)
      doc["warning"] =
          "f - g is not weakly increasing for every sender; the efficient "
          "allocation may not be implementable";
    if (cross_check) {
      auto report = check_implementable(design.model, design.efficient);
      doc["cross_check"] = {{"implementable", report.implementable}};
      out << doc.dump(2) << "\n";
      if (design.hypothesis_holds && !report.implementable)
        return kExitNumericalFailure;
      return report.implementable ? kExitOk : kExitNotImplementable;
    }
  } else if (kind == "auction") {
    AuctionParams params = load_auction_params(text);
    AuctionDesign design = gen_auction_model(params);
    doc["model"] = nlohmann::ordered_json::parse(to_json(design.model));
    doc["allocation"] =
        nlohmann::ordered_json::parse(to_json(design.model, design.efficient));
    doc["transfers"] = design.transfers;
    auto violations = nlohmann::ordered_json::array();
    for (const auto& [i, index] : design.cap_violations)
      violations.push_back({{"sender", i}, {"profile", index}});
    doc["cap_violations"] = std::move(violations);
    if (cross_check) {
      auto report = check_implementable(design.model, design.efficient);
      bool transfers_ok = true;
      for (std::size_t index = 0; index < design.model.num_profiles(); ++index) {
        for (std::size_t i = 0; i < design.transfers.size(); ++i) {
          bool winner = design.efficient.rows[index][i] > 0.5;
          double x = design.transfers[i][index];
          if (winner != (x > 0.0)) transfers_ok = false;
        }
      }
      doc["cross_check"] = {{"implementable", report.implementable},
                            {"winner_pays_exactly", transfers_ok}};
      out << doc.dump(2) << "\n";
      return report.implementable && transfers_ok ? kExitOk
                                                  : kExitNumericalFailure;
    }
  } else {
    throw ValidationError("unknown app kind: " + kind);
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"implementability and optimal allocations under receiver commitment"};
  app.require_subcommand(1);

  std::string model_path, alloc_path, params_path;
  std::string method = "vertex";
  std::string app_kind;
  std::size_t sender = 0;
  std::size_t grid_k = 40;
  bool as_json = false;
  bool parallel = false;
  bool cross_check = false;

  auto* check = app.add_subcommand("check", "decide implementability of an allocation");
  check->add_option("model", model_path)->required();
  check->add_option("allocation", alloc_path)->required();
  check->add_option("--method", method)
      ->check(CLI::IsMember({"vertex", "primal-lp", "dual-lp", "grid"}));
  check->add_option("--grid-k", grid_k, "denominator for --method grid");
  check->add_flag("--json", as_json);
  check->add_flag("--parallel", parallel, "check senders concurrently");

  auto* optimize = app.add_subcommand("optimize", "receiver's constrained-optimal allocation");
  optimize->add_option("model", model_path)->required();
  optimize->add_flag("--json", as_json);

  auto* deviate = app.add_subcommand("deviate", "worst deviation for one sender");
  deviate->add_option("model", model_path)->required();
  deviate->add_option("allocation", alloc_path)->required();
  deviate->add_option("--sender", sender)->required();
  deviate->add_flag("--json", as_json);

  auto* beliefs = app.add_subcommand("beliefs", "test beliefs pinning down incentives");
  beliefs->add_option("model", model_path)->required();
  beliefs->add_option("--sender", sender)->required();

  auto* structure = app.add_subcommand("structure", "preference structure report");
  structure->add_option("model", model_path)->required();
  structure->add_option("allocation", alloc_path);

  auto* application = app.add_subcommand("app", "generate an application instance");
  application->add_option("kind", app_kind)
      ->required()
      ->check(CLI::IsMember({"audit", "grant", "auction"}));
  application->add_option("params", params_path)->required();
  application->add_flag("--cross-check", cross_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (check->parsed())
      return run_check(model_path, alloc_path, method, grid_k, as_json,
                       parallel, out);
    if (optimize->parsed()) return run_optimize(model_path, as_json, out);
    if (deviate->parsed())
      return run_deviate(model_path, alloc_path, sender, as_json, out);
    if (beliefs->parsed()) return run_beliefs(model_path, sender, out);
    if (structure->parsed()) return run_structure(model_path, alloc_path, out);
    if (application->parsed())
      return run_app(app_kind, params_path, cross_check, out);
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return kExitInputError;
}

}  // namespace exante
