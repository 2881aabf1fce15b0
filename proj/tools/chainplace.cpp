// Copyright 2026 The chainplace Authors
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

// Command-line front end: generate, solve, compare, check.
//
// Exit codes: 0 success / feasible / optimal, 1 usage or parse error,
// 2 infeasible, 3 time limit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chainplace/chainplace.hpp"

namespace cp = chainplace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitTimeLimit = 3;

struct Globals {
  std::uint64_t seed = cp::kDefaultSeed;
  double time_limit = 600.0;
  int workers = 1;
  std::string output;
};

struct FormulationFlags {
  bool literal_scope = false;
  bool clamp = false;
  std::string routing_domain = "all-nodes";

  cp::FormulationOptions options() const {
    cp::FormulationOptions o;
    o.literal_deployment_scope = literal_scope;
    o.clamp_instantiation = clamp;
    o.routing_domain = routing_domain == "servers" ? cp::RoutingDomain::kServers : cp::RoutingDomain::kAllNodes;
    return o;
  }
};

void add_formulation_flags(CLI::App* cmd, FormulationFlags& f) {
  cmd->add_flag("--literal-deployment-scope", f.literal_scope, "Require a deployment for every catalog type");
  cmd->add_flag("--clamp-instantiation", f.clamp, "No license refund for removed instances");
  cmd->add_option("--routing-domain", f.routing_domain, "Node pairs charged for routing")
      ->check(CLI::IsMember({"servers", "all-nodes"}));
}

void write_output(const Globals& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw cp::Error(cp::ErrorCode::kInvalidArgument, "cannot write " + g.output);
  out << text;
}

int exit_code(cp::SolveStatus status) {
  switch (status) {
    case cp::SolveStatus::kOptimal: return kExitOk;
    case cp::SolveStatus::kInfeasible: return kExitInfeasible;
    case cp::SolveStatus::kTimeLimit: return kExitTimeLimit;
  }
  return kExitUsage;
}

// Parses "2", "1..3" or "1,3" into scenario ids.
std::vector<int> parse_scenarios(const std::string& text) {
  std::vector<int> ids;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    for (int id = lo; id <= hi; ++id) ids.push_back(id);
  } else {
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) ids.push_back(std::stoi(part));
  }
  for (int id : ids)
    if (id < 1 || id > 3) throw cp::Error(cp::ErrorCode::kInvalidArgument, "scenario ids are 1..3");
  if (ids.empty()) throw cp::Error(cp::ErrorCode::kInvalidArgument, "no scenario given");
  return ids;
}

struct SpecFlags {
  std::string scenario;
  std::optional<int> existing;
  std::optional<int> fresh;
  std::string scale = "reduced";
  std::optional<int> servers;
  std::optional<int> users;
  std::optional<int> candidates;

  cp::ScenarioSpec build(std::optional<int> id, std::uint64_t seed) const {
    cp::ScenarioSpec spec;
    if (id) spec = scale == "full" ? cp::full_scenario(*id, seed) : cp::reduced_scenario(*id, seed);
    else if (scale == "reduced") spec = cp::reduced_scenario(1, seed);
    spec.seed = seed;
    if (existing) spec.existing = *existing;
    if (fresh) spec.fresh = *fresh;
    if (servers) spec.servers = *servers;
    if (users) spec.users = *users;
    if (candidates) spec.candidates = *candidates;
    return spec;
  }

  std::vector<std::optional<int>> ids() const {
    std::vector<std::optional<int>> out;
    if (scenario.empty()) {
      if (!existing && !fresh)
        throw cp::Error(cp::ErrorCode::kInvalidArgument, "give --scenario or --existing/--new");
      out.push_back(std::nullopt);
    } else {
      for (int id : parse_scenarios(scenario)) out.push_back(id);
    }
    return out;
  }
};

void add_spec_flags(CLI::App* cmd, SpecFlags& s) {
  cmd->add_option("--scenario", s.scenario, "Scenario id, list (1,3) or range (1..3)");
  cmd->add_option("--existing", s.existing, "Existing request count");
  cmd->add_option("--new", s.fresh, "New request count");
  cmd->add_option("--scale", s.scale, "reduced (4 servers) or full (6 servers)")
      ->check(CLI::IsMember({"reduced", "full"}));
  cmd->add_option("--servers", s.servers, "Server count override");
  cmd->add_option("--users", s.users, "User group count override");
  cmd->add_option("--candidates", s.candidates, "Candidate content servers per request");
}

cp::SolveOptions solve_options(const Globals& g, const FormulationFlags& f) {
  cp::SolveOptions o;
  o.time_limit_seconds = g.time_limit;
  o.workers = g.workers;
  o.formulation = f.options();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online VNF chain placement toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->envname("CHAINPLACE_SEED");
  app.add_option("--time-limit", g.time_limit, "Solver time limit in seconds")
      ->envname("CHAINPLACE_TIME_LIMIT")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", g.workers, "Parallel search workers")
      ->envname("CHAINPLACE_WORKERS")
      ->check(CLI::Range(1, 1024));
  app.add_option("-o,--output", g.output, "Output file (default: standard output)");

  auto* gen = app.add_subcommand("generate", "Write a seeded instance document");
  SpecFlags gen_spec;
  add_spec_flags(gen, gen_spec);

  auto* solve = app.add_subcommand("solve", "Solve an instance and write a report");
  std::string solve_input;
  bool no_reuse = false;
  bool oracle = false;
  bool timings = false;
  std::string export_format;
  FormulationFlags solve_form;
  solve->add_option("instance", solve_input, "Instance document")->required();
  solve->add_flag("--no-reuse", no_reuse, "Forbid new requests from using snapshot instances");
  solve->add_flag("--oracle", oracle, "Also run the brute-force oracle and require agreement");
  solve->add_flag("--timings", timings, "Include wall time in the report");
  solve->add_option("--export", export_format, "Write the MILP model instead of solving")
      ->check(CLI::IsMember({"mps", "lp"}));
  add_formulation_flags(solve, solve_form);

  auto* compare = app.add_subcommand("compare", "Online vs. no-reuse comparison report");
  SpecFlags cmp_spec;
  FormulationFlags cmp_form;
  std::string format = "csv";
  bool cmp_timings = false;
  add_spec_flags(compare, cmp_spec);
  add_formulation_flags(compare, cmp_form);
  compare->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  compare->add_flag("--timings", cmp_timings, "Fill the wall_time column");

  auto* check = app.add_subcommand("check", "Check a plan or solution against an instance");
  std::string check_instance;
  std::string check_plan;
  bool check_no_reuse = false;
  FormulationFlags check_form;
  check->add_option("instance", check_instance, "Instance document")->required();
  check->add_option("plan", check_plan, "Plan, report, solution JSON or name=value file")->required();
  check->add_flag("--no-reuse", check_no_reuse, "Model built with no-reuse rows (solution files only)");
  add_formulation_flags(check, check_form);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      const auto ids = gen_spec.ids();
      if (ids.size() != 1) throw cp::Error(cp::ErrorCode::kInvalidArgument, "generate takes one scenario");
      cp::SolveOptions bootstrap;
      bootstrap.time_limit_seconds = g.time_limit;
      bootstrap.workers = g.workers;
      const auto instance = cp::generate(gen_spec.build(ids.front(), g.seed), bootstrap);
      write_output(g, cp::instance_to_json(instance).dump(2) + "\n");
      return kExitOk;
    }

    if (*solve) {
      const auto instance = cp::instance_from_json(cp::read_json_file(solve_input));
      cp::require_valid(instance);
      auto options = solve_options(g, solve_form);
      options.no_reuse = no_reuse;
      if (!export_format.empty()) {
        const auto model = cp::build_ilp(instance, {options.formulation, options.no_reuse});
        write_output(g, export_format == "mps" ? cp::export_mps(model) : cp::export_lp(model));
        return kExitOk;
      }
      const auto result = cp::solve_exact(instance, options);
      auto report = cp::result_to_json(instance, result, timings);
      if (oracle) {
        const auto reference = cp::brute_force(instance, options);
        const bool match = reference.status == result.status && reference.plan == result.plan &&
                           reference.breakdown == result.breakdown;
        report["oracle"] = {{"status", std::string(cp::to_string(reference.status))}, {"match", match}};
        if (!match) {
          write_output(g, report.dump(2) + "\n");
          std::cerr << "oracle disagrees with the search result\n";
          return kExitUsage;
        }
      }
      write_output(g, report.dump(2) + "\n");
      std::cerr << "status " << cp::to_string(result.status);
      if (result.plan) std::cerr << ", total " << cp::format_money(result.breakdown.total);
      std::cerr << '\n';
      return exit_code(result.status);
    }

    if (*compare) {
      const auto options = solve_options(g, cmp_form);
      std::vector<cp::ComparisonReport> reports;
      for (const auto& id : cmp_spec.ids()) {
        const auto label = id ? std::to_string(*id) : std::string("custom");
        reports.push_back(cp::run_comparison(cmp_spec.build(id, g.seed), options, label));
      }
      write_output(g, cp::emit_report(reports, format == "json" ? cp::ReportFormat::kJson : cp::ReportFormat::kCsv,
                                      cmp_timings));
      int worst = kExitOk;
      for (const auto& r : reports)
        for (const auto* c : {&r.online, &r.no_reuse}) worst = std::max(worst, exit_code(c->result.status));
      return worst;
    }

    if (*check) {
      const auto instance = cp::instance_from_json(cp::read_json_file(check_instance));
      cp::require_valid(instance);
      const auto formulation = check_form.options();
      const auto text = cp::read_file(check_plan);
      cp::PlacementPlan plan;
      bool from_solution = false;
      try {
        plan = cp::plan_from_any_json(cp::Json::parse(text));
      } catch (const std::exception&) {
        const auto model = cp::build_ilp(instance, {formulation, check_no_reuse});
        plan = cp::import_solution(model, cp::parse_solution(text));
        from_solution = true;
      }
      const auto report = cp::check_feasibility(instance, plan, formulation);
      std::ostringstream out;
      out << (report.feasible() ? "feasible" : "infeasible") << '\n' << report.summary();
      if (from_solution) out << "source solution values\n";
      const auto b = cp::total_objective(instance, plan, formulation);
      out << "hosting_delta " << cp::format_money(b.hosting_delta) << '\n'
          << "migration " << cp::format_money(b.migration) << '\n'
          << "instantiation " << cp::format_money(b.instantiation) << '\n'
          << "routing_delta " << cp::format_money(b.routing_delta) << '\n'
          << "total " << cp::format_money(b.total) << '\n';
      write_output(g, out.str());
      return report.feasible() ? kExitOk : kExitInfeasible;
    }
  } catch (const cp::Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.code()) {
      case cp::ErrorCode::kBootstrapInfeasible: return kExitInfeasible;
      default: return kExitUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
