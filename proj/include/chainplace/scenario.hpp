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

// Seeded evaluation instances and the reuse / no-reuse comparison.

#ifndef CHAINPLACE_SCENARIO_HPP
#define CHAINPLACE_SCENARIO_HPP

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chainplace/costs.hpp"
#include "chainplace/io.hpp"
#include "chainplace/model.hpp"
#include "chainplace/solver.hpp"

namespace chainplace {

inline constexpr std::uint64_t kDefaultSeed = 7;

// Generator parameters. Defaults are the reference evaluation settings in
// to integer units (money in micro-money, delays in microseconds).
struct ScenarioSpec {
  std::uint64_t seed = kDefaultSeed;
  int servers = 6;
  int users = 6;
  int existing = 2;
  int fresh = 4;  // newly arriving requests
  int candidates = 3;
  int vnf_types = 3;
  int chain_min = 1;
  int chain_max = 3;
  Units bandwidth = 10;
  Money link_cost_min = 90'000;
  Money link_cost_max = 115'000;
  Micros link_delay_min_ms = 4;
  Micros link_delay_max_ms = 50;
  Micros budget_min_ms = 1800;
  Micros budget_max_ms = 2000;
  Money license_cost = 100 * kMicroPerUnit;
  Units resource_req = 2;
  Micros processing_delay = 20'000;
  Units server_capacity = 8;
  Money server_unit_cost = 5 * kMicroPerUnit;
  Units vnf_capacity = 10;
  Units traffic = 1;
  Units migration_volume = 44;  // disk plus memory, in traffic units
  double usage_threshold = 1.0;
};

// Existing/new splits of the three evaluation scenarios.
inline ScenarioSpec full_scenario(int id, std::uint64_t seed = kDefaultSeed) {
  if (id < 1 || id > 3) throw Error(ErrorCode::kInvalidArgument, "scenario must be 1, 2 or 3");
  ScenarioSpec spec;
  spec.seed = seed;
  spec.existing = id + 1;
  spec.fresh = 5 - id;
  return spec;
}

// Same splits shrunk to 4 servers, 4 user groups and 4 requests so the
// built-in solver finishes in CI time.
inline ScenarioSpec reduced_scenario(int id, std::uint64_t seed = kDefaultSeed) {
  if (id < 1 || id > 3) throw Error(ErrorCode::kInvalidArgument, "scenario must be 1, 2 or 3");
  ScenarioSpec spec;
  spec.seed = seed;
  spec.servers = 4;
  spec.users = 4;
  spec.existing = id;
  spec.fresh = 4 - id;
  return spec;
}

// Platform-stable draws: the engine sequence is fixed by the standard, the
// library distributions are not, so ranges are mapped by rejection.
class ScenarioRng {
 public:
  explicit ScenarioRng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw Error(ErrorCode::kInvalidArgument, "empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return lo + static_cast<std::int64_t>(draw % span);
  }

  // `count` distinct values from [0, n), in draw order.
  std::vector<int> distinct(int n, int count) {
    std::vector<int> pool(n);
    for (int v = 0; v < n; ++v) pool[v] = v;
    for (int a = 0; a < count; ++a) std::swap(pool[a], pool[uniform(a, n - 1)]);
    pool.resize(count);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {

inline void check_spec(const ScenarioSpec& spec) {
  auto bad = [](const char* what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (spec.existing < 0 || spec.fresh < 0 || spec.existing + spec.fresh < 1) bad("need at least one request");
  if (spec.servers < 1 || spec.users < 1) bad("need servers and users");
  if (spec.candidates < 1 || spec.candidates > spec.servers) bad("candidate count out of range");
  if (spec.vnf_types < 1) bad("need at least one vnf type");
  if (spec.chain_min < 1 || spec.chain_max < spec.chain_min || spec.chain_max > spec.vnf_types)
    bad("chain length range out of range");
}

// Offline solve of the existing requests; its deployment and routes become
// the snapshot of the full instance.
inline void bootstrap(ProblemInstance& full, int existing, const SolveOptions& options) {
  if (existing == 0) return;
  ProblemInstance offline = full;
  offline.requests.resize(existing);
  for (auto& r : offline.requests) r.status = RequestStatus::kNew;
  SolveOptions plain = options;
  plain.no_reuse = false;
  plain.formulation = {};
  const auto result = solve_exact(offline, plain);
  if (result.status != SolveStatus::kOptimal)
    throw Error(ErrorCode::kBootstrapInfeasible,
                "offline solve of existing requests ended " + std::string(to_string(result.status)));
  const auto& plan = *result.plan;
  for (int k = 0; k < full.catalog.size(); ++k)
    for (int i = 0; i < full.catalog.types[k].instances; ++i) {
      const int s = plan.deployed_server(k, i);
      if (s >= 0) full.snapshot.deployed.push_back({k, i, s});
    }
  for (int f = 0; f < existing; ++f) {
    full.requests[f].status = RequestStatus::kExisting;
    full.requests[f].current_route = plan.routes[f];
  }
}

}  // namespace detail

// Builds the instance for `spec`. The request list depends only on the
// seed and the total request count; the first `existing` requests are the
// ones already served.
inline ProblemInstance generate(const ScenarioSpec& spec, const SolveOptions& bootstrap_options = {}) {
  detail::check_spec(spec);
  ScenarioRng rng(spec.seed);
  ProblemInstance in;
  auto& net = in.network;
  for (int s = 0; s < spec.servers; ++s) net.servers.push_back("s" + std::to_string(s));
  for (int u = 0; u < spec.users; ++u) net.users.push_back("u" + std::to_string(u));
  const int nodes = net.num_nodes();
  net.bandwidth = SquareMatrix<Units>(nodes, spec.bandwidth);
  net.link_cost = SquareMatrix<Money>(nodes, 0);
  net.link_delay = SquareMatrix<Micros>(nodes, 0);
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j) {
      net.link_cost.set_symmetric(i, j, rng.uniform(spec.link_cost_min, spec.link_cost_max));
      net.link_delay.set_symmetric(i, j, 1000 * rng.uniform(spec.link_delay_min_ms, spec.link_delay_max_ms));
    }
  net.server_capacity.assign(spec.servers, spec.server_capacity);
  net.server_unit_cost.assign(spec.servers, spec.server_unit_cost);

  const int total = spec.existing + spec.fresh;
  for (int f = 0; f < total; ++f) {
    ServiceRequest r;
    r.id = "r" + std::to_string(f);
    r.user = f % spec.users;
    r.traffic = spec.traffic;
    r.delay_budget = 1000 * rng.uniform(spec.budget_min_ms, spec.budget_max_ms);
    const int length = static_cast<int>(rng.uniform(spec.chain_min, spec.chain_max));
    r.chain = rng.distinct(spec.vnf_types, length);
    std::sort(r.chain.begin(), r.chain.end());
    r.candidate_servers.assign(spec.servers, 0);
    for (int s : rng.distinct(spec.servers, spec.candidates)) r.candidate_servers[s] = 1;
    r.status = RequestStatus::kNew;
    r.current_route = BinaryMatrix(nodes, 0);
    in.requests.push_back(std::move(r));
  }

  for (int k = 0; k < spec.vnf_types; ++k) {
    VnfType t;
    t.name = "vnf" + std::to_string(k);
    t.license_cost = spec.license_cost;
    t.capacity = spec.vnf_capacity;
    t.resource_req = spec.resource_req;
    int users_of_type = 0;
    for (const auto& r : in.requests) users_of_type += r.requires_type(k);
    t.instances = std::max(1, users_of_type);
    t.processing_delay.assign(spec.servers, spec.processing_delay);
    t.migration_cost = SquareMatrix<Money>(spec.servers, 0);
    for (int s = 0; s < spec.servers; ++s)
      for (int u = 0; u < spec.servers; ++u)
        if (s != u) t.migration_cost(s, u) = spec.migration_volume * net.link_cost(s, u);
    in.catalog.types.push_back(std::move(t));
  }
  in.usage_threshold = spec.usage_threshold;
  detail::bootstrap(in, spec.existing, bootstrap_options);
  return in;
}

struct CaseReport {
  std::string name;  // "online" or "no_reuse"
  SolveResult result;
  std::size_t migration_count = 0;
  std::size_t instantiated_count = 0;
  std::size_t reused_count = 0;
  std::vector<Micros> delays;
};

struct ComparisonReport {
  ScenarioSpec spec;
  std::string label;
  ProblemInstance instance;
  CaseReport online;
  CaseReport no_reuse;

  // no_reuse total minus online total; meaningful when both have plans.
  Money gap() const { return no_reuse.result.breakdown.total - online.result.breakdown.total; }
};

namespace detail {

inline CaseReport solve_case(const ProblemInstance& in, std::string name, SolveOptions options, bool no_reuse) {
  options.no_reuse = no_reuse;
  CaseReport report;
  report.name = std::move(name);
  report.result = solve_exact(in, options);
  if (report.result.plan) {
    const auto delta = snapshot_diff(in, *report.result.plan);
    report.migration_count = delta.migrated.size();
    report.instantiated_count = delta.instantiated.size();
    report.reused_count = delta.reused.size();
    for (int f = 0; f < in.num_requests(); ++f) report.delays.push_back(service_delay(in, *report.result.plan, f));
  }
  return report;
}

}  // namespace detail

inline ComparisonReport run_comparison(const ScenarioSpec& spec, const SolveOptions& options = {},
                                       std::string label = {}) {
  ComparisonReport report;
  report.spec = spec;
  report.label = std::move(label);
  report.instance = generate(spec, options);
  report.online = detail::solve_case(report.instance, "online", options, false);
  report.no_reuse = detail::solve_case(report.instance, "no_reuse", options, true);
  return report;
}

enum class ReportFormat { kCsv, kJson };

inline constexpr const char* kCsvHeader =
    "scenario,seed,servers,existing,new,case,status,total,hosting,instantiation,routing,migration,"
    "migration_count,mean_delay_ms,wall_time";

namespace detail {

// Mean of integer microsecond delays in milliseconds with three decimals,
// rounded half up, computed without floating point.
inline std::string mean_delay_ms(const std::vector<Micros>& delays) {
  if (delays.empty()) return "";
  Micros sum = 0;
  for (auto d : delays) sum += d;
  const auto n = static_cast<Micros>(delays.size());
  const Micros micros = (sum + n / 2) / n;
  std::string frac = std::to_string(micros % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return std::to_string(micros / 1000) + "." + frac;
}

inline void csv_row(std::ostringstream& out, const ComparisonReport& r, const CaseReport& c, bool timings) {
  out << r.label << ',' << r.spec.seed << ',' << r.spec.servers << ',' << r.spec.existing << ','
      << r.spec.fresh << ',' << c.name << ',' << to_string(c.result.status) << ',';
  if (c.result.plan) {
    const auto& b = c.result.breakdown;
    out << format_money(b.total) << ',' << format_money(b.hosting_delta) << ','
        << format_money(b.instantiation) << ',' << format_money(b.routing_delta) << ','
        << format_money(b.migration) << ',' << c.migration_count << ',' << mean_delay_ms(c.delays);
  } else {
    out << ",,,,,,";
  }
  out << ',';
  if (timings) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(3);
    t << c.result.stats.wall_seconds;
    out << t.str();
  }
  out << '\n';
}

inline Json case_to_json(const ProblemInstance& in, const CaseReport& c, bool timings) {
  Json doc = result_to_json(in, c.result, timings);
  doc["case"] = c.name;
  doc["migration_count"] = c.migration_count;
  doc["instantiated_count"] = c.instantiated_count;
  doc["reused_count"] = c.reused_count;
  return doc;
}

}  // namespace detail

// CSV: one header line, then one row per scenario and case. Money columns
// are exact decimal currency units. wall_time is empty unless `timings`.
// JSON: an array of {scenario, seed, existing, new, gap, online, no_reuse}.
inline std::string emit_report(const std::vector<ComparisonReport>& reports, ReportFormat format,
                               bool timings = false) {
  if (format == ReportFormat::kCsv) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : reports) {
      detail::csv_row(out, r, r.online, timings);
      detail::csv_row(out, r, r.no_reuse, timings);
    }
    return out.str();
  }
  Json doc = Json::array();
  for (const auto& r : reports) {
    Json entry = {{"scenario", r.label},
                  {"seed", r.spec.seed},
                  {"servers", r.spec.servers},
                  {"existing", r.spec.existing},
                  {"new", r.spec.fresh}};
    if (r.online.result.plan && r.no_reuse.result.plan) {
      entry["gap"] = r.gap();
      entry["gap_display"] = format_money(r.gap());
    }
    entry["online"] = detail::case_to_json(r.instance, r.online, timings);
    entry["no_reuse"] = detail::case_to_json(r.instance, r.no_reuse, timings);
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

inline std::string emit_report(const ComparisonReport& report, ReportFormat format, bool timings = false) {
  return emit_report(std::vector<ComparisonReport>{report}, format, timings);
}

}  // namespace chainplace

#endif  // CHAINPLACE_SCENARIO_HPP
