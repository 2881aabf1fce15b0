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

// Domain model of the online VNF forwarding-graph placement problem:
// the substrate network, the VNF catalog, service requests, the current
// deployment snapshot and candidate placement plans. Also hosts instance
// validation, the constraint-by-constraint feasibility checker and the
// snapshot/plan diff.
//
// Units are exact integers throughout: money in micro-money (1e-6 of a
// currency unit), delays in microseconds, traffic/bandwidth/resources in
// abstract units. Node indices put servers first: node s < |S| is a
// server, node |S| + u is end-user u.

#ifndef CHAINPLACE_MODEL_HPP
#define CHAINPLACE_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chainplace/error.hpp"

namespace chainplace {

using Money = std::int64_t;
using Micros = std::int64_t;
using Units = std::int64_t;

inline constexpr Money kMicroPerUnit = 1'000'000;

template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  void set_symmetric(std::size_t i, std::size_t j, T value) {
    (*this)(i, j) = value;
    (*this)(j, i) = value;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  const std::vector<T>& data() const noexcept { return data_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using BinaryMatrix = SquareMatrix<std::uint8_t>;
using Bits = std::vector<std::uint8_t>;

struct Network {
  std::vector<std::string> servers;
  std::vector<std::string> users;
  SquareMatrix<Units> bandwidth;    // diagonal unused (co-located hops)
  SquareMatrix<Money> link_cost;    // per traffic unit
  SquareMatrix<Micros> link_delay;
  std::vector<Units> server_capacity;
  std::vector<Money> server_unit_cost;  // per resource unit

  int num_servers() const noexcept { return static_cast<int>(servers.size()); }
  int num_users() const noexcept { return static_cast<int>(users.size()); }
  int num_nodes() const noexcept { return num_servers() + num_users(); }
  int user_node(int user) const noexcept { return num_servers() + user; }
  bool is_server(int node) const noexcept { return node < num_servers(); }

  std::string node_name(int node) const {
    return is_server(node) ? servers[node] : users[node - num_servers()];
  }
};

struct VnfType {
  std::string name;
  Money license_cost = 0;
  Units capacity = 0;
  Units resource_req = 0;
  int instances = 1;
  std::vector<Micros> processing_delay;  // per server
  SquareMatrix<Money> migration_cost;    // [from][to], servers only
};

struct VnfCatalog {
  std::vector<VnfType> types;

  int size() const noexcept { return static_cast<int>(types.size()); }

  std::optional<int> find(std::string_view name) const {
    for (int k = 0; k < size(); ++k)
      if (types[k].name == name) return k;
    return std::nullopt;
  }
};

enum class RequestStatus { kExisting, kNew };

struct ServiceRequest {
  std::string id;
  int user = 0;            // index into Network::users
  std::vector<int> chain;  // catalog indices in traversal order
  Units traffic = 1;
  Micros delay_budget = 0;
  Bits candidate_servers;  // per server, 1 if it may serve content
  RequestStatus status = RequestStatus::kNew;
  BinaryMatrix current_route;  // node x node, symmetric

  int first_type() const { return chain.front(); }
  int last_type() const { return chain.back(); }

  bool requires_type(int k) const {
    return std::find(chain.begin(), chain.end(), k) != chain.end();
  }
};

struct Placement {
  int type = 0;
  int instance = 0;
  int server = 0;

  auto operator<=>(const Placement&) const = default;
};

struct Snapshot {
  std::vector<Placement> deployed;

  // Server currently hosting the instance, or -1.
  int server_of(int type, int instance) const {
    for (const auto& p : deployed)
      if (p.type == type && p.instance == instance) return p.server;
    return -1;
  }

  bool contains(int type, int instance) const { return server_of(type, instance) >= 0; }
};

enum class RoutingDomain { kServers, kAllNodes };

// Knobs where the formulation admits more than one reading.
struct FormulationOptions {
  // Require a deployed instance for every catalog type, not just the ones
  // some request uses.
  bool literal_deployment_scope = false;
  // Charge licenses only for instances absent from the snapshot; removals
  // earn no refund.
  bool clamp_instantiation = false;
  // Which node pairs carry routing cost.
  RoutingDomain routing_domain = RoutingDomain::kAllNodes;

  bool operator==(const FormulationOptions&) const = default;
};

struct ProblemInstance {
  Network network;
  VnfCatalog catalog;
  std::vector<ServiceRequest> requests;
  Snapshot snapshot;
  double usage_threshold = 1.0;

  int num_requests() const noexcept { return static_cast<int>(requests.size()); }

  std::int64_t usage_threshold_ppm() const {
    return static_cast<std::int64_t>(std::llround(usage_threshold * 1e6));
  }

  // Largest integral load allowed against `capacity` under the usage
  // threshold. Every capacity row has an integral left-hand side, so
  // comparing against the floor is exact.
  std::int64_t usable(std::int64_t capacity) const {
    const auto scaled = static_cast<__int128>(capacity) * usage_threshold_ppm();
    return static_cast<std::int64_t>(scaled / 1'000'000);
  }

  bool type_required(int k) const {
    return std::any_of(requests.begin(), requests.end(),
                       [k](const ServiceRequest& r) { return r.requires_type(k); });
  }

  // Types that get deployment decisions.
  bool type_active(int k, const FormulationOptions& options) const {
    return options.literal_deployment_scope || type_required(k);
  }
};

// The four decision-variable families. Assignment is stored [f][k][i][s]
// with a (possibly empty) entry for every catalog type.
struct PlacementPlan {
  std::vector<Bits> content_server;                          // [f][s]
  std::vector<std::vector<Bits>> deployment;                 // [k][i][s]
  std::vector<std::vector<std::vector<Bits>>> assignment;    // [f][k][i][s]
  std::vector<BinaryMatrix> routes;                          // [f]

  static PlacementPlan zeros(const ProblemInstance& instance) {
    const int servers = instance.network.num_servers();
    const int nodes = instance.network.num_nodes();
    PlacementPlan plan;
    plan.content_server.assign(instance.requests.size(), Bits(servers, 0));
    plan.deployment.resize(instance.catalog.types.size());
    for (std::size_t k = 0; k < instance.catalog.types.size(); ++k)
      plan.deployment[k].assign(instance.catalog.types[k].instances, Bits(servers, 0));
    plan.assignment.assign(instance.requests.size(), plan.deployment);
    plan.routes.assign(instance.requests.size(), BinaryMatrix(nodes, 0));
    return plan;
  }

  int deployed_server(int type, int instance) const {
    const auto& row = deployment[type][instance];
    for (std::size_t s = 0; s < row.size(); ++s)
      if (row[s]) return static_cast<int>(s);
    return -1;
  }

  int content_server_of(int request) const {
    const auto& row = content_server[request];
    for (std::size_t s = 0; s < row.size(); ++s)
      if (row[s]) return static_cast<int>(s);
    return -1;
  }

  bool operator==(const PlacementPlan&) const = default;
};

// A snapshot expressed as a plan: τ = τ̃, P = P̃, no γ/λ decisions.
inline PlacementPlan snapshot_as_plan(const ProblemInstance& instance) {
  PlacementPlan plan = PlacementPlan::zeros(instance);
  for (const auto& p : instance.snapshot.deployed) plan.deployment[p.type][p.instance][p.server] = 1;
  for (std::size_t f = 0; f < instance.requests.size(); ++f)
    plan.routes[f] = instance.requests[f].current_route;
  return plan;
}

// Throws kIndexMismatch unless every plan map has exactly the instance's
// index sets; throws kInvalidArgument on non-binary entries or asymmetric
// routes.
inline void require_plan_shape(const ProblemInstance& instance, const PlacementPlan& plan) {
  const auto servers = static_cast<std::size_t>(instance.network.num_servers());
  const auto nodes = static_cast<std::size_t>(instance.network.num_nodes());
  const auto requests = instance.requests.size();
  const auto& types = instance.catalog.types;
  auto mismatch = [](const std::string& what) { throw Error(ErrorCode::kIndexMismatch, what); };
  auto check_bits = [](const Bits& bits, const std::string& what) {
    for (auto b : bits)
      if (b > 1) throw Error(ErrorCode::kInvalidArgument, "non-binary entry in " + what);
  };

  if (plan.content_server.size() != requests) mismatch("content_server request count");
  for (const auto& row : plan.content_server) {
    if (row.size() != servers) mismatch("content_server server count");
    check_bits(row, "content_server");
  }
  if (plan.deployment.size() != types.size()) mismatch("deployment type count");
  for (std::size_t k = 0; k < types.size(); ++k) {
    if (plan.deployment[k].size() != static_cast<std::size_t>(types[k].instances))
      mismatch("deployment instance count for type " + std::to_string(k));
    for (const auto& row : plan.deployment[k]) {
      if (row.size() != servers) mismatch("deployment server count");
      check_bits(row, "deployment");
    }
  }
  if (plan.assignment.size() != requests) mismatch("assignment request count");
  for (const auto& per_request : plan.assignment) {
    if (per_request.size() != types.size()) mismatch("assignment type count");
    for (std::size_t k = 0; k < types.size(); ++k) {
      if (per_request[k].size() != static_cast<std::size_t>(types[k].instances))
        mismatch("assignment instance count");
      for (const auto& row : per_request[k]) {
        if (row.size() != servers) mismatch("assignment server count");
        check_bits(row, "assignment");
      }
    }
  }
  if (plan.routes.size() != requests) mismatch("routes request count");
  for (const auto& route : plan.routes) {
    if (route.size() != nodes) mismatch("route node count");
    check_bits(route.data(), "routes");
    if (!route.is_symmetric()) throw Error(ErrorCode::kInvalidArgument, "asymmetric route matrix");
  }
}

// ---------------------------------------------------------------------------
// Instance validation

enum class ValidationCode {
  kDimensionMismatch,
  kDuplicateNode,
  kAsymmetricMatrix,
  kNonzeroDiagonal,
  kNegativeEntry,
  kNonpositiveCapacity,
  kNonzeroMigrationDiagonal,
  kEmptyInstancePool,
  kEmptyChain,
  kUnknownVnfType,
  kDuplicateChainType,
  kUnknownUser,
  kNoCandidateServer,
  kInvalidRoute,
  kNewRequestHasRoute,
  kDuplicateRequestId,
  kUnknownSnapshotEntry,
  kDuplicateDeployment,
  kInvalidUsageThreshold,
};

inline std::string_view to_string(ValidationCode code) {
  switch (code) {
    case ValidationCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case ValidationCode::kDuplicateNode: return "DUPLICATE_NODE";
    case ValidationCode::kAsymmetricMatrix: return "ASYMMETRIC_MATRIX";
    case ValidationCode::kNonzeroDiagonal: return "NONZERO_DIAGONAL";
    case ValidationCode::kNegativeEntry: return "NEGATIVE_ENTRY";
    case ValidationCode::kNonpositiveCapacity: return "NONPOSITIVE_CAPACITY";
    case ValidationCode::kNonzeroMigrationDiagonal: return "NONZERO_MIGRATION_DIAGONAL";
    case ValidationCode::kEmptyInstancePool: return "EMPTY_INSTANCE_POOL";
    case ValidationCode::kEmptyChain: return "EMPTY_CHAIN";
    case ValidationCode::kUnknownVnfType: return "UNKNOWN_VNF_TYPE";
    case ValidationCode::kDuplicateChainType: return "DUPLICATE_CHAIN_TYPE";
    case ValidationCode::kUnknownUser: return "UNKNOWN_USER";
    case ValidationCode::kNoCandidateServer: return "NO_CANDIDATE_SERVER";
    case ValidationCode::kInvalidRoute: return "INVALID_ROUTE";
    case ValidationCode::kNewRequestHasRoute: return "NEW_REQUEST_HAS_ROUTE";
    case ValidationCode::kDuplicateRequestId: return "DUPLICATE_REQUEST_ID";
    case ValidationCode::kUnknownSnapshotEntry: return "UNKNOWN_SNAPSHOT_ENTRY";
    case ValidationCode::kDuplicateDeployment: return "DUPLICATE_DEPLOYMENT";
    case ValidationCode::kInvalidUsageThreshold: return "INVALID_USAGE_THRESHOLD";
  }
  return "UNKNOWN";
}

struct ValidationIssue {
  ValidationCode code;
  std::vector<int> index;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept { return issues.empty(); }

  bool contains(ValidationCode code, const std::vector<int>& index) const {
    return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) {
      return i.code == code && i.index == index;
    });
  }

  bool contains(ValidationCode code) const {
    return std::any_of(issues.begin(), issues.end(),
                       [&](const ValidationIssue& i) { return i.code == code; });
  }

  std::string summary() const {
    std::ostringstream out;
    for (const auto& issue : issues) {
      out << to_string(issue.code) << '(';
      for (std::size_t n = 0; n < issue.index.size(); ++n) out << (n ? "," : "") << issue.index[n];
      out << ')';
      if (!issue.detail.empty()) out << ' ' << issue.detail;
      out << '\n';
    }
    return out.str();
  }
};

namespace detail {

template <typename T>
void validate_node_matrix(const SquareMatrix<T>& m, std::size_t n, const char* name,
                          bool zero_diagonal, bool positive_links, ValidationReport& report) {
  if (m.size() != n) {
    report.issues.push_back({ValidationCode::kDimensionMismatch, {}, name});
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (zero_diagonal && m(i, i) != 0)
      report.issues.push_back({ValidationCode::kNonzeroDiagonal, {int(i)}, name});
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0)
        report.issues.push_back({ValidationCode::kNegativeEntry, {int(i), int(j)}, name});
      else if (positive_links && i != j && m(i, j) == 0)
        report.issues.push_back({ValidationCode::kNonpositiveCapacity, {int(i), int(j)}, name});
      if (j > i && m(i, j) != m(j, i))
        report.issues.push_back({ValidationCode::kAsymmetricMatrix, {int(i), int(j)}, name});
    }
  }
}

}  // namespace detail

// Lists every violated type invariant; an empty report means the instance
// is well formed.
inline ValidationReport validate_instance(const ProblemInstance& instance) {
  ValidationReport report;
  const auto& net = instance.network;
  const auto servers = static_cast<std::size_t>(net.num_servers());
  const auto nodes = static_cast<std::size_t>(net.num_nodes());

  {
    std::set<std::string> seen;
    for (int n = 0; n < net.num_nodes(); ++n)
      if (!seen.insert(net.node_name(n)).second)
        report.issues.push_back({ValidationCode::kDuplicateNode, {n}, net.node_name(n)});
  }
  detail::validate_node_matrix(net.bandwidth, nodes, "bandwidth", false, true, report);
  detail::validate_node_matrix(net.link_cost, nodes, "link_cost", true, false, report);
  detail::validate_node_matrix(net.link_delay, nodes, "link_delay", true, false, report);
  if (net.server_capacity.size() != servers)
    report.issues.push_back({ValidationCode::kDimensionMismatch, {}, "server_capacity"});
  else
    for (std::size_t s = 0; s < servers; ++s)
      if (net.server_capacity[s] <= 0)
        report.issues.push_back({ValidationCode::kNonpositiveCapacity, {int(s)}, "server_capacity"});
  if (net.server_unit_cost.size() != servers)
    report.issues.push_back({ValidationCode::kDimensionMismatch, {}, "server_unit_cost"});
  else
    for (std::size_t s = 0; s < servers; ++s)
      if (net.server_unit_cost[s] < 0)
        report.issues.push_back({ValidationCode::kNegativeEntry, {int(s)}, "server_unit_cost"});

  const auto& types = instance.catalog.types;
  for (std::size_t k = 0; k < types.size(); ++k) {
    const auto& t = types[k];
    const int ki = static_cast<int>(k);
    if (t.license_cost < 0 || t.resource_req < 0 || t.instances < 0)
      report.issues.push_back({ValidationCode::kNegativeEntry, {ki}, "vnf type " + t.name});
    if (t.capacity <= 0)
      report.issues.push_back({ValidationCode::kNonpositiveCapacity, {ki}, "vnf capacity " + t.name});
    if (t.instances < 1 && instance.type_required(ki))
      report.issues.push_back({ValidationCode::kEmptyInstancePool, {ki}, t.name});
    if (t.processing_delay.size() != servers) {
      report.issues.push_back({ValidationCode::kDimensionMismatch, {ki}, "processing_delay"});
    } else {
      for (std::size_t s = 0; s < servers; ++s)
        if (t.processing_delay[s] < 0)
          report.issues.push_back({ValidationCode::kNegativeEntry, {ki, int(s)}, "processing_delay"});
    }
    if (t.migration_cost.size() != servers) {
      report.issues.push_back({ValidationCode::kDimensionMismatch, {ki}, "migration_cost"});
    } else {
      for (std::size_t s = 0; s < servers; ++s) {
        if (t.migration_cost(s, s) != 0)
          report.issues.push_back({ValidationCode::kNonzeroMigrationDiagonal, {ki, int(s)}, t.name});
        for (std::size_t u = 0; u < servers; ++u)
          if (t.migration_cost(s, u) < 0)
            report.issues.push_back(
                {ValidationCode::kNegativeEntry, {ki, int(s), int(u)}, "migration_cost"});
      }
    }
  }

  std::set<std::string> ids;
  for (std::size_t f = 0; f < instance.requests.size(); ++f) {
    const auto& r = instance.requests[f];
    const int fi = static_cast<int>(f);
    if (!ids.insert(r.id).second)
      report.issues.push_back({ValidationCode::kDuplicateRequestId, {fi}, r.id});
    if (r.user < 0 || r.user >= net.num_users())
      report.issues.push_back({ValidationCode::kUnknownUser, {fi}, {}});
    if (r.chain.empty()) report.issues.push_back({ValidationCode::kEmptyChain, {fi}, {}});
    std::set<int> chain_seen;
    for (int k : r.chain) {
      if (k < 0 || k >= instance.catalog.size())
        report.issues.push_back({ValidationCode::kUnknownVnfType, {fi, k}, {}});
      else if (!chain_seen.insert(k).second)
        report.issues.push_back({ValidationCode::kDuplicateChainType, {fi, k}, {}});
    }
    if (r.traffic < 0 || r.delay_budget < 0)
      report.issues.push_back({ValidationCode::kNegativeEntry, {fi}, "request"});
    if (r.candidate_servers.size() != servers) {
      report.issues.push_back({ValidationCode::kDimensionMismatch, {fi}, "candidate_servers"});
    } else if (std::none_of(r.candidate_servers.begin(), r.candidate_servers.end(),
                            [](std::uint8_t c) { return c != 0; })) {
      report.issues.push_back({ValidationCode::kNoCandidateServer, {fi}, {}});
    }
    if (r.current_route.size() != nodes) {
      report.issues.push_back({ValidationCode::kDimensionMismatch, {fi}, "current_route"});
    } else {
      const auto& d = r.current_route.data();
      if (!r.current_route.is_symmetric() ||
          std::any_of(d.begin(), d.end(), [](std::uint8_t b) { return b > 1; }))
        report.issues.push_back({ValidationCode::kInvalidRoute, {fi}, {}});
      if (r.status == RequestStatus::kNew &&
          std::any_of(d.begin(), d.end(), [](std::uint8_t b) { return b != 0; }))
        report.issues.push_back({ValidationCode::kNewRequestHasRoute, {fi}, {}});
    }
  }

  std::map<std::pair<int, int>, int> deployments;
  for (const auto& p : instance.snapshot.deployed) {
    if (p.type < 0 || p.type >= instance.catalog.size() || p.instance < 0 ||
        p.instance >= types[p.type].instances || p.server < 0 ||
        p.server >= net.num_servers()) {
      report.issues.push_back(
          {ValidationCode::kUnknownSnapshotEntry, {p.type, p.instance, p.server}, {}});
      continue;
    }
    if (++deployments[{p.type, p.instance}] == 2)
      report.issues.push_back({ValidationCode::kDuplicateDeployment, {p.type, p.instance}, {}});
  }

  if (!(instance.usage_threshold > 0.0 && instance.usage_threshold <= 1.0))
    report.issues.push_back({ValidationCode::kInvalidUsageThreshold, {}, {}});
  return report;
}

inline void require_valid(const ProblemInstance& instance) {
  const auto report = validate_instance(instance);
  if (!report.ok()) throw Error(ErrorCode::kValidationFailed, report.summary());
}

// ---------------------------------------------------------------------------
// Feasibility

struct Violation {
  std::string constraint;  // family tag, e.g. "6" or "16"
  std::vector<int> index;
  std::string detail;
};

struct ConstraintReport {
  std::vector<Violation> violations;

  bool feasible() const noexcept { return violations.empty(); }

  bool violates(std::string_view tag) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.constraint == tag; });
  }

  bool violates(std::string_view tag, const std::vector<int>& index) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) {
      return v.constraint == tag && v.index == index;
    });
  }

  std::string summary() const {
    std::ostringstream out;
    for (const auto& v : violations) {
      out << "family " << v.constraint;
      for (int i : v.index) out << '[' << i << ']';
      if (!v.detail.empty()) out << ' ' << v.detail;
      out << '\n';
    }
    return out.str();
  }
};

namespace detail {

// Transmission plus processing delay of request f under plan, without any
// precondition on the assignment. Self-links carry no delay.
inline Micros request_delay(const ProblemInstance& instance, const PlacementPlan& plan, int f) {
  const auto& r = instance.requests[f];
  const auto& net = instance.network;
  const int nodes = net.num_nodes();
  Micros total = 0;
  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j)
      if (plan.routes[f](i, j)) total += r.traffic * net.link_delay(i, j);
  for (int k : r.chain) {
    const auto& type = instance.catalog.types[k];
    for (int i = 0; i < type.instances; ++i)
      for (int s = 0; s < net.num_servers(); ++s)
        if (plan.assignment[f][k][i][s]) total += r.traffic * type.processing_delay[s];
  }
  return total;
}

}  // namespace detail

// Evaluates every constraint family on a candidate plan. Family 9 is read
// as λ ≤ τ, family 10 is scoped per `options` and family 17 is read as
// Σ_i λ_{s,lst,i} = P_{s,u}.
inline ConstraintReport check_feasibility(const ProblemInstance& instance,
                                          const PlacementPlan& plan,
                                          const FormulationOptions& options = {}) {
  require_plan_shape(instance, plan);
  ConstraintReport report;
  const auto& net = instance.network;
  const auto& types = instance.catalog.types;
  const int servers = net.num_servers();
  const int nodes = net.num_nodes();
  const int num_types = instance.catalog.size();
  const int requests = instance.num_requests();
  auto add = [&](const char* tag, std::vector<int> index, std::string detail = {}) {
    report.violations.push_back({tag, std::move(index), std::move(detail)});
  };

  for (int f = 0; f < requests; ++f) {
    const auto& r = instance.requests[f];
    int selected = 0;
    for (int s = 0; s < servers; ++s) {
      selected += plan.content_server[f][s];
      if (plan.content_server[f][s] && !r.candidate_servers[s]) add("7", {f, s});
    }
    if (selected != 1) add("6", {f}, "selected " + std::to_string(selected));

    for (int k = 0; k < num_types; ++k) {
      int assigned = 0;
      for (int i = 0; i < types[k].instances; ++i)
        for (int s = 0; s < servers; ++s) {
          if (!plan.assignment[f][k][i][s]) continue;
          ++assigned;
          if (!plan.deployment[k][i][s]) add("9", {f, s, k, i});
        }
      if (r.requires_type(k)) {
        if (assigned != 1) add("8", {f, k}, "assigned " + std::to_string(assigned));
      } else if (assigned != 0) {
        add("8", {f, k}, "assignment to a type outside the chain");
      }
    }
  }

  for (int k = 0; k < num_types; ++k) {
    int deployed = 0;
    for (int i = 0; i < types[k].instances; ++i) {
      int placed = 0;
      for (int s = 0; s < servers; ++s) placed += plan.deployment[k][i][s];
      if (placed > 1) add("11", {k, i});
      deployed += placed;
    }
    if (deployed < 1 && instance.type_active(k, options)) add("10", {k});
  }

  for (int s = 0; s < servers; ++s) {
    Units load = 0;
    for (int k = 0; k < num_types; ++k)
      for (int i = 0; i < types[k].instances; ++i)
        load += types[k].resource_req * plan.deployment[k][i][s];
    if (load > instance.usable(net.server_capacity[s]))
      add("12", {s}, "load " + std::to_string(load));
  }

  for (int k = 0; k < num_types; ++k)
    for (int i = 0; i < types[k].instances; ++i)
      for (int s = 0; s < servers; ++s) {
        Units load = 0;
        for (int f = 0; f < requests; ++f)
          load += instance.requests[f].traffic * plan.assignment[f][k][i][s];
        if (load > instance.usable(types[k].capacity))
          add("13", {k, i, s}, "load " + std::to_string(load));
      }

  for (int i = 0; i < nodes; ++i)
    for (int j = i + 1; j < nodes; ++j) {
      Units load = 0;
      for (int f = 0; f < requests; ++f) load += instance.requests[f].traffic * plan.routes[f](i, j);
      if (load > instance.usable(net.bandwidth(i, j)))
        add("14", {i, j}, "load " + std::to_string(load));
    }

  for (int f = 0; f < requests; ++f) {
    const auto& r = instance.requests[f];
    const auto& route = plan.routes[f];
    const auto& assign = plan.assignment[f];
    const int fst = r.first_type();
    for (int s = 0; s < servers; ++s)
      for (int t = 0; t < servers; ++t)
        for (int i = 0; i < types[fst].instances; ++i)
          if (plan.content_server[f][s] && assign[fst][i][t] && !route(s, t))
            add("15", {f, s, t, i});

    for (std::size_t m = 0; m + 1 < r.chain.size(); ++m) {
      const int a = r.chain[m];
      const int b = r.chain[m + 1];
      for (int s = 0; s < servers; ++s)
        for (int t = 0; t < servers; ++t)
          for (int i = 0; i < types[a].instances; ++i)
            for (int j = 0; j < types[b].instances; ++j)
              if (assign[a][i][s] && assign[b][j][t] && !route(s, t))
                add("16", {f, s, t, static_cast<int>(m), i, j});
    }

    const int lst = r.last_type();
    const int user = net.user_node(r.user);
    for (int s = 0; s < servers; ++s) {
      int hosted = 0;
      for (int i = 0; i < types[lst].instances; ++i) hosted += assign[lst][i][s];
      if (hosted != route(s, user)) add("17", {f, s});
    }

    const Micros delay = detail::request_delay(instance, plan, f);
    if (delay > r.delay_budget) add("18", {f}, "delay " + std::to_string(delay));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Snapshot diff

struct Migration {
  int type = 0;
  int instance = 0;
  int from = 0;
  int to = 0;

  auto operator<=>(const Migration&) const = default;
};

struct DeploymentDelta {
  std::vector<Placement> reused;
  std::vector<Migration> migrated;
  std::vector<Placement> instantiated;
  std::vector<Placement> removed;

  bool operator==(const DeploymentDelta&) const = default;
};

// Classifies every instance present in the snapshot or the plan.
inline DeploymentDelta snapshot_diff(const ProblemInstance& instance, const PlacementPlan& plan) {
  require_plan_shape(instance, plan);
  DeploymentDelta delta;
  const int servers = instance.network.num_servers();
  for (int k = 0; k < instance.catalog.size(); ++k) {
    for (int i = 0; i < instance.catalog.types[k].instances; ++i) {
      std::vector<int> before;
      std::vector<int> after;
      for (const auto& p : instance.snapshot.deployed)
        if (p.type == k && p.instance == i) before.push_back(p.server);
      for (int s = 0; s < servers; ++s)
        if (plan.deployment[k][i][s]) after.push_back(s);
      std::sort(before.begin(), before.end());
      before.erase(std::unique(before.begin(), before.end()), before.end());

      std::vector<int> gone;
      std::vector<int> fresh;
      for (int s : before) {
        if (std::find(after.begin(), after.end(), s) != after.end())
          delta.reused.push_back({k, i, s});
        else
          gone.push_back(s);
      }
      for (int s : after)
        if (std::find(before.begin(), before.end(), s) == before.end()) fresh.push_back(s);
      const std::size_t moves = std::min(gone.size(), fresh.size());
      for (std::size_t n = 0; n < moves; ++n) delta.migrated.push_back({k, i, gone[n], fresh[n]});
      for (std::size_t n = moves; n < fresh.size(); ++n) delta.instantiated.push_back({k, i, fresh[n]});
      for (std::size_t n = moves; n < gone.size(); ++n) delta.removed.push_back({k, i, gone[n]});
    }
  }
  return delta;
}

}  // namespace chainplace

#endif  // CHAINPLACE_MODEL_HPP
