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

// Reconfiguration cost model. Each component is evaluated directly on the
// binary plan values; this is the ground-truth objective that both solvers
// and every report use.

#ifndef CHAINPLACE_COSTS_HPP
#define CHAINPLACE_COSTS_HPP

#include <cstdint>
#include <algorithm>
#include <string>

#include "chainplace/model.hpp"

namespace chainplace {

struct CostBreakdown {
  Money hosting_delta = 0;
  Money migration = 0;
  Money instantiation = 0;
  Money routing_delta = 0;
  Money total = 0;

  bool operator==(const CostBreakdown&) const = default;
};

// Micro-money as a fixed six-decimal string, e.g. -25000 -> "-0.025000".
inline std::string format_money(Money micro) {
  const bool negative = micro < 0;
  const auto bits = static_cast<std::uint64_t>(micro);
  const std::uint64_t magnitude = negative ? 0 - bits : bits;
  std::string frac = std::to_string(magnitude % kMicroPerUnit);
  frac.insert(0, 6 - frac.size(), '0');
  return (negative ? "-" : "") + std::to_string(magnitude / kMicroPerUnit) + "." + frac;
}

// Whether the undirected link {i, j} carries routing cost.
inline bool charges_routing(const Network& net, int i, int j, RoutingDomain domain) {
  if (i == j) return false;
  return domain == RoutingDomain::kAllNodes || (net.is_server(i) && net.is_server(j));
}

inline Money hosting_delta(const ProblemInstance& instance, const PlacementPlan& plan) {
  require_plan_shape(instance, plan);
  const auto& net = instance.network;
  Money total = 0;
  for (int k = 0; k < instance.catalog.size(); ++k) {
    const auto& type = instance.catalog.types[k];
    for (int i = 0; i < type.instances; ++i)
      for (int s = 0; s < net.num_servers(); ++s)
        total += type.resource_req * net.server_unit_cost[s] * plan.deployment[k][i][s];
  }
  for (const auto& p : instance.snapshot.deployed)
    total -= instance.catalog.types[p.type].resource_req * net.server_unit_cost[p.server];
  return total;
}

inline Money migration_cost(const ProblemInstance& instance, const PlacementPlan& plan) {
  require_plan_shape(instance, plan);
  Money total = 0;
  for (const auto& p : instance.snapshot.deployed) {
    const auto& type = instance.catalog.types[p.type];
    for (int t = 0; t < instance.network.num_servers(); ++t)
      total += type.migration_cost(p.server, t) * plan.deployment[p.type][p.instance][t];
  }
  return total;
}

// Literal form: Σ L_k (τ − τ̃), so a removal refunds the license. With
// clamping, each instance pays L_k · max(0, Σ_s τ − Σ_s τ̃).
inline Money instantiation_cost(const ProblemInstance& instance, const PlacementPlan& plan,
                                const FormulationOptions& options = {}) {
  require_plan_shape(instance, plan);
  Money total = 0;
  for (int k = 0; k < instance.catalog.size(); ++k) {
    const auto& type = instance.catalog.types[k];
    for (int i = 0; i < type.instances; ++i) {
      std::int64_t placed = 0;
      for (auto b : plan.deployment[k][i]) placed += b;
      std::int64_t before = 0;
      for (const auto& p : instance.snapshot.deployed)
        if (p.type == k && p.instance == i) ++before;
      const std::int64_t diff = placed - before;
      total += type.license_cost * (options.clamp_instantiation ? std::max<std::int64_t>(0, diff) : diff);
    }
  }
  return total;
}

// Each undirected link is charged once per request; self-links are free.
inline Money routing_delta(const ProblemInstance& instance, const PlacementPlan& plan,
                           const FormulationOptions& options = {}) {
  require_plan_shape(instance, plan);
  const auto& net = instance.network;
  const int nodes = net.num_nodes();
  Money total = 0;
  for (int f = 0; f < instance.num_requests(); ++f) {
    const auto& r = instance.requests[f];
    for (int i = 0; i < nodes; ++i)
      for (int j = i + 1; j < nodes; ++j) {
        if (!charges_routing(net, i, j, options.routing_domain)) continue;
        const int change = int(plan.routes[f](i, j)) - int(r.current_route(i, j));
        total += net.link_cost(i, j) * r.traffic * change;
      }
  }
  return total;
}

inline CostBreakdown total_objective(const ProblemInstance& instance, const PlacementPlan& plan,
                                     const FormulationOptions& options = {}) {
  CostBreakdown b;
  b.hosting_delta = hosting_delta(instance, plan);
  b.migration = migration_cost(instance, plan);
  b.instantiation = instantiation_cost(instance, plan, options);
  b.routing_delta = routing_delta(instance, plan, options);
  b.total = b.hosting_delta + b.migration + b.instantiation + b.routing_delta;
  return b;
}

// Transmission delay over the assigned links plus processing delay of the
// assigned instances, both scaled by the request's traffic.
inline Micros service_delay(const ProblemInstance& instance, const PlacementPlan& plan, int f) {
  require_plan_shape(instance, plan);
  if (f < 0 || f >= instance.num_requests())
    throw Error(ErrorCode::kInvalidArgument, "no request " + std::to_string(f));
  const auto& r = instance.requests[f];
  for (int k : r.chain) {
    int assigned = 0;
    for (const auto& row : plan.assignment[f][k])
      for (auto b : row) assigned += b;
    if (assigned != 1)
      throw Error(ErrorCode::kUnassignedChain,
                  "request " + r.id + " type " + std::to_string(k) + " has " +
                      std::to_string(assigned) + " assigned instances");
  }
  return detail::request_delay(instance, plan, f);
}

}  // namespace chainplace

#endif  // CHAINPLACE_COSTS_HPP
