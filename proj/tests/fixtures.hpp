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

// Hand-built and randomly generated instances shared by the test suites.

#ifndef CHAINPLACE_TESTS_FIXTURES_HPP
#define CHAINPLACE_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chainplace/chainplace.hpp"

namespace fixtures {

using namespace chainplace;

inline constexpr Money kDollar = kMicroPerUnit;

// Network with uniform link cost/delay and the default capacities.
inline Network uniform_network(int servers, int users, Money cost = 100'000, Micros delay = 10'000) {
  Network net;
  for (int s = 0; s < servers; ++s) net.servers.push_back("s" + std::to_string(s));
  for (int u = 0; u < users; ++u) net.users.push_back("u" + std::to_string(u));
  const int n = servers + users;
  net.bandwidth = SquareMatrix<Units>(n, 10);
  net.link_cost = SquareMatrix<Money>(n, cost);
  net.link_delay = SquareMatrix<Micros>(n, delay);
  for (int i = 0; i < n; ++i) {
    net.link_cost(i, i) = 0;
    net.link_delay(i, i) = 0;
  }
  net.server_capacity.assign(servers, 8);
  net.server_unit_cost.assign(servers, 5 * kDollar);
  return net;
}

// L = $100, R = 2, P = 10, M = 20 ms, migration 44 x $0.10.
inline VnfType standard_type(const std::string& name, int servers, int instances = 1) {
  VnfType t;
  t.name = name;
  t.license_cost = 100 * kDollar;
  t.capacity = 10;
  t.resource_req = 2;
  t.instances = instances;
  t.processing_delay.assign(servers, 20'000);
  t.migration_cost = SquareMatrix<Money>(servers, 44 * 100'000);
  for (int s = 0; s < servers; ++s) t.migration_cost(s, s) = 0;
  return t;
}

inline ServiceRequest new_request(const Network& net, std::string id, int user, std::vector<int> chain,
                                  Micros budget = 2'000'000) {
  ServiceRequest r;
  r.id = std::move(id);
  r.user = user;
  r.chain = std::move(chain);
  r.traffic = 1;
  r.delay_budget = budget;
  r.candidate_servers.assign(net.num_servers(), 1);
  r.status = RequestStatus::kNew;
  r.current_route = BinaryMatrix(net.num_nodes(), 0);
  return r;
}

// 2 servers, 1 user, 1 type with 1 instance, 1 new request; empty
// snapshot. Links: s0-s1 $0.10, s0-u0 $0.09, s1-u0 $0.115.
inline ProblemInstance tiny_instance() {
  ProblemInstance in;
  in.network = uniform_network(2, 1);
  auto& net = in.network;
  net.link_cost.set_symmetric(0, 2, 90'000);
  net.link_cost.set_symmetric(1, 2, 115'000);
  in.catalog.types.push_back(standard_type("mixer", 2));
  in.requests.push_back(new_request(net, "r0", 0, {0}));
  return in;
}

// Plan serving request f entirely on server s, chain instance 0 of every
// type, routes derived.
inline PlacementPlan colocated_plan(const ProblemInstance& in, int s) {
  auto plan = PlacementPlan::zeros(in);
  for (int f = 0; f < in.num_requests(); ++f) {
    plan.content_server[f][s] = 1;
    for (int k : in.requests[f].chain) {
      plan.deployment[k][0][s] = 1;
      plan.assignment[f][k][0][s] = 1;
    }
  }
  plan.routes = derive_routes(in, plan.content_server, plan.assignment);
  return plan;
}

struct RandomShape {
  int min_servers = 2, max_servers = 3;
  int min_requests = 1, max_requests = 2;
  int min_types = 1, max_types = 2;
  int max_instances = 2;
};

// Small random instance: random costs and capacities (sometimes tight),
// random snapshot with existing requests routed by a random feasible-ish
// plan. Always passes validate_instance.
inline ProblemInstance random_instance(std::mt19937_64& rng, const RandomShape& shape = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int servers = pick(shape.min_servers, shape.max_servers);
  const int users = pick(1, 2);
  const int types = pick(shape.min_types, shape.max_types);
  const int requests = pick(shape.min_requests, shape.max_requests);

  ProblemInstance in;
  in.network = uniform_network(servers, users);
  auto& net = in.network;
  const int n = net.num_nodes();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      net.link_cost.set_symmetric(i, j, 10'000 * pick(0, 12));
      net.link_delay.set_symmetric(i, j, 1'000 * pick(1, 50));
      net.bandwidth.set_symmetric(i, j, pick(1, 3));
    }
  for (int s = 0; s < servers; ++s) {
    net.server_capacity[s] = pick(2, 6);
    net.server_unit_cost[s] = kDollar * pick(1, 6);
  }
  for (int k = 0; k < types; ++k) {
    auto t = standard_type("t" + std::to_string(k), servers, pick(1, shape.max_instances));
    t.license_cost = kDollar * pick(0, 40);
    t.capacity = pick(1, 3);
    t.resource_req = pick(1, 3);
    for (int s = 0; s < servers; ++s) t.processing_delay[s] = 1'000 * pick(0, 30);
    for (int s = 0; s < servers; ++s)
      for (int u = 0; u < servers; ++u)
        if (s != u) t.migration_cost(s, u) = 100'000 * pick(0, 60);
    in.catalog.types.push_back(std::move(t));
  }
  for (int f = 0; f < requests; ++f) {
    std::vector<int> order(types);
    for (int k = 0; k < types; ++k) order[k] = k;
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(pick(1, types));
    auto r = new_request(net, "r" + std::to_string(f), pick(0, users - 1), order, 1'000 * pick(30, 250));
    for (int s = 0; s < servers; ++s) r.candidate_servers[s] = static_cast<std::uint8_t>(pick(0, 1));
    r.candidate_servers[pick(0, servers - 1)] = 1;
    r.traffic = pick(0, 4) == 0 ? 2 : 1;
    in.requests.push_back(std::move(r));
  }
  // Snapshot: each instance deployed on a random server with probability 1/2.
  for (int k = 0; k < types; ++k)
    for (int i = 0; i < in.catalog.types[k].instances; ++i)
      if (pick(0, 1)) in.snapshot.deployed.push_back({k, i, pick(0, servers - 1)});
  // Existing requests get an arbitrary (symmetric) current route.
  for (auto& r : in.requests) {
    if (pick(0, 1) == 0) continue;
    r.status = RequestStatus::kExisting;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        if (pick(0, 3) == 0 && (i != j || net.is_server(i))) r.current_route.set_symmetric(i, j, 1);
  }
  if (pick(0, 4) == 0) in.usage_threshold = 0.5 + 0.1 * pick(0, 5);
  return in;
}

}  // namespace fixtures

#endif  // CHAINPLACE_TESTS_FIXTURES_HPP
