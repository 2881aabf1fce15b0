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

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace chainplace;
using fixtures::colocated_plan;
using fixtures::kDollar;
using fixtures::tiny_instance;

namespace {

// One server, one user, link cost $0.10, one request, one type.
ProblemInstance single_server() {
  ProblemInstance in;
  in.network = fixtures::uniform_network(1, 1);
  in.catalog.types.push_back(fixtures::standard_type("mixer", 1));
  in.requests.push_back(fixtures::new_request(in.network, "r0", 0, {0}));
  return in;
}

// Random plan with arbitrary (possibly infeasible) binary values.
PlacementPlan random_plan(const ProblemInstance& in, std::mt19937_64& rng) {
  auto plan = PlacementPlan::zeros(in);
  auto coin = [&] { return static_cast<std::uint8_t>(rng() % 2); };
  for (auto& row : plan.content_server)
    for (auto& b : row) b = coin();
  for (auto& k : plan.deployment)
    for (auto& row : k)
      if (coin()) row[rng() % row.size()] = 1;
  for (auto& f : plan.assignment)
    for (auto& k : f)
      for (auto& row : k)
        for (auto& b : row) b = coin();
  for (auto& route : plan.routes)
    for (std::size_t i = 0; i < route.size(); ++i)
      for (std::size_t j = i; j < route.size(); ++j) route.set_symmetric(i, j, coin());
  return plan;
}

}  // namespace

TEST(FormatMoney, SixDecimals) {
  EXPECT_EQ(format_money(-25'000), "-0.025000");
  EXPECT_EQ(format_money(110'100'000), "110.100000");
  EXPECT_EQ(format_money(0), "0.000000");
  EXPECT_EQ(format_money(-3 * kDollar), "-3.000000");
}

TEST(HostingDelta, Examples) {
  auto in = single_server();
  EXPECT_EQ(hosting_delta(in, snapshot_as_plan(in)), 0);
  // R = 2, rho = $5 -> $10.
  EXPECT_EQ(hosting_delta(in, colocated_plan(in, 0)), 10 * kDollar);
  in.snapshot.deployed = {{0, 0, 0}};
  EXPECT_EQ(hosting_delta(in, PlacementPlan::zeros(in)), -10 * kDollar);
}

TEST(MigrationCost, Examples) {
  auto in = tiny_instance();
  EXPECT_EQ(migration_cost(in, colocated_plan(in, 1)), 0);  // empty snapshot
  in.snapshot.deployed = {{0, 0, 0}};
  EXPECT_EQ(migration_cost(in, colocated_plan(in, 0)), 0);
  // 44 units over a $0.10 link.
  EXPECT_EQ(migration_cost(in, colocated_plan(in, 1)), 4'400'000);
}

TEST(InstantiationCost, Examples) {
  auto in = tiny_instance();
  EXPECT_EQ(instantiation_cost(in, colocated_plan(in, 0)), 100 * kDollar);
  in.snapshot.deployed = {{0, 0, 0}};
  EXPECT_EQ(instantiation_cost(in, colocated_plan(in, 1)), 0);
  EXPECT_EQ(instantiation_cost(in, snapshot_as_plan(in)), 0);
  EXPECT_EQ(instantiation_cost(in, PlacementPlan::zeros(in)), -100 * kDollar);
  FormulationOptions clamp;
  clamp.clamp_instantiation = true;
  EXPECT_EQ(instantiation_cost(in, PlacementPlan::zeros(in), clamp), 0);
}

TEST(RoutingDelta, Examples) {
  auto in = tiny_instance();
  in.network.link_cost = SquareMatrix<Money>(3, 100'000);
  for (int i = 0; i < 3; ++i) in.network.link_cost(i, i) = 0;
  // New request with two $0.10 links.
  auto plan = PlacementPlan::zeros(in);
  plan.routes[0].set_symmetric(0, 1, 1);
  plan.routes[0].set_symmetric(1, 2, 1);
  plan.routes[0].set_symmetric(0, 0, 1);  // self-links are free
  EXPECT_EQ(routing_delta(in, plan), 200'000);

  // Existing request moved from a $0.115 link to a $0.09 link.
  auto moved = tiny_instance();
  moved.requests[0].status = RequestStatus::kExisting;
  moved.requests[0].current_route.set_symmetric(1, 2, 1);
  auto after = PlacementPlan::zeros(moved);
  after.routes[0].set_symmetric(0, 2, 1);
  EXPECT_EQ(routing_delta(moved, after), -25'000);
  EXPECT_EQ(routing_delta(moved, snapshot_as_plan(moved)), 0);
}

TEST(RoutingDelta, ServerDomainSkipsUserLinks) {
  const auto in = tiny_instance();
  const auto plan = colocated_plan(in, 0);
  FormulationOptions servers_only;
  servers_only.routing_domain = RoutingDomain::kServers;
  EXPECT_EQ(routing_delta(in, plan), 90'000);
  EXPECT_EQ(routing_delta(in, plan, servers_only), 0);
}

TEST(TotalObjective, SnapshotPlanIsZero) {
  auto in = tiny_instance();
  in.snapshot.deployed = {{0, 0, 1}};
  in.requests[0].status = RequestStatus::kExisting;
  in.requests[0].current_route.set_symmetric(1, 2, 1);
  EXPECT_EQ(total_objective(in, snapshot_as_plan(in)), CostBreakdown{});
}

TEST(TotalObjective, NewInstanceAndOneLink) {
  // $10 hosting + $100 license + $0.10 link.
  const auto in = single_server();
  const auto b = total_objective(in, colocated_plan(in, 0));
  EXPECT_EQ(b.hosting_delta, 10'000'000);
  EXPECT_EQ(b.instantiation, 100'000'000);
  EXPECT_EQ(b.routing_delta, 100'000);
  EXPECT_EQ(b.migration, 0);
  EXPECT_EQ(b.total, 110'100'000);
}

TEST(ServiceDelay, Examples) {
  // Three 10 ms hops and two 20 ms VNFs.
  ProblemInstance in;
  in.network = fixtures::uniform_network(3, 1);
  in.catalog.types = {fixtures::standard_type("a", 3), fixtures::standard_type("b", 3)};
  in.requests.push_back(fixtures::new_request(in.network, "r0", 0, {0, 1}));
  auto plan = PlacementPlan::zeros(in);
  plan.content_server[0][0] = 1;
  plan.deployment[0][0][1] = plan.assignment[0][0][0][1] = 1;
  plan.deployment[1][0][2] = plan.assignment[0][1][0][2] = 1;
  plan.routes = derive_routes(in, plan.content_server, plan.assignment);
  EXPECT_EQ(service_delay(in, plan, 0), 70'000);

  // One VNF on the content server, 4 ms user link.
  auto colo = tiny_instance();
  colo.network.link_delay.set_symmetric(0, 2, 4'000);
  EXPECT_EQ(service_delay(colo, colocated_plan(colo, 0), 0), 24'000);

  colo.requests[0].traffic = 0;
  EXPECT_EQ(service_delay(colo, colocated_plan(colo, 0), 0), 0);
}

TEST(ServiceDelay, RequiresCompleteAssignment) {
  const auto in = tiny_instance();
  try {
    service_delay(in, PlacementPlan::zeros(in), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnassignedChain);
  }
}

TEST(CostProperties, HoldOnRandomPlans) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const auto in = fixtures::random_instance(rng);
    const auto plan = random_plan(in, rng);
    for (bool clamp : {false, true}) {
      FormulationOptions o;
      o.clamp_instantiation = clamp;
      const auto b = total_objective(in, plan, o);
      EXPECT_EQ(b.total, hosting_delta(in, plan) + migration_cost(in, plan) + instantiation_cost(in, plan, o) +
                             routing_delta(in, plan, o));
      EXPECT_GE(b.migration, 0);
    }

    // No-change zero: tau = snapshot, P = current, arbitrary gamma/lambda.
    auto same = snapshot_as_plan(in);
    same.content_server = plan.content_server;
    same.assignment = plan.assignment;
    EXPECT_EQ(total_objective(in, same), CostBreakdown{});

    // Relocating snapshot instances never charges licenses.
    auto moved = snapshot_as_plan(in);
    for (const auto& p : in.snapshot.deployed) {
      moved.deployment[p.type][p.instance][p.server] = 0;
      moved.deployment[p.type][p.instance][rng() % in.network.num_servers()] = 1;
    }
    EXPECT_EQ(instantiation_cost(in, moved), 0);

    // Adding a link never lowers the delay.
    for (int f = 0; f < in.num_requests(); ++f) {
      const auto before = detail::request_delay(in, plan, f);
      auto more = plan;
      const int n = in.network.num_nodes();
      more.routes[f].set_symmetric(rng() % n, rng() % n, 1);
      EXPECT_GE(detail::request_delay(in, more, f), before);
    }
  }
}
