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

void expect_sound(const ProblemInstance& in, const SolveResult& r, const SolveOptions& o = {}) {
  if (!r.plan) return;
  const auto report = check_feasibility(in, *r.plan, o.formulation);
  EXPECT_TRUE(report.feasible()) << report.summary();
  EXPECT_EQ(r.breakdown, total_objective(in, *r.plan, o.formulation));
  for (int f = 0; f < in.num_requests(); ++f)
    EXPECT_LE(service_delay(in, *r.plan, f), in.requests[f].delay_budget);
  if (o.no_reuse) {
    const auto model = build_ilp(in, {o.formulation, true});
    EXPECT_TRUE(model.violated_rows(evaluate_plan(model, *r.plan)).empty());
  }
}

}  // namespace

TEST(DeriveRoutes, ColocatedChainHasSelfLinksAndUserLink) {
  auto in = tiny_instance();
  in.catalog.types.push_back(fixtures::standard_type("b", 2));
  in.requests[0].chain = {0, 1};
  auto plan = PlacementPlan::zeros(in);
  plan.content_server[0][1] = 1;
  plan.assignment[0][0][0][1] = plan.assignment[0][1][0][1] = 1;
  const auto routes = derive_routes(in, plan.content_server, plan.assignment);
  BinaryMatrix expected(3, 0);
  expected(1, 1) = 1;
  expected.set_symmetric(1, 2, 1);
  EXPECT_EQ(routes[0], expected);
}

TEST(DeriveRoutes, ThreeHostsFromContentServer) {
  ProblemInstance in;
  in.network = fixtures::uniform_network(3, 1);
  in.catalog.types = {fixtures::standard_type("a", 3), fixtures::standard_type("b", 3),
                      fixtures::standard_type("c", 3)};
  in.requests.push_back(fixtures::new_request(in.network, "r0", 0, {0, 1, 2}));
  auto plan = PlacementPlan::zeros(in);
  plan.content_server[0][0] = 1;
  for (int k = 0; k < 3; ++k) plan.assignment[0][k][0][k] = 1;
  const auto routes = derive_routes(in, plan.content_server, plan.assignment);
  BinaryMatrix expected(4, 0);
  expected(0, 0) = 1;
  expected.set_symmetric(0, 1, 1);
  expected.set_symmetric(1, 2, 1);
  expected.set_symmetric(2, 3, 1);
  EXPECT_EQ(routes[0], expected);

  // Minimality: dropping any real link breaks a link-assignment row.
  for (auto [i, j] : {std::pair{0, 1}, {1, 2}, {2, 3}}) {
    for (int k = 0; k < 3; ++k) plan.deployment[k][0][k] = 1;
    plan.routes = routes;
    plan.routes[0].set_symmetric(i, j, 0);
    const auto report = check_feasibility(in, plan);
    EXPECT_TRUE(report.violates("15") || report.violates("16") || report.violates("17"));
  }
}

TEST(SolveExact, TinyInstancePicksCheapestRoute) {
  // L + R rho + $0.09 user link from s0.
  const auto in = tiny_instance();
  const auto r = solve_exact(in);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.breakdown.total, 100 * kDollar + 10 * kDollar + 90'000);
  EXPECT_EQ(*r.plan, colocated_plan(in, 0));
  expect_sound(in, r);
  const auto oracle = brute_force(in);
  EXPECT_EQ(oracle.breakdown, r.breakdown);
  EXPECT_EQ(oracle.plan, r.plan);
}

TEST(SolveExact, FlippingCostsFlipsTheChoice) {
  auto in = tiny_instance();
  in.requests[0].candidate_servers = {1, 1};
  EXPECT_EQ(brute_force(in).plan->content_server_of(0), 0);
  in.network.link_cost.set_symmetric(0, 2, 115'000);
  in.network.link_cost.set_symmetric(1, 2, 90'000);
  EXPECT_EQ(brute_force(in).plan->content_server_of(0), 1);
  EXPECT_EQ(solve_exact(in).plan->content_server_of(0), 1);
}

TEST(SolveExact, OptimalSnapshotIsKept) {
  auto in = tiny_instance();
  in.snapshot.deployed = {{0, 0, 0}};
  in.requests[0].status = RequestStatus::kExisting;
  in.requests[0].current_route = colocated_plan(in, 0).routes[0];
  const auto r = solve_exact(in);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.breakdown.total, 0);
  EXPECT_EQ(r.plan->deployment, snapshot_as_plan(in).deployment);
  EXPECT_EQ(r.plan->routes, snapshot_as_plan(in).routes);
  EXPECT_EQ(brute_force(in).plan, r.plan);
}

TEST(SolveExact, UnreachableDelayBudgetIsInfeasible) {
  auto in = tiny_instance();
  in.requests[0].delay_budget = 20'000;  // processing alone takes 20 ms, links add more
  EXPECT_EQ(solve_exact(in).status, SolveStatus::kInfeasible);
  EXPECT_EQ(brute_force(in).status, SolveStatus::kInfeasible);
}

TEST(SolveExact, CapacityShortageIsInfeasible) {
  auto in = tiny_instance();
  in.network.server_capacity = {1, 1};
  EXPECT_EQ(solve_exact(in).status, SolveStatus::kInfeasible);
}

TEST(SolveExact, RejectsBadOptions) {
  SolveOptions o;
  o.time_limit_seconds = 0;
  EXPECT_THROW(solve_exact(tiny_instance(), o), Error);
}

TEST(BruteForce, EmptyRequestSetKeepsSnapshot) {
  auto in = tiny_instance();
  in.requests.clear();
  in.snapshot.deployed = {{0, 0, 1}};
  for (const auto& r : {brute_force(in), solve_exact(in)}) {
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    EXPECT_EQ(r.breakdown.total, 0);
    EXPECT_EQ(*r.plan, snapshot_as_plan(in));
  }
}

TEST(BruteForce, RefusesLargeSpaces) {
  SolveOptions o;
  o.enumeration_cap = 2;
  try {
    brute_force(tiny_instance(), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(Solvers, AgreeOnRandomInstances) {
  std::mt19937_64 rng(21);
  int feasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto in = fixtures::random_instance(rng);
    SolveOptions o;
    o.no_reuse = trial % 3 == 0;
    o.formulation.clamp_instantiation = trial % 4 == 1;
    o.formulation.literal_deployment_scope = trial % 5 == 2;
    o.formulation.routing_domain = trial % 7 == 3 ? RoutingDomain::kServers : RoutingDomain::kAllNodes;
    const auto exact = solve_exact(in, o);
    const auto oracle = brute_force(in, o);
    ASSERT_EQ(exact.status, oracle.status) << "trial " << trial;
    EXPECT_EQ(exact.breakdown, oracle.breakdown) << "trial " << trial;
    EXPECT_EQ(exact.plan, oracle.plan) << "trial " << trial;
    expect_sound(in, exact, o);
    feasible += exact.status == SolveStatus::kOptimal;
  }
  EXPECT_GT(feasible, 50);
}

TEST(Solvers, NoReuseNeverHelps) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto in = fixtures::random_instance(rng);
    const auto online = solve_exact(in);
    SolveOptions o;
    o.no_reuse = true;
    const auto strict = solve_exact(in, o);
    if (strict.status == SolveStatus::kOptimal) {
      ASSERT_EQ(online.status, SolveStatus::kOptimal);
      EXPECT_LE(online.breakdown.total, strict.breakdown.total);
    }
  }
}

TEST(Solvers, WorkerCountDoesNotChangeTheAnswer) {
  std::mt19937_64 rng(23);
  fixtures::RandomShape shape;
  shape.max_requests = 3;
  for (int trial = 0; trial < 40; ++trial) {
    const auto in = fixtures::random_instance(rng, shape);
    SolveOptions one;
    SolveOptions four;
    four.workers = 4;
    const auto a = solve_exact(in, one);
    const auto b = solve_exact(in, four);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.plan, b.plan);
    EXPECT_EQ(a.breakdown, b.breakdown);
  }
}

TEST(Solvers, TaskBoundIsAdmissible) {
  // The root bound of every content-server assignment never exceeds the
  // best completion found by exhaustive search over that assignment.
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 60; ++trial) {
    const auto in = fixtures::random_instance(rng);
    const SolveOptions o;
    const auto sp = detail::make_search_plan(in, o);
    detail::SearchShared shared;
    detail::Searcher searcher(sp, shared);
    for (const auto& gamma : detail::enumerate_tasks(sp)) {
      auto fixed = in;
      for (int f = 0; f < in.num_requests(); ++f) {
        fixed.requests[f].candidate_servers.assign(in.network.num_servers(), 0);
        fixed.requests[f].candidate_servers[gamma[f]] = 1;
      }
      const auto best = brute_force(fixed, o);
      const auto bound = searcher.task_bound(gamma);
      if (best.status == SolveStatus::kOptimal) {
        EXPECT_LE(bound, best.breakdown.total);
      }
    }
  }
}

TEST(Solvers, TimeLimitReturnsFeasibleIncumbentOrNothing) {
  const auto in = generate(reduced_scenario(1));
  SolveOptions o;
  o.time_limit_seconds = 1e-9;
  const auto r = solve_exact(in, o);
  EXPECT_NE(r.status, SolveStatus::kInfeasible);
  if (r.plan) {
    expect_sound(in, r);
    EXPECT_GE(r.gap, 0);
  }
}
