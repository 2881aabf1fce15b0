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

// Exact solvers for the placement problem.
//
// solve_exact is a depth-first branch-and-bound over the structural
// decisions in canonical variable order: content server per request, then
// the server (or none) of every instance, then the instance serving each
// chain position of each request. Links are never branched on; the forced
// links of a complete assignment are optimal because every link carries a
// non-negative cost, delay and load.
//
// Values inside each decision block are visited so that complete
// assignments come out in increasing lexicographic order of the canonical
// 0/1 vector. The first optimum found is therefore the lexicographically
// smallest one, which makes ties deterministic without comparing vectors.
//
// brute_force enumerates the same decision space exhaustively and scores
// each candidate with check_feasibility and total_objective; it shares no
// search or cost code with solve_exact.

#ifndef CHAINPLACE_SOLVER_HPP
#define CHAINPLACE_SOLVER_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "chainplace/costs.hpp"
#include "chainplace/ilp.hpp"
#include "chainplace/model.hpp"

namespace chainplace {

enum class SolveStatus { kOptimal, kInfeasible, kTimeLimit };

inline std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

struct SolveOptions {
  double time_limit_seconds = 60.0;
  bool no_reuse = false;
  int workers = 1;
  FormulationOptions formulation;
  // brute_force refuses instances whose decision space is larger.
  std::uint64_t enumeration_cap = 10'000'000;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t incumbent_updates = 0;
  double wall_seconds = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<PlacementPlan> plan;
  CostBreakdown breakdown;
  // Incumbent minus the best proven lower bound; zero when optimal.
  Money gap = 0;
  SolveStats stats;
};

// Minimal link set of each request: content server to first host, between
// consecutive hosts, last host to the end user. Co-located hops become
// self-links.
inline std::vector<BinaryMatrix> derive_routes(const ProblemInstance& instance,
                                               const std::vector<Bits>& content_server,
                                               const std::vector<std::vector<std::vector<Bits>>>& assignment) {
  const auto& net = instance.network;
  const int servers = net.num_servers();
  std::vector<BinaryMatrix> routes(instance.requests.size(), BinaryMatrix(net.num_nodes(), 0));
  auto hosts_of = [&](int f, int k) {
    std::vector<int> hosts;
    for (int s = 0; s < servers; ++s)
      for (const auto& row : assignment[f][k])
        if (row[s]) {
          hosts.push_back(s);
          break;
        }
    return hosts;
  };
  for (int f = 0; f < instance.num_requests(); ++f) {
    const auto& r = instance.requests[f];
    auto& route = routes[f];
    std::vector<int> prev;
    for (int s = 0; s < servers; ++s)
      if (content_server[f][s]) prev.push_back(s);
    for (int k : r.chain) {
      const auto hosts = hosts_of(f, k);
      for (int a : prev)
        for (int b : hosts) route.set_symmetric(a, b, 1);
      prev = hosts;
    }
    for (int s : prev) route.set_symmetric(s, net.user_node(r.user), 1);
  }
  return routes;
}

namespace detail {

inline constexpr Money kInfiniteMoney = std::numeric_limits<Money>::max() / 4;

// One deployment decision: instance `instance` of type `type`.
struct Slot {
  int type = 0;
  int instance = 0;
  int snapshot_server = -1;
  int previous_fresh = -1;  // ordered activation among non-snapshot instances
  std::vector<Money> cost;  // per server
};

// A way to serve request f once deployments are fixed.
struct Combo {
  std::vector<int> slots;                  // per chain position
  std::vector<int> hosts;                  // per chain position
  std::vector<std::pair<int, int>> links;  // distinct non-self links, i < j
  std::vector<int> key;                    // ascending λ positions in the request block
  Money cost = 0;
};

// Immutable data shared by all search workers.
struct SearchPlan {
  const ProblemInstance* instance = nullptr;
  SolveOptions options;
  int requests = 0;
  int servers = 0;
  int nodes = 0;
  Money constant = 0;
  std::vector<Slot> slots;
  std::vector<std::vector<int>> slot_of;      // [k][i] -> slot or -1
  std::vector<int> type_first_slot;           // -1 when inactive
  std::vector<int> type_last_slot;
  std::vector<bool> needs_any;                // type must be deployed somewhere
  std::vector<bool> needs_fresh;              // new requests under no-reuse
  std::vector<Money> suffix_min_any;          // min cost over slots >= n of the same type
  std::vector<Money> suffix_min_fresh;
  std::vector<Units> server_limit;            // usable capacity net of frozen instances
  std::vector<std::vector<int>> candidates;   // per request, descending server
  std::vector<std::vector<Money>> route_floor;  // [f][content server]
  std::vector<Money> route_floor_any;
  std::vector<std::vector<int>> lambda_offset;  // [f][k] offset inside a server stripe
  std::vector<int> lambda_stripe;               // [f] Σ_{k∈V^f} |I_k|

  Money link_charge(int i, int j) const {
    return charges_routing(instance->network, i, j, options.formulation.routing_domain)
               ? instance->network.link_cost(i, j)
               : 0;
  }
};

inline SearchPlan make_search_plan(const ProblemInstance& instance, const SolveOptions& options) {
  SearchPlan sp;
  sp.instance = &instance;
  sp.options = options;
  const auto& net = instance.network;
  const auto& types = instance.catalog.types;
  const auto& fo = options.formulation;
  sp.requests = instance.num_requests();
  sp.servers = net.num_servers();
  sp.nodes = net.num_nodes();
  const int K = instance.catalog.size();

  sp.server_limit.resize(sp.servers);
  for (int s = 0; s < sp.servers; ++s) sp.server_limit[s] = instance.usable(net.server_capacity[s]);

  sp.slot_of.resize(K);
  sp.type_first_slot.assign(K, -1);
  sp.type_last_slot.assign(K, -1);
  sp.needs_any.assign(K, false);
  sp.needs_fresh.assign(K, false);
  for (int k = 0; k < K; ++k) {
    sp.slot_of[k].assign(types[k].instances, -1);
    if (!instance.type_active(k, fo)) continue;
    sp.needs_any[k] = true;
    int previous_fresh = -1;
    for (int i = 0; i < types[k].instances; ++i) {
      Slot slot;
      slot.type = k;
      slot.instance = i;
      slot.snapshot_server = instance.snapshot.server_of(k, i);
      const bool held = slot.snapshot_server >= 0;
      slot.cost.resize(sp.servers);
      for (int s = 0; s < sp.servers; ++s) {
        Money c = types[k].resource_req * net.server_unit_cost[s];
        if (!fo.clamp_instantiation || !held) c += types[k].license_cost;
        if (held) c += types[k].migration_cost(slot.snapshot_server, s);
        slot.cost[s] = c;
      }
      const int id = static_cast<int>(sp.slots.size());
      if (!held) {
        slot.previous_fresh = previous_fresh;
        previous_fresh = id;
      }
      sp.slot_of[k][i] = id;
      if (sp.type_first_slot[k] < 0) sp.type_first_slot[k] = id;
      sp.type_last_slot[k] = id;
      sp.slots.push_back(std::move(slot));
    }
  }
  for (const auto& r : instance.requests)
    if (options.no_reuse && r.status == RequestStatus::kNew)
      for (int k : r.chain) sp.needs_fresh[k] = true;

  const auto n_slots = sp.slots.size();
  sp.suffix_min_any.assign(n_slots + 1, kInfiniteMoney);
  sp.suffix_min_fresh.assign(n_slots + 1, kInfiniteMoney);
  for (std::size_t n = n_slots; n-- > 0;) {
    const auto& slot = sp.slots[n];
    const Money best = *std::min_element(slot.cost.begin(), slot.cost.end());
    const bool same_type_next = n + 1 < n_slots && sp.slots[n + 1].type == slot.type;
    const Money next_any = same_type_next ? sp.suffix_min_any[n + 1] : kInfiniteMoney;
    const Money next_fresh = same_type_next ? sp.suffix_min_fresh[n + 1] : kInfiniteMoney;
    sp.suffix_min_any[n] = std::min(best, next_any);
    sp.suffix_min_fresh[n] = slot.snapshot_server < 0 ? std::min(best, next_fresh) : next_fresh;
  }

  for (const auto& p : instance.snapshot.deployed) {
    if (instance.type_active(p.type, fo)) {
      sp.constant -= types[p.type].resource_req * net.server_unit_cost[p.server];
      if (!fo.clamp_instantiation) sp.constant -= types[p.type].license_cost;
    } else {
      sp.server_limit[p.server] -= types[p.type].resource_req;
    }
  }
  for (const auto& r : instance.requests)
    for (int i = 0; i < sp.nodes; ++i)
      for (int j = i + 1; j < sp.nodes; ++j)
        if (r.current_route(i, j)) sp.constant -= sp.link_charge(i, j) * r.traffic;

  sp.candidates.resize(sp.requests);
  sp.route_floor.resize(sp.requests);
  sp.route_floor_any.resize(sp.requests);
  sp.lambda_offset.resize(sp.requests);
  sp.lambda_stripe.resize(sp.requests);
  for (int f = 0; f < sp.requests; ++f) {
    const auto& r = instance.requests[f];
    for (int s = sp.servers; s-- > 0;)
      if (r.candidate_servers[s]) sp.candidates[f].push_back(s);
    const int user = net.user_node(r.user);
    sp.route_floor[f].assign(sp.servers, 0);
    sp.route_floor_any[f] = kInfiniteMoney;
    for (int cs = 0; cs < sp.servers; ++cs) {
      Money leave = kInfiniteMoney;
      for (int t = 0; t < sp.servers; ++t)
        if (t != cs) leave = std::min(leave, sp.link_charge(cs, t));
      Money best = kInfiniteMoney;
      for (int s = 0; s < sp.servers; ++s) {
        const Money first = s == cs ? 0 : leave;
        if (first >= kInfiniteMoney) continue;
        best = std::min(best, first + sp.link_charge(s, user));
      }
      sp.route_floor[f][cs] = best * r.traffic;
      if (r.candidate_servers[cs]) sp.route_floor_any[f] = std::min(sp.route_floor_any[f], sp.route_floor[f][cs]);
    }
    sp.lambda_offset[f].assign(K, -1);
    int stripe = 0;
    for (int k = 0; k < K; ++k)
      if (r.requires_type(k)) {
        sp.lambda_offset[f][k] = stripe;
        stripe += types[k].instances;
      }
    sp.lambda_stripe[f] = stripe;
  }
  return sp;
}

struct Incumbent {
  Money objective = kInfiniteMoney;
  std::size_t task = std::numeric_limits<std::size_t>::max();
  std::vector<int> gamma;
  std::vector<int> place;
  std::vector<std::vector<int>> choice;  // [f] slot per chain position

  bool found() const { return objective < kInfiniteMoney; }
};

// State shared between workers.
struct SearchShared {
  std::mutex mutex;
  Incumbent best;
  std::atomic<bool> stop{false};
  std::atomic<std::size_t> next_task{0};
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t updates = 0;
  Money abandoned_bound = kInfiniteMoney;
  std::chrono::steady_clock::time_point deadline;
};

class Searcher {
 public:
  Searcher(const SearchPlan& sp, SearchShared& shared) : sp_(sp), shared_(shared) {
    const auto& in = *sp.instance;
    gamma_.assign(sp.requests, -1);
    place_.assign(sp.slots.size(), -1);
    load_.assign(sp.servers, 0);
    deployed_.assign(in.catalog.size(), 0);
    fresh_.assign(in.catalog.size(), 0);
    slot_load_.assign(sp.slots.size(), 0);
    link_load_.assign(static_cast<std::size_t>(sp.nodes) * sp.nodes, 0);
    combos_.resize(sp.requests);
    combo_floor_.assign(sp.requests, 0);
    choice_.assign(sp.requests, -1);
  }

  // Lower bound of a task root, used for tasks the time limit never reached.
  Money task_bound(const std::vector<int>& gamma) {
    gamma_ = gamma;
    return deployment_bound(0);
  }

  void run(std::size_t task, const std::vector<int>& gamma) {
    task_ = task;
    gamma_ = gamma;
    refresh();
    search_slot(0);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const ProblemInstance& in() const { return *sp_.instance; }

  // Refreshes the cached incumbent; any consistent (objective, task) pair
  // from a real solution is valid for pruning.
  void refresh() {
    std::lock_guard<std::mutex> lock(shared_.mutex);
    best_objective_ = shared_.best.objective;
    best_task_ = shared_.best.task;
  }

  bool prunable(Money bound) const {
    if (bound >= kInfiniteMoney) return true;
    if (bound > best_objective_) return true;
    // Equal bound: our leaves are lex-greater only if the incumbent came
    // from this task or an earlier one.
    return bound == best_objective_ && best_task_ <= task_;
  }

  bool tick(Money bound) {
    ++nodes_;
    if ((nodes_ & 255) == 0) {
      refresh();
      if (std::chrono::steady_clock::now() >= shared_.deadline) shared_.stop = true;
    }
    if (shared_.stop) {
      abandon(bound);
      return false;
    }
    return true;
  }

  void abandon(Money bound) {
    std::lock_guard<std::mutex> lock(shared_.mutex);
    shared_.abandoned_bound = std::min(shared_.abandoned_bound, bound);
  }

  Money deployment_bound(std::size_t next_slot) const {
    Money bound = sp_.constant + committed_;
    for (int f = 0; f < sp_.requests; ++f) bound += sp_.route_floor[f][gamma_[f]];
    for (int k = 0; k < in().catalog.size(); ++k) {
      if (sp_.type_first_slot[k] < 0) continue;
      const auto last = static_cast<std::size_t>(sp_.type_last_slot[k]);
      const std::size_t from = std::max<std::size_t>(next_slot, sp_.type_first_slot[k]);
      const bool open = from <= last;
      if (sp_.needs_fresh[k] && fresh_[k] == 0) {
        if (!open) return kInfiniteMoney;
        bound += sp_.suffix_min_fresh[from];
      } else if (sp_.needs_any[k] && deployed_[k] == 0) {
        if (!open) return kInfiniteMoney;
        bound += sp_.suffix_min_any[from];
      }
    }
    return bound >= kInfiniteMoney ? kInfiniteMoney : bound;
  }

  void search_slot(std::size_t n) {
    const Money bound = deployment_bound(n);
    if (prunable(bound)) return;
    if (!tick(bound)) return;
    if (n == sp_.slots.size()) {
      enter_assignment();
      return;
    }
    const auto& slot = sp_.slots[n];
    const auto& type = in().catalog.types[slot.type];

    // Undeployed first, then servers in descending order: increasing
    // lexicographic order of the t[k][i][*] block.
    search_slot(n + 1);
    if (shared_.stop) return abandon(bound);
    if (slot.previous_fresh >= 0 && place_[slot.previous_fresh] < 0) return;
    for (int s = sp_.servers; s-- > 0;) {
      if (load_[s] + type.resource_req > sp_.server_limit[s]) continue;
      place_[n] = s;
      load_[s] += type.resource_req;
      ++deployed_[slot.type];
      if (slot.snapshot_server < 0) ++fresh_[slot.type];
      committed_ += slot.cost[s];
      search_slot(n + 1);
      committed_ -= slot.cost[s];
      if (slot.snapshot_server < 0) --fresh_[slot.type];
      --deployed_[slot.type];
      load_[s] -= type.resource_req;
      place_[n] = -1;
      if (shared_.stop) return abandon(bound);
    }
  }

  // Deployments are fixed: enumerate the ways to serve every request.
  void enter_assignment() {
    const auto& net = in().network;
    for (int f = 0; f < sp_.requests; ++f) {
      const auto& r = in().requests[f];
      auto& list = combos_[f];
      list.clear();
      const bool exclude_held = sp_.options.no_reuse && r.status == RequestStatus::kNew;
      std::vector<std::vector<int>> options(r.chain.size());
      for (std::size_t a = 0; a < r.chain.size(); ++a) {
        const int k = r.chain[a];
        for (int slot : sp_.slot_of[k]) {
          if (slot < 0 || place_[slot] < 0) continue;
          if (exclude_held && sp_.slots[slot].snapshot_server >= 0) continue;
          options[a].push_back(slot);
        }
        if (options[a].empty()) return;
      }
      std::vector<std::size_t> pick(r.chain.size(), 0);
      const int user = net.user_node(r.user);
      while (true) {
        Combo c;
        for (std::size_t a = 0; a < r.chain.size(); ++a) {
          const int slot = options[a][pick[a]];
          c.slots.push_back(slot);
          c.hosts.push_back(place_[slot]);
        }
        auto add_link = [&](int i, int j) {
          if (i == j) return;
          if (i > j) std::swap(i, j);
          if (std::find(c.links.begin(), c.links.end(), std::make_pair(i, j)) == c.links.end())
            c.links.emplace_back(i, j);
        };
        add_link(gamma_[f], c.hosts.front());
        for (std::size_t a = 0; a + 1 < c.hosts.size(); ++a) add_link(c.hosts[a], c.hosts[a + 1]);
        add_link(c.hosts.back(), user);
        Micros delay = 0;
        for (const auto& [i, j] : c.links) {
          delay += r.traffic * net.link_delay(i, j);
          c.cost += sp_.link_charge(i, j) * r.traffic;
        }
        for (std::size_t a = 0; a < r.chain.size(); ++a)
          delay += r.traffic * in().catalog.types[r.chain[a]].processing_delay[c.hosts[a]];
        if (delay <= r.delay_budget) {
          for (std::size_t a = 0; a < r.chain.size(); ++a) {
            const auto& slot = sp_.slots[c.slots[a]];
            c.key.push_back(c.hosts[a] * sp_.lambda_stripe[f] + sp_.lambda_offset[f][slot.type] + slot.instance);
          }
          std::sort(c.key.begin(), c.key.end());
          list.push_back(std::move(c));
        }
        std::size_t a = 0;
        while (a < pick.size() && ++pick[a] == options[a].size()) pick[a++] = 0;
        if (a == pick.size()) break;
      }
      if (list.empty()) return;
      // Reverse order of the sorted one-positions is increasing
      // lexicographic order of the l[f][*] block.
      std::sort(list.begin(), list.end(), [](const Combo& x, const Combo& y) { return x.key > y.key; });
      Money floor = kInfiniteMoney;
      for (const auto& c : list) floor = std::min(floor, c.cost);
      combo_floor_[f] = floor;
    }
    routed_ = 0;
    search_request(0);
  }

  Money assignment_bound(int next) const {
    Money bound = sp_.constant + committed_ + routed_;
    for (int f = next; f < sp_.requests; ++f) bound += combo_floor_[f];
    return bound;
  }

  void search_request(int f) {
    const Money bound = assignment_bound(f);
    if (prunable(bound)) return;
    if (!tick(bound)) return;
    if (f == sp_.requests) {
      offer(bound);
      return;
    }
    const auto& r = in().requests[f];
    const Units slot_limit_traffic = r.traffic;
    for (std::size_t n = 0; n < combos_[f].size(); ++n) {
      const auto& c = combos_[f][n];
      bool fits = true;
      for (int slot : c.slots)
        if (slot_load_[slot] + slot_limit_traffic > in().usable(in().catalog.types[sp_.slots[slot].type].capacity))
          fits = false;
      for (const auto& [i, j] : c.links)
        if (link_load_[i * sp_.nodes + j] + r.traffic > in().usable(in().network.bandwidth(i, j))) fits = false;
      if (!fits) continue;
      for (int slot : c.slots) slot_load_[slot] += r.traffic;
      for (const auto& [i, j] : c.links) link_load_[i * sp_.nodes + j] += r.traffic;
      routed_ += c.cost;
      choice_[f] = static_cast<int>(n);
      search_request(f + 1);
      choice_[f] = -1;
      routed_ -= c.cost;
      for (const auto& [i, j] : c.links) link_load_[i * sp_.nodes + j] -= r.traffic;
      for (int slot : c.slots) slot_load_[slot] -= r.traffic;
      if (shared_.stop) return abandon(bound);
    }
  }

  void offer(Money objective) {
    std::lock_guard<std::mutex> lock(shared_.mutex);
    auto& best = shared_.best;
    if (objective < best.objective || (objective == best.objective && task_ < best.task)) {
      best.objective = objective;
      best.task = task_;
      best.gamma = gamma_;
      best.place = place_;
      best.choice.assign(sp_.requests, {});
      for (int f = 0; f < sp_.requests; ++f) best.choice[f] = combos_[f][choice_[f]].slots;
      ++shared_.updates;
    }
    best_objective_ = best.objective;
    best_task_ = best.task;
  }

  const SearchPlan& sp_;
  SearchShared& shared_;
  std::size_t task_ = 0;
  Money best_objective_ = kInfiniteMoney;
  std::size_t best_task_ = std::numeric_limits<std::size_t>::max();
  std::uint64_t nodes_ = 0;

  std::vector<int> gamma_;
  std::vector<int> place_;
  std::vector<Units> load_;
  std::vector<int> deployed_;
  std::vector<int> fresh_;
  Money committed_ = 0;

  std::vector<std::vector<Combo>> combos_;
  std::vector<Money> combo_floor_;
  std::vector<int> choice_;
  std::vector<Units> slot_load_;
  std::vector<Units> link_load_;
  Money routed_ = 0;
};

// Complete content-server assignments in increasing lexicographic order.
inline std::vector<std::vector<int>> enumerate_tasks(const SearchPlan& sp) {
  std::vector<std::vector<int>> tasks;
  // Frozen instances alone overload a server: no plan exists.
  for (const Units limit : sp.server_limit)
    if (limit < 0) return tasks;
  std::vector<int> gamma(sp.requests, -1);
  auto rec = [&](auto&& self, int f) -> void {
    if (f == sp.requests) {
      tasks.push_back(gamma);
      return;
    }
    for (int s : sp.candidates[f]) {
      gamma[f] = s;
      self(self, f + 1);
    }
  };
  rec(rec, 0);
  return tasks;
}

inline PlacementPlan plan_from_decisions(const ProblemInstance& instance, const SearchPlan& sp,
                                         const std::vector<int>& gamma, const std::vector<int>& place,
                                         const std::vector<std::vector<int>>& choice) {
  PlacementPlan plan = PlacementPlan::zeros(instance);
  for (int f = 0; f < sp.requests; ++f) plan.content_server[f][gamma[f]] = 1;
  for (std::size_t n = 0; n < sp.slots.size(); ++n)
    if (place[n] >= 0) plan.deployment[sp.slots[n].type][sp.slots[n].instance][place[n]] = 1;
  for (const auto& p : instance.snapshot.deployed)
    if (!instance.type_active(p.type, sp.options.formulation))
      plan.deployment[p.type][p.instance][p.server] = 1;
  for (int f = 0; f < sp.requests; ++f)
    for (int slot : choice[f]) {
      const auto& s = sp.slots[slot];
      plan.assignment[f][s.type][s.instance][place[slot]] = 1;
    }
  plan.routes = derive_routes(instance, plan.content_server, plan.assignment);
  return plan;
}

}  // namespace detail

inline SolveResult solve_exact(const ProblemInstance& instance, const SolveOptions& options = {}) {
  require_valid(instance);
  if (!(options.time_limit_seconds > 0.0)) throw Error(ErrorCode::kInvalidArgument, "time limit must be positive");
  const auto start = std::chrono::steady_clock::now();
  const auto sp = detail::make_search_plan(instance, options);
  const auto tasks = detail::enumerate_tasks(sp);

  detail::SearchShared shared;
  shared.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                std::chrono::duration<double>(options.time_limit_seconds));
  const int workers = std::max(1, options.workers);
  auto work = [&] {
    detail::Searcher searcher(sp, shared);
    while (!shared.stop) {
      const std::size_t task = shared.next_task.fetch_add(1);
      if (task >= tasks.size()) break;
      searcher.run(task, tasks[task]);
    }
    shared.nodes += searcher.nodes();
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SolveResult result;
  result.stats.nodes = shared.nodes;
  result.stats.incumbent_updates = shared.updates;
  const bool timed_out = shared.stop;
  if (timed_out) {
    detail::Searcher bounder(sp, shared);
    for (std::size_t task = shared.next_task; task < tasks.size(); ++task)
      shared.abandoned_bound = std::min(shared.abandoned_bound, bounder.task_bound(tasks[task]));
  }
  if (shared.best.found()) {
    const auto& best = shared.best;
    result.plan = detail::plan_from_decisions(instance, sp, best.gamma, best.place, best.choice);
    result.breakdown = total_objective(instance, *result.plan, options.formulation);
    if (result.breakdown.total != best.objective)
      throw std::logic_error("search objective disagrees with cost model");
    result.status = timed_out ? SolveStatus::kTimeLimit : SolveStatus::kOptimal;
    if (timed_out) result.gap = best.objective - std::min(best.objective, shared.abandoned_bound);
  } else {
    result.status = timed_out ? SolveStatus::kTimeLimit : SolveStatus::kInfeasible;
  }
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// Number of (γ, τ, λ) combinations brute_force would enumerate, saturating
// at UINT64_MAX.
inline std::uint64_t brute_force_space(const ProblemInstance& instance, const SolveOptions& options = {}) {
  std::uint64_t product = 1;
  auto mul = [&](std::uint64_t factor) {
    if (factor == 0) {
      product = 0;
      return;
    }
    if (product > std::numeric_limits<std::uint64_t>::max() / factor)
      product = std::numeric_limits<std::uint64_t>::max();
    else
      product *= factor;
  };
  const auto& types = instance.catalog.types;
  for (const auto& r : instance.requests) {
    std::uint64_t candidates = 0;
    for (auto c : r.candidate_servers) candidates += c;
    mul(candidates);
    for (int k : r.chain) mul(static_cast<std::uint64_t>(types[k].instances));
  }
  for (int k = 0; k < instance.catalog.size(); ++k)
    if (instance.type_active(k, options.formulation))
      for (int i = 0; i < types[k].instances; ++i) mul(static_cast<std::uint64_t>(instance.network.num_servers()) + 1);
  return product;
}

// Exhaustive oracle over the same decision space as solve_exact (with the
// same ordered activation of non-snapshot instances). Ties are broken by
// comparing full canonical vectors.
inline SolveResult brute_force(const ProblemInstance& instance, const SolveOptions& options = {}) {
  require_valid(instance);
  const auto start = std::chrono::steady_clock::now();
  if (brute_force_space(instance, options) > options.enumeration_cap)
    throw Error(ErrorCode::kTooLarge, "decision space exceeds enumeration cap");

  const auto& net = instance.network;
  const auto& types = instance.catalog.types;
  const int S = net.num_servers();
  const int F = instance.num_requests();
  const auto model = build_ilp(instance, {options.formulation, options.no_reuse});

  struct Instance {
    int type, index;
    bool held;
  };
  std::vector<Instance> decided;
  for (int k = 0; k < instance.catalog.size(); ++k)
    if (instance.type_active(k, options.formulation))
      for (int i = 0; i < types[k].instances; ++i) decided.push_back({k, i, instance.snapshot.contains(k, i)});

  std::vector<std::pair<int, int>> positions;  // (request, chain type)
  for (int f = 0; f < F; ++f)
    for (int k : instance.requests[f].chain) positions.emplace_back(f, k);

  // Odometer digits: γ per request, server+1 per decided instance (0 =
  // undeployed), instance per chain position.
  std::vector<int> radix;
  std::vector<std::vector<int>> gamma_values(F);
  for (int f = 0; f < F; ++f) {
    for (int s = 0; s < S; ++s)
      if (instance.requests[f].candidate_servers[s]) gamma_values[f].push_back(s);
    radix.push_back(static_cast<int>(gamma_values[f].size()));
  }
  for (std::size_t n = 0; n < decided.size(); ++n) radix.push_back(S + 1);
  for (const auto& [f, k] : positions) radix.push_back(types[k].instances);

  SolveResult result;
  std::optional<Bits> best_key;
  Money best = 0;
  std::vector<int> digit(radix.size(), 0);
  const bool empty_space = std::any_of(radix.begin(), radix.end(), [](int r) { return r == 0; });
  std::uint64_t visited = 0;
  std::vector<int> place(decided.size());
  while (!empty_space) {
    ++visited;
    bool admissible = true;
    for (std::size_t n = 0; n < decided.size(); ++n) place[n] = digit[F + n] - 1;
    // Ordered activation among non-snapshot instances of a type.
    for (std::size_t n = 0; n < decided.size() && admissible; ++n) {
      if (decided[n].held || place[n] < 0) continue;
      for (std::size_t m = 0; m < n; ++m)
        if (decided[m].type == decided[n].type && !decided[m].held && place[m] < 0) admissible = false;
    }
    PlacementPlan plan;
    if (admissible) {
      plan = PlacementPlan::zeros(instance);
      for (int f = 0; f < F; ++f) plan.content_server[f][gamma_values[f][digit[f]]] = 1;
      for (std::size_t n = 0; n < decided.size(); ++n)
        if (place[n] >= 0) plan.deployment[decided[n].type][decided[n].index][place[n]] = 1;
      for (const auto& p : instance.snapshot.deployed)
        if (!instance.type_active(p.type, options.formulation)) plan.deployment[p.type][p.instance][p.server] = 1;
      for (std::size_t n = 0; n < positions.size() && admissible; ++n) {
        const auto [f, k] = positions[n];
        const int i = digit[F + decided.size() + n];
        const int s = plan.deployed_server(k, i);
        if (s < 0) admissible = false;
        else if (options.no_reuse && instance.requests[f].status == RequestStatus::kNew &&
                 instance.snapshot.contains(k, i))
          admissible = false;
        else
          plan.assignment[f][k][i][s] = 1;
      }
    }
    if (admissible) {
      plan.routes = derive_routes(instance, plan.content_server, plan.assignment);
      if (check_feasibility(instance, plan, options.formulation).feasible()) {
        const auto cost = total_objective(instance, plan, options.formulation);
        const bool better = !best_key || cost.total < best;
        const bool tie = best_key && cost.total == best;
        if (better || tie) {
          auto key = evaluate_plan(model, plan);
          if (better || key < *best_key) {
            best = cost.total;
            best_key = std::move(key);
            result.plan = std::move(plan);
            result.breakdown = cost;
            ++result.stats.incumbent_updates;
          }
        }
      }
    }
    std::size_t d = radix.size();
    while (d-- > 0) {
      if (++digit[d] < radix[d]) break;
      digit[d] = 0;
    }
    if (d == static_cast<std::size_t>(-1)) break;
  }
  result.stats.nodes = visited;
  result.status = result.plan ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace chainplace

#endif  // CHAINPLACE_SOLVER_HPP
