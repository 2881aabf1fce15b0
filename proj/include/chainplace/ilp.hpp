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

// Compiles a ProblemInstance into an explicit binary integer program and
// writes it out as fixed-format MPS or LP text.
//
// Variables come in a fixed canonical order:
//
//   g[f][s]              content server selection
//   t[k][i][s]           instance deployment
//   l[f][s][k][i]        instance assignment
//   p[f][i][j]           link assignment, i < j, plus p[f][s][s] self-links
//   x[k][i][s][t]        snapshot-on-s times deployed-on-t (migration)
//   m[f][s][t][i]        content server s times first VNF instance i on t
//   q[f][s][t][a][i][j]  chain position a on s times position a+1 on t
//
// The x/m/q families are McCormick linearizations of binary products; each
// carries its factor definition so imported solutions can be checked.
//
// Types outside the deployment scope get no variables: their snapshot
// instances stay where they are, so they only appear as a constant load in
// the server capacity rows.

#ifndef CHAINPLACE_ILP_HPP
#define CHAINPLACE_ILP_HPP

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chainplace/costs.hpp"
#include "chainplace/model.hpp"

namespace chainplace {

enum class VarKind : std::uint8_t {
  kContentServer,
  kDeployment,
  kAssignment,
  kRoute,
  kMigration,
  kContentLink,
  kChainLink,
};

struct Variable {
  VarKind kind;
  std::array<int, 6> idx{};  // in name order
  std::string name;
  // Auxiliaries only: value = constant_factor * v[factor_b] when factor_a
  // is -1, else v[factor_a] * v[factor_b].
  int factor_a = -1;
  int factor_b = -1;
  int constant_factor = 1;

  bool auxiliary() const noexcept { return kind >= VarKind::kMigration; }
};

struct Term {
  int var = 0;
  std::int64_t coef = 0;
};

enum class Sense { kLe, kGe, kEq };

struct Row {
  std::string tag;
  std::vector<int> index;
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  std::int64_t rhs = 0;
};

struct ModelShape {
  int requests = 0;
  int servers = 0;
  int nodes = 0;
  std::vector<int> instances;     // per catalog type
  std::vector<Placement> frozen;  // snapshot instances of out-of-scope types
};

struct IlpModel {
  ModelShape shape;
  std::vector<Variable> variables;
  std::unordered_map<std::string, int> index_of;
  std::vector<Term> objective;  // micro-money coefficients
  Money objective_constant = 0;
  std::vector<Row> rows;

  std::optional<int> find(std::string_view name) const {
    auto it = index_of.find(std::string(name));
    if (it == index_of.end()) return std::nullopt;
    return it->second;
  }

  Money objective_value(const Bits& values) const {
    Money total = objective_constant;
    for (const auto& term : objective) total += term.coef * values[term.var];
    return total;
  }

  static bool satisfied(const Row& row, const Bits& values) {
    std::int64_t lhs = 0;
    for (const auto& term : row.terms) lhs += term.coef * values[term.var];
    switch (row.sense) {
      case Sense::kLe: return lhs <= row.rhs;
      case Sense::kGe: return lhs >= row.rhs;
      case Sense::kEq: return lhs == row.rhs;
    }
    return false;
  }

  std::vector<std::size_t> violated_rows(const Bits& values) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (!satisfied(rows[r], values)) out.push_back(r);
    return out;
  }
};

struct BuildOptions {
  FormulationOptions formulation;
  // Forbid new requests from using any instance deployed in the snapshot.
  bool no_reuse = false;
};

namespace detail {

inline std::string var_name(char prefix, std::initializer_list<int> idx) {
  std::string name(1, prefix);
  for (int v : idx) name += '[' + std::to_string(v) + ']';
  return name;
}

class IlpBuilder {
 public:
  IlpBuilder(const ProblemInstance& instance, const BuildOptions& options)
      : in_(instance), opt_(options), net_(instance.network), types_(instance.catalog.types) {}

  IlpModel build() {
    shape();
    variables();
    objective();
    rows();
    return std::move(model_);
  }

 private:
  int add_var(VarKind kind, std::initializer_list<int> idx, char prefix) {
    Variable v;
    v.kind = kind;
    std::size_t n = 0;
    for (int x : idx) v.idx[n++] = x;
    v.name = var_name(prefix, idx);
    const int id = static_cast<int>(model_.variables.size());
    model_.index_of.emplace(v.name, id);
    model_.variables.push_back(std::move(v));
    return id;
  }

  int var(char prefix, std::initializer_list<int> idx) const {
    return model_.index_of.at(var_name(prefix, idx));
  }

  // Undirected link variable for request f.
  int link(int f, int i, int j) const {
    return i <= j ? var('p', {f, i, j}) : var('p', {f, j, i});
  }

  bool active(int k) const { return in_.type_active(k, opt_.formulation); }

  void add_row(std::string tag, std::vector<int> index, std::vector<Term> terms, Sense sense,
               std::int64_t rhs) {
    if (terms.empty() && IlpModel::satisfied(Row{{}, {}, {}, sense, rhs}, {})) return;
    model_.rows.push_back({std::move(tag), std::move(index), std::move(terms), sense, rhs});
  }

  void shape() {
    model_.shape.requests = in_.num_requests();
    model_.shape.servers = net_.num_servers();
    model_.shape.nodes = net_.num_nodes();
    for (const auto& t : types_) model_.shape.instances.push_back(t.instances);
    for (const auto& p : in_.snapshot.deployed)
      if (!active(p.type)) model_.shape.frozen.push_back(p);
  }

  void variables() {
    const int S = net_.num_servers();
    const int N = net_.num_nodes();
    const int F = in_.num_requests();
    const int K = in_.catalog.size();
    for (int f = 0; f < F; ++f)
      for (int s = 0; s < S; ++s) add_var(VarKind::kContentServer, {f, s}, 'g');
    for (int k = 0; k < K; ++k) {
      if (!active(k)) continue;
      for (int i = 0; i < types_[k].instances; ++i)
        for (int s = 0; s < S; ++s) add_var(VarKind::kDeployment, {k, i, s}, 't');
    }
    for (int f = 0; f < F; ++f)
      for (int s = 0; s < S; ++s)
        for (int k = 0; k < K; ++k) {
          if (!in_.requests[f].requires_type(k)) continue;
          for (int i = 0; i < types_[k].instances; ++i) add_var(VarKind::kAssignment, {f, s, k, i}, 'l');
        }
    for (int f = 0; f < F; ++f)
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j)
          if (i != j || net_.is_server(i)) add_var(VarKind::kRoute, {f, i, j}, 'p');

    for (int k = 0; k < K; ++k) {
      if (!active(k)) continue;
      for (int i = 0; i < types_[k].instances; ++i) {
        const int before = in_.snapshot.server_of(k, i);
        for (int s = 0; s < S; ++s)
          for (int t = 0; t < S; ++t) {
            const int x = add_var(VarKind::kMigration, {k, i, s, t}, 'x');
            auto& v = model_.variables[x];
            v.constant_factor = before == s ? 1 : 0;
            v.factor_b = var('t', {k, i, t});
          }
      }
    }
    for (int f = 0; f < F; ++f) {
      const int fst = in_.requests[f].first_type();
      for (int s = 0; s < S; ++s)
        for (int t = 0; t < S; ++t)
          for (int i = 0; i < types_[fst].instances; ++i) {
            const int m = add_var(VarKind::kContentLink, {f, s, t, i}, 'm');
            auto& v = model_.variables[m];
            v.factor_a = var('g', {f, s});
            v.factor_b = var('l', {f, t, fst, i});
          }
    }
    for (int f = 0; f < F; ++f) {
      const auto& chain = in_.requests[f].chain;
      for (int s = 0; s < S; ++s)
        for (int t = 0; t < S; ++t)
          for (int a = 0; a + 1 < static_cast<int>(chain.size()); ++a)
            for (int i = 0; i < types_[chain[a]].instances; ++i)
              for (int j = 0; j < types_[chain[a + 1]].instances; ++j) {
                const int q = add_var(VarKind::kChainLink, {f, s, t, a, i, j}, 'q');
                auto& v = model_.variables[q];
                v.factor_a = var('l', {f, s, chain[a], i});
                v.factor_b = var('l', {f, t, chain[a + 1], j});
              }
    }
  }

  void objective() {
    const int N = net_.num_nodes();
    const bool clamp = opt_.formulation.clamp_instantiation;
    auto& obj = model_.objective;
    for (const auto& v : model_.variables) {
      const int id = model_.index_of.at(v.name);
      if (v.kind == VarKind::kDeployment) {
        const auto& type = types_[v.idx[0]];
        Money coef = type.resource_req * net_.server_unit_cost[v.idx[2]];
        if (!clamp || !in_.snapshot.contains(v.idx[0], v.idx[1])) coef += type.license_cost;
        if (coef != 0) obj.push_back({id, coef});
      } else if (v.kind == VarKind::kMigration) {
        const Money coef = types_[v.idx[0]].migration_cost(v.idx[2], v.idx[3]);
        if (coef != 0) obj.push_back({id, coef});
      } else if (v.kind == VarKind::kRoute) {
        const int i = v.idx[1];
        const int j = v.idx[2];
        if (!charges_routing(net_, i, j, opt_.formulation.routing_domain)) continue;
        const Money coef = net_.link_cost(i, j) * in_.requests[v.idx[0]].traffic;
        if (coef != 0) obj.push_back({id, coef});
      }
    }
    Money constant = 0;
    for (const auto& p : in_.snapshot.deployed) {
      if (!active(p.type)) continue;
      const auto& type = types_[p.type];
      constant -= type.resource_req * net_.server_unit_cost[p.server];
      if (!clamp) constant -= type.license_cost;
    }
    for (const auto& r : in_.requests)
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
          if (r.current_route(i, j) && charges_routing(net_, i, j, opt_.formulation.routing_domain))
            constant -= net_.link_cost(i, j) * r.traffic;
    model_.objective_constant = constant;
  }

  void rows() {
    const int S = net_.num_servers();
    const int N = net_.num_nodes();
    const int F = in_.num_requests();
    const int K = in_.catalog.size();

    for (int f = 0; f < F; ++f) {
      std::vector<Term> terms;
      for (int s = 0; s < S; ++s) terms.push_back({var('g', {f, s}), 1});
      add_row("6", {f}, std::move(terms), Sense::kEq, 1);
    }
    for (int f = 0; f < F; ++f)
      for (int s = 0; s < S; ++s)
        add_row("7", {f, s}, {{var('g', {f, s}), 1}}, Sense::kLe, in_.requests[f].candidate_servers[s]);
    for (int f = 0; f < F; ++f)
      for (int k : in_.requests[f].chain) {
        std::vector<Term> terms;
        for (int s = 0; s < S; ++s)
          for (int i = 0; i < types_[k].instances; ++i) terms.push_back({var('l', {f, s, k, i}), 1});
        add_row("8", {f, k}, std::move(terms), Sense::kEq, 1);
      }
    for (int f = 0; f < F; ++f)
      for (int s = 0; s < S; ++s)
        for (int k = 0; k < K; ++k) {
          if (!in_.requests[f].requires_type(k)) continue;
          for (int i = 0; i < types_[k].instances; ++i)
            add_row("9", {f, s, k, i}, {{var('l', {f, s, k, i}), 1}, {var('t', {k, i, s}), -1}},
                    Sense::kLe, 0);
        }
    for (int k = 0; k < K; ++k) {
      if (!active(k)) continue;
      std::vector<Term> terms;
      for (int i = 0; i < types_[k].instances; ++i)
        for (int s = 0; s < S; ++s) terms.push_back({var('t', {k, i, s}), 1});
      add_row("10", {k}, std::move(terms), Sense::kGe, 1);
    }
    for (int k = 0; k < K; ++k) {
      if (!active(k)) continue;
      for (int i = 0; i < types_[k].instances; ++i) {
        std::vector<Term> terms;
        for (int s = 0; s < S; ++s) terms.push_back({var('t', {k, i, s}), 1});
        add_row("11", {k, i}, std::move(terms), Sense::kLe, 1);
      }
    }
    for (int s = 0; s < S; ++s) {
      std::vector<Term> terms;
      for (int k = 0; k < K; ++k) {
        if (!active(k) || types_[k].resource_req == 0) continue;
        for (int i = 0; i < types_[k].instances; ++i)
          terms.push_back({var('t', {k, i, s}), types_[k].resource_req});
      }
      Units frozen = 0;
      for (const auto& p : model_.shape.frozen)
        if (p.server == s) frozen += types_[p.type].resource_req;
      add_row("12", {s}, std::move(terms), Sense::kLe, in_.usable(net_.server_capacity[s]) - frozen);
    }
    for (int k = 0; k < K; ++k) {
      if (!in_.type_required(k)) continue;
      for (int i = 0; i < types_[k].instances; ++i)
        for (int s = 0; s < S; ++s) {
          std::vector<Term> terms;
          for (int f = 0; f < F; ++f)
            if (in_.requests[f].requires_type(k) && in_.requests[f].traffic != 0)
              terms.push_back({var('l', {f, s, k, i}), in_.requests[f].traffic});
          add_row("13", {k, i, s}, std::move(terms), Sense::kLe, in_.usable(types_[k].capacity));
        }
    }
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) {
        std::vector<Term> terms;
        for (int f = 0; f < F; ++f)
          if (in_.requests[f].traffic != 0) terms.push_back({link(f, i, j), in_.requests[f].traffic});
        add_row("14", {i, j}, std::move(terms), Sense::kLe, in_.usable(net_.bandwidth(i, j)));
      }

    for (int k = 0; k < K; ++k) {
      if (!active(k)) continue;
      for (int i = 0; i < types_[k].instances; ++i) {
        const int before = in_.snapshot.server_of(k, i);
        for (int s = 0; s < S; ++s)
          for (int t = 0; t < S; ++t) {
            const int x = var('x', {k, i, s, t});
            const int tau = var('t', {k, i, t});
            const int held = before == s ? 1 : 0;
            add_row("2-2", {k, i, s, t}, {{x, 1}}, Sense::kLe, held);
            add_row("2-3", {k, i, s, t}, {{x, 1}, {tau, -1}}, Sense::kLe, 0);
            add_row("2-4", {k, i, s, t}, {{x, 1}, {tau, -1}}, Sense::kGe, held - 1);
          }
      }
    }

    for (int f = 0; f < F; ++f) {
      const int fst = in_.requests[f].first_type();
      for (int s = 0; s < S; ++s)
        for (int t = 0; t < S; ++t)
          for (int i = 0; i < types_[fst].instances; ++i) {
            const int m = var('m', {f, s, t, i});
            const int g = var('g', {f, s});
            const int l = var('l', {f, t, fst, i});
            const int p = link(f, s, t);
            add_row("15-2", {f, s, t, i}, {{m, 1}, {p, -1}}, Sense::kLe, 0);
            add_row("15-3", {f, s, t, i}, {{m, 1}, {g, -1}}, Sense::kLe, 0);
            add_row("15-4", {f, s, t, i}, {{m, 1}, {l, -1}}, Sense::kLe, 0);
            add_row("15-5", {f, s, t, i}, {{m, 1}, {l, -1}, {g, -1}}, Sense::kGe, -1);
          }
    }
    for (int f = 0; f < F; ++f) {
      const auto& chain = in_.requests[f].chain;
      for (int s = 0; s < S; ++s)
        for (int t = 0; t < S; ++t)
          for (int a = 0; a + 1 < static_cast<int>(chain.size()); ++a)
            for (int i = 0; i < types_[chain[a]].instances; ++i)
              for (int j = 0; j < types_[chain[a + 1]].instances; ++j) {
                const int q = var('q', {f, s, t, a, i, j});
                const int l1 = var('l', {f, s, chain[a], i});
                const int l2 = var('l', {f, t, chain[a + 1], j});
                const int p = link(f, s, t);
                const std::vector<int> idx{f, s, t, a, i, j};
                add_row("16-2", idx, {{q, 1}, {p, -1}}, Sense::kLe, 0);
                add_row("16-3", idx, {{q, 1}, {l1, -1}}, Sense::kLe, 0);
                add_row("16-4", idx, {{q, 1}, {l2, -1}}, Sense::kLe, 0);
                add_row("16-5", idx, {{q, 1}, {l1, -1}, {l2, -1}}, Sense::kGe, -1);
              }
    }
    for (int f = 0; f < F; ++f) {
      const auto& r = in_.requests[f];
      const int lst = r.last_type();
      const int user = net_.user_node(r.user);
      for (int s = 0; s < S; ++s) {
        std::vector<Term> terms;
        for (int i = 0; i < types_[lst].instances; ++i) terms.push_back({var('l', {f, s, lst, i}), 1});
        terms.push_back({link(f, s, user), -1});
        add_row("17", {f, s}, std::move(terms), Sense::kEq, 0);
      }
    }
    for (int f = 0; f < F; ++f) {
      const auto& r = in_.requests[f];
      std::vector<Term> terms;
      for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
          const auto coef = r.traffic * net_.link_delay(i, j);
          if (coef != 0) terms.push_back({link(f, i, j), coef});
        }
      for (int s = 0; s < S; ++s)
        for (int k : r.chain) {
          const auto coef = r.traffic * types_[k].processing_delay[s];
          if (coef == 0) continue;
          for (int i = 0; i < types_[k].instances; ++i) terms.push_back({var('l', {f, s, k, i}), coef});
        }
      add_row("18", {f}, std::move(terms), Sense::kLe, r.delay_budget);
    }

    if (opt_.no_reuse) {
      for (int f = 0; f < F; ++f) {
        const auto& r = in_.requests[f];
        if (r.status != RequestStatus::kNew) continue;
        for (int s = 0; s < S; ++s)
          for (int k = 0; k < K; ++k) {
            if (!r.requires_type(k)) continue;
            for (int i = 0; i < types_[k].instances; ++i)
              if (in_.snapshot.contains(k, i))
                add_row("NOREUSE", {f, s, k, i}, {{var('l', {f, s, k, i}), 1}}, Sense::kEq, 0);
          }
      }
    }
  }

  const ProblemInstance& in_;
  const BuildOptions& opt_;
  const Network& net_;
  const std::vector<VnfType>& types_;
  IlpModel model_;
};

}  // namespace detail

inline IlpModel build_ilp(const ProblemInstance& instance, const BuildOptions& options = {}) {
  require_valid(instance);
  return detail::IlpBuilder(instance, options).build();
}

// Canonical 0/1 vector of a plan: primaries read from the plan, auxiliaries
// set to their product definitions.
inline Bits evaluate_plan(const IlpModel& model, const PlacementPlan& plan) {
  Bits values(model.variables.size(), 0);
  for (std::size_t n = 0; n < model.variables.size(); ++n) {
    const auto& v = model.variables[n];
    const auto& x = v.idx;
    switch (v.kind) {
      case VarKind::kContentServer: values[n] = plan.content_server[x[0]][x[1]]; break;
      case VarKind::kDeployment: values[n] = plan.deployment[x[0]][x[1]][x[2]]; break;
      case VarKind::kAssignment: values[n] = plan.assignment[x[0]][x[2]][x[3]][x[1]]; break;
      case VarKind::kRoute: values[n] = plan.routes[x[0]](x[1], x[2]); break;
      default: {
        const int a = v.factor_a < 0 ? v.constant_factor : values[v.factor_a];
        values[n] = static_cast<std::uint8_t>(a * values[v.factor_b]);
      }
    }
  }
  return values;
}

namespace detail {

// Accepts canonical names (g[0][1]), LP-style names (g_0_1) and MPS column
// names (C0000002, 1-based).
inline std::optional<int> resolve_name(const IlpModel& model, const std::string& raw) {
  if (auto id = model.find(raw)) return id;
  if (raw.size() == 8 && raw[0] == 'C' &&
      std::all_of(raw.begin() + 1, raw.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const int n = std::stoi(raw.substr(1)) - 1;
    if (n >= 0 && n < static_cast<int>(model.variables.size())) return n;
    return std::nullopt;
  }
  if (raw.size() > 2 && raw[1] == '_') {
    std::string name(1, raw[0]);
    std::string digits;
    for (std::size_t n = 2; n <= raw.size(); ++n) {
      if (n == raw.size() || raw[n] == '_') {
        name += '[' + digits + ']';
        digits.clear();
      } else {
        digits += raw[n];
      }
    }
    return model.find(name);
  }
  return std::nullopt;
}

}  // namespace detail

// Rebuilds a plan from solver output. Every γ/τ/λ/P variable must be
// present; auxiliaries are optional but must match their products.
inline PlacementPlan import_solution(const IlpModel& model, const std::map<std::string, int>& values) {
  Bits v(model.variables.size(), 0);
  std::vector<bool> seen(model.variables.size(), false);
  for (const auto& [name, value] : values) {
    const auto id = detail::resolve_name(model, name);
    if (!id) throw Error(ErrorCode::kInvalidArgument, "unknown variable " + name);
    if (value != 0 && value != 1) throw Error(ErrorCode::kInvalidArgument, "non-binary value for " + name);
    v[*id] = static_cast<std::uint8_t>(value);
    seen[*id] = true;
  }

  const auto& shape = model.shape;
  PlacementPlan plan;
  plan.content_server.assign(shape.requests, Bits(shape.servers, 0));
  for (int count : shape.instances) plan.deployment.emplace_back(count, Bits(shape.servers, 0));
  plan.assignment.assign(shape.requests, plan.deployment);
  plan.routes.assign(shape.requests, BinaryMatrix(shape.nodes, 0));
  for (const auto& p : shape.frozen) plan.deployment[p.type][p.instance][p.server] = 1;

  for (std::size_t n = 0; n < model.variables.size(); ++n) {
    const auto& var = model.variables[n];
    const auto& x = var.idx;
    if (var.auxiliary()) {
      if (!seen[n]) continue;
      const int a = var.factor_a < 0 ? var.constant_factor : v[var.factor_a];
      if (v[n] != a * v[var.factor_b])
        throw Error(ErrorCode::kAuxiliaryInconsistent, var.name + " disagrees with its product");
      continue;
    }
    if (!seen[n]) throw Error(ErrorCode::kMissingVariable, var.name);
    switch (var.kind) {
      case VarKind::kContentServer: plan.content_server[x[0]][x[1]] = v[n]; break;
      case VarKind::kDeployment: plan.deployment[x[0]][x[1]][x[2]] = v[n]; break;
      case VarKind::kAssignment: plan.assignment[x[0]][x[2]][x[3]][x[1]] = v[n]; break;
      case VarKind::kRoute: plan.routes[x[0]].set_symmetric(x[1], x[2], v[n]); break;
      default: break;
    }
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Text exports. Objective coefficients and the constant are written in
// currency units (micro-money / 1e6); row coefficients are exact integers.

inline constexpr double kObjectiveScale = 1e-6;

namespace detail {

// Exact decimal of micro / 1e6 without trailing zeros.
inline std::string scaled_money(Money micro) {
  std::string s = format_money(micro);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

inline std::string mps_id(char prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%07zu", prefix, n + 1);
  return buf;
}

inline std::string mps_entry(const std::string& column, const std::string& row, const std::string& value) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "    %-8s  %-8s  %12s\n", column.c_str(), row.c_str(), value.c_str());
  return buf;
}

inline std::string lp_name(const std::string& canonical) {
  std::string out;
  for (char c : canonical) {
    if (c == '[') out += '_';
    else if (c != ']') out += c;
  }
  return out;
}

inline const char* sense_symbol(Sense sense) {
  switch (sense) {
    case Sense::kLe: return "<=";
    case Sense::kGe: return ">=";
    case Sense::kEq: return "=";
  }
  return "=";
}

}  // namespace detail

// Fixed-format MPS. Columns are named C0000001.., rows R0000001..; the
// header comments map them to canonical names and family tags. The
// objective constant c is carried as RHS -c on the objective row, the
// usual convention (objective offset = -RHS(objective)).
inline std::string export_mps(const IlpModel& model) {
  std::ostringstream out;
  out << "* chainplace binary program\n"
      << "* objective scale: 1e-6 (micro-money written in currency units)\n"
      << "* objective constant: " << detail::scaled_money(model.objective_constant)
      << " (written as -RHS of row OBJ)\n"
      << "* variables: " << model.variables.size() << "  rows: " << model.rows.size() << '\n';
  for (std::size_t n = 0; n < model.variables.size(); ++n)
    out << "* column " << detail::mps_id('C', n) << ' ' << model.variables[n].name << '\n';
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    out << "* row " << detail::mps_id('R', r) << " family " << model.rows[r].tag;
    for (int i : model.rows[r].index) out << '[' << i << ']';
    out << '\n';
  }
  out << "NAME          CHAINPLACE\n"
      << "OBJSENSE\n"
      << "    MIN\n"
      << "ROWS\n"
      << " N  OBJ\n";
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const char* type = model.rows[r].sense == Sense::kLe ? "L" : model.rows[r].sense == Sense::kGe ? "G" : "E";
    out << ' ' << type << "  " << detail::mps_id('R', r) << '\n';
  }

  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> by_column(model.variables.size());
  for (std::size_t r = 0; r < model.rows.size(); ++r)
    for (const auto& term : model.rows[r].terms)
      if (term.coef != 0) by_column[term.var].push_back({r, term.coef});
  std::vector<Money> obj(model.variables.size(), 0);
  for (const auto& term : model.objective) obj[term.var] += term.coef;

  out << "COLUMNS\n"
      << "    MARKER                 'MARKER'                 'INTORG'\n";
  for (std::size_t n = 0; n < model.variables.size(); ++n) {
    const auto column = detail::mps_id('C', n);
    if (obj[n] != 0 || by_column[n].empty()) out << detail::mps_entry(column, "OBJ", detail::scaled_money(obj[n]));
    for (const auto& [r, coef] : by_column[n])
      out << detail::mps_entry(column, detail::mps_id('R', r), std::to_string(coef));
  }
  out << "    MARKER                 'MARKER'                 'INTEND'\n";

  out << "RHS\n";
  if (model.objective_constant != 0)
    out << detail::mps_entry("RHS", "OBJ", detail::scaled_money(-model.objective_constant));
  for (std::size_t r = 0; r < model.rows.size(); ++r)
    if (model.rows[r].rhs != 0)
      out << detail::mps_entry("RHS", detail::mps_id('R', r), std::to_string(model.rows[r].rhs));

  out << "BOUNDS\n";
  for (std::size_t n = 0; n < model.variables.size(); ++n) out << " BV BND       " << detail::mps_id('C', n) << '\n';
  out << "ENDATA\n";
  return out.str();
}

// CPLEX-style LP text with names like g_0_1; same scaling as export_mps.
inline std::string export_lp(const IlpModel& model) {
  std::ostringstream out;
  out << "\\ chainplace binary program\n"
      << "\\ objective scale: 1e-6 (micro-money written in currency units)\n"
      << "\\ variables: " << model.variables.size() << "  rows: " << model.rows.size() << '\n'
      << "Minimize\n obj:";
  std::size_t on_line = 0;
  auto emit_term = [&](std::int64_t sign_source, const std::string& magnitude, const std::string& name) {
    if (on_line == 8) {
      out << "\n     ";
      on_line = 0;
    }
    out << (sign_source < 0 ? " - " : " + ") << magnitude << ' ' << name;
    ++on_line;
  };
  bool any = false;
  for (const auto& term : model.objective) {
    if (term.coef == 0) continue;
    emit_term(term.coef, detail::scaled_money(term.coef < 0 ? -term.coef : term.coef),
              detail::lp_name(model.variables[term.var].name));
    any = true;
  }
  if (model.objective_constant != 0) {
    const Money c = model.objective_constant;
    out << (c < 0 ? " - " : " + ") << detail::scaled_money(c < 0 ? -c : c);
    any = true;
  }
  if (!any) out << " 0";
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < model.rows.size(); ++r) {
    const auto& row = model.rows[r];
    std::string tag = row.tag;
    for (char& c : tag)
      if (c == '-') c = '_';
    out << " c" << (r + 1) << "_e" << tag << ':';
    on_line = 0;
    bool wrote = false;
    for (const auto& term : row.terms) {
      if (term.coef == 0) continue;
      emit_term(term.coef, std::to_string(term.coef < 0 ? -term.coef : term.coef),
                detail::lp_name(model.variables[term.var].name));
      wrote = true;
    }
    if (!wrote) out << " 0 " << (model.variables.empty() ? "x" : detail::lp_name(model.variables.front().name));
    out << ' ' << detail::sense_symbol(row.sense) << ' ' << row.rhs << '\n';
  }
  if (!model.variables.empty()) {
    out << "Binary\n";
    for (std::size_t n = 0; n < model.variables.size(); ++n)
      out << (n % 8 == 0 ? (n ? "\n " : " ") : " ") << detail::lp_name(model.variables[n].name);
    out << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace chainplace

#endif  // CHAINPLACE_ILP_HPP
