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

// JSON documents for instances, plans and solve reports, plus the two
// solution formats accepted by import_solution.
//
// Instance document (format_version "1"):
//   network:  servers, users (names); bandwidth, link_cost, link_delay
//             (dense node x node arrays, servers first); server_capacity,
//             server_unit_cost
//   catalog:  types[] of {name, license_cost, capacity, resource_req,
//             instances, processing_delay[s], migration_cost[s][t]}
//   requests: [] of {id, user (name), chain (type names), traffic,
//             delay_budget, candidate_servers (0/1 per server), status
//             ("existing" | "new"), current_route (node x node)}
//   snapshot: deployed[] of {type (name), instance, server (name)}
//   usage_threshold
// Money is integer micro-money, delays integer microseconds.

#ifndef CHAINPLACE_IO_HPP
#define CHAINPLACE_IO_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "chainplace/costs.hpp"
#include "chainplace/ilp.hpp"
#include "chainplace/model.hpp"
#include "chainplace/solver.hpp"

namespace chainplace {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

namespace detail {

template <typename T>
Json matrix_to_json(const SquareMatrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
SquareMatrix<T> matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorCode::kParseError, std::string(what) + " is not an array");
  const std::size_t n = j.size();
  SquareMatrix<T> m(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n)
      throw Error(ErrorCode::kParseError, std::string(what) + " is not square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = j[r][c].get<T>();
  }
  return m;
}

inline Bits bits_from_json(const Json& j) {
  Bits bits;
  for (const auto& v : j) bits.push_back(static_cast<std::uint8_t>(v.get<int>()));
  return bits;
}

inline int index_of_name(const std::vector<std::string>& names, const std::string& name, const char* what) {
  for (std::size_t n = 0; n < names.size(); ++n)
    if (names[n] == name) return static_cast<int>(n);
  throw Error(ErrorCode::kParseError, std::string("unknown ") + what + " '" + name + "'");
}

template <typename F>
auto parse_guard(F&& body) {
  try {
    return body();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace detail

inline Json instance_to_json(const ProblemInstance& in) {
  const auto& net = in.network;
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["network"] = {
      {"servers", net.servers},
      {"users", net.users},
      {"bandwidth", detail::matrix_to_json(net.bandwidth)},
      {"link_cost", detail::matrix_to_json(net.link_cost)},
      {"link_delay", detail::matrix_to_json(net.link_delay)},
      {"server_capacity", net.server_capacity},
      {"server_unit_cost", net.server_unit_cost},
  };
  Json types = Json::array();
  for (const auto& t : in.catalog.types)
    types.push_back({{"name", t.name},
                     {"license_cost", t.license_cost},
                     {"capacity", t.capacity},
                     {"resource_req", t.resource_req},
                     {"instances", t.instances},
                     {"processing_delay", t.processing_delay},
                     {"migration_cost", detail::matrix_to_json(t.migration_cost)}});
  doc["catalog"] = {{"types", types}};
  Json requests = Json::array();
  for (const auto& r : in.requests) {
    Json chain = Json::array();
    for (int k : r.chain) chain.push_back(in.catalog.types[k].name);
    requests.push_back({{"id", r.id},
                        {"user", net.users[r.user]},
                        {"chain", chain},
                        {"traffic", r.traffic},
                        {"delay_budget", r.delay_budget},
                        {"candidate_servers", r.candidate_servers},
                        {"status", r.status == RequestStatus::kExisting ? "existing" : "new"},
                        {"current_route", detail::matrix_to_json(r.current_route)}});
  }
  doc["requests"] = requests;
  Json deployed = Json::array();
  for (const auto& p : in.snapshot.deployed)
    deployed.push_back({{"type", in.catalog.types[p.type].name},
                        {"instance", p.instance},
                        {"server", net.servers[p.server]}});
  doc["snapshot"] = {{"deployed", deployed}};
  doc["usage_threshold"] = in.usage_threshold;
  return doc;
}

// Parses and cross-references names; structural invariants are left to
// validate_instance.
inline ProblemInstance instance_from_json(const Json& doc) {
  return detail::parse_guard([&] {
    if (doc.value("format_version", "") != std::string(kFormatVersion))
      throw Error(ErrorCode::kParseError, "unsupported format_version");
    ProblemInstance in;
    const auto& n = doc.at("network");
    auto& net = in.network;
    net.servers = n.at("servers").get<std::vector<std::string>>();
    net.users = n.at("users").get<std::vector<std::string>>();
    net.bandwidth = detail::matrix_from_json<Units>(n.at("bandwidth"), "bandwidth");
    net.link_cost = detail::matrix_from_json<Money>(n.at("link_cost"), "link_cost");
    net.link_delay = detail::matrix_from_json<Micros>(n.at("link_delay"), "link_delay");
    net.server_capacity = n.at("server_capacity").get<std::vector<Units>>();
    net.server_unit_cost = n.at("server_unit_cost").get<std::vector<Money>>();

    std::vector<std::string> type_names;
    for (const auto& t : doc.at("catalog").at("types")) {
      VnfType type;
      type.name = t.at("name").get<std::string>();
      type.license_cost = t.at("license_cost").get<Money>();
      type.capacity = t.at("capacity").get<Units>();
      type.resource_req = t.at("resource_req").get<Units>();
      type.instances = t.at("instances").get<int>();
      type.processing_delay = t.at("processing_delay").get<std::vector<Micros>>();
      type.migration_cost = detail::matrix_from_json<Money>(t.at("migration_cost"), "migration_cost");
      type_names.push_back(type.name);
      in.catalog.types.push_back(std::move(type));
    }

    for (const auto& r : doc.at("requests")) {
      ServiceRequest req;
      req.id = r.at("id").get<std::string>();
      req.user = detail::index_of_name(net.users, r.at("user").get<std::string>(), "user");
      for (const auto& k : r.at("chain"))
        req.chain.push_back(detail::index_of_name(type_names, k.get<std::string>(), "vnf type"));
      req.traffic = r.at("traffic").get<Units>();
      req.delay_budget = r.at("delay_budget").get<Micros>();
      req.candidate_servers = detail::bits_from_json(r.at("candidate_servers"));
      const auto status = r.at("status").get<std::string>();
      if (status == "existing")
        req.status = RequestStatus::kExisting;
      else if (status == "new")
        req.status = RequestStatus::kNew;
      else
        throw Error(ErrorCode::kParseError, "bad request status '" + status + "'");
      if (r.contains("current_route"))
        req.current_route = detail::matrix_from_json<std::uint8_t>(r.at("current_route"), "current_route");
      else
        req.current_route = BinaryMatrix(net.servers.size() + net.users.size(), 0);
      in.requests.push_back(std::move(req));
    }

    for (const auto& p : doc.at("snapshot").at("deployed"))
      in.snapshot.deployed.push_back(
          {detail::index_of_name(type_names, p.at("type").get<std::string>(), "vnf type"),
           p.at("instance").get<int>(),
           detail::index_of_name(net.servers, p.at("server").get<std::string>(), "server")});
    in.usage_threshold = doc.at("usage_threshold").get<double>();
    return in;
  });
}

inline Json plan_to_json(const PlacementPlan& plan) {
  Json routes = Json::array();
  for (const auto& r : plan.routes) routes.push_back(detail::matrix_to_json(r));
  return {{"format_version", kFormatVersion},
          {"content_server", plan.content_server},
          {"deployment", plan.deployment},
          {"assignment", plan.assignment},
          {"routes", routes}};
}

inline PlacementPlan plan_from_json(const Json& doc) {
  return detail::parse_guard([&] {
    PlacementPlan plan;
    for (const auto& row : doc.at("content_server")) plan.content_server.push_back(detail::bits_from_json(row));
    for (const auto& k : doc.at("deployment")) {
      auto& rows = plan.deployment.emplace_back();
      for (const auto& i : k) rows.push_back(detail::bits_from_json(i));
    }
    for (const auto& f : doc.at("assignment")) {
      auto& per_request = plan.assignment.emplace_back();
      for (const auto& k : f) {
        auto& rows = per_request.emplace_back();
        for (const auto& i : k) rows.push_back(detail::bits_from_json(i));
      }
    }
    for (const auto& r : doc.at("routes"))
      plan.routes.push_back(detail::matrix_from_json<std::uint8_t>(r, "route"));
    return plan;
  });
}

inline Json breakdown_to_json(const CostBreakdown& b) {
  return {{"hosting_delta", b.hosting_delta},
          {"migration", b.migration},
          {"instantiation", b.instantiation},
          {"routing_delta", b.routing_delta},
          {"total", b.total},
          {"total_display", format_money(b.total)}};
}

inline Json delta_to_json(const ProblemInstance& in, const DeploymentDelta& d) {
  auto placement = [&](const Placement& p) {
    return Json{{"type", in.catalog.types[p.type].name},
                {"instance", p.instance},
                {"server", in.network.servers[p.server]}};
  };
  Json doc = {{"reused", Json::array()},
              {"migrated", Json::array()},
              {"instantiated", Json::array()},
              {"removed", Json::array()}};
  for (const auto& p : d.reused) doc["reused"].push_back(placement(p));
  for (const auto& m : d.migrated)
    doc["migrated"].push_back({{"type", in.catalog.types[m.type].name},
                               {"instance", m.instance},
                               {"from", in.network.servers[m.from]},
                               {"to", in.network.servers[m.to]}});
  for (const auto& p : d.instantiated) doc["instantiated"].push_back(placement(p));
  for (const auto& p : d.removed) doc["removed"].push_back(placement(p));
  return doc;
}

// Report for one solve. Wall time is only included on request so that
// reports can be compared byte for byte.
inline Json result_to_json(const ProblemInstance& in, const SolveResult& result, bool include_timing = false) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["status"] = std::string(to_string(result.status));
  if (result.plan) {
    doc["breakdown"] = breakdown_to_json(result.breakdown);
    doc["gap"] = result.gap;
    doc["delta"] = delta_to_json(in, snapshot_diff(in, *result.plan));
    Json delays = Json::array();
    for (int f = 0; f < in.num_requests(); ++f)
      delays.push_back({{"id", in.requests[f].id},
                        {"delay", service_delay(in, *result.plan, f)},
                        {"budget", in.requests[f].delay_budget}});
    doc["delays"] = delays;
    doc["plan"] = plan_to_json(*result.plan);
  }
  Json stats = {{"nodes", result.stats.nodes}, {"incumbent_updates", result.stats.incumbent_updates}};
  if (include_timing) stats["wall_seconds"] = result.stats.wall_seconds;
  doc["stats"] = stats;
  return doc;
}

// Accepts a plan document, a report (its "plan" member), or nothing else.
inline PlacementPlan plan_from_any_json(const Json& doc) {
  if (doc.contains("plan")) return plan_from_json(doc.at("plan"));
  return plan_from_json(doc);
}

// Solution values: a JSON object {name: 0|1} (optionally under "values"),
// or lines of "name=value" / "name value" with '#' comments. Values are
// rounded to the nearest integer so solver output like 0.9999999 is read
// as 1.
inline std::map<std::string, int> parse_solution(const std::string& text) {
  std::map<std::string, int> values;
  auto to_binary = [](double v, const std::string& name) {
    const long rounded = std::lround(v);
    if ((rounded != 0 && rounded != 1) || std::abs(v - static_cast<double>(rounded)) > 1e-6)
      throw Error(ErrorCode::kParseError, "non-binary value for " + name);
    return static_cast<int>(rounded);
  };
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return detail::parse_guard([&] {
      const Json doc = Json::parse(text);
      const Json& obj = doc.contains("values") ? doc.at("values") : doc;
      for (const auto& [name, v] : obj.items()) values[name] = to_binary(v.get<double>(), name);
      return values;
    });
  }
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& c : line)
      if (c == '=') c = ' ';
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    double v = 0;
    if (!(fields >> v)) throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": missing value");
    values[name] = to_binary(v, name);
  }
  return values;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline Json read_json_file(const std::string& path) {
  const auto text = read_file(path);
  return detail::parse_guard([&] { return Json::parse(text); });
}

}  // namespace chainplace

#endif  // CHAINPLACE_IO_HPP
