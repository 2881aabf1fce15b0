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

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"

using namespace chainplace;
using fixtures::colocated_plan;
using fixtures::tiny_instance;

namespace {

std::map<char, int> count_by_prefix(const IlpModel& model) {
  std::map<char, int> counts;
  for (const auto& v : model.variables) ++counts[v.name[0]];
  return counts;
}

std::map<std::string, int> values_of(const IlpModel& model, const Bits& bits, bool with_aux = true) {
  std::map<std::string, int> values;
  for (std::size_t n = 0; n < model.variables.size(); ++n)
    if (with_aux || !model.variables[n].auxiliary()) values[model.variables[n].name] = bits[n];
  return values;
}

}  // namespace

TEST(BuildIlp, NineteenVariablesOnTinyInstance) {
  // g 2 + t 2 + l 2 + p (3 pairs + 2 self) + x 4 + m 4 + q 0.
  const auto model = build_ilp(tiny_instance());
  EXPECT_EQ(model.variables.size(), 19u);
  const auto counts = count_by_prefix(model);
  EXPECT_EQ(counts.at('g'), 2);
  EXPECT_EQ(counts.at('t'), 2);
  EXPECT_EQ(counts.at('l'), 2);
  EXPECT_EQ(counts.at('p'), 5);
  EXPECT_EQ(counts.at('x'), 4);
  EXPECT_EQ(counts.at('m'), 4);
  EXPECT_EQ(counts.count('q'), 0u);
}

TEST(BuildIlp, CanonicalOrderAndNames) {
  const auto model = build_ilp(tiny_instance());
  const std::vector<std::string> expected = {
      "g[0][0]",       "g[0][1]",       "t[0][0][0]",    "t[0][0][1]",    "l[0][0][0][0]",
      "l[0][1][0][0]", "p[0][0][0]",    "p[0][0][1]",    "p[0][0][2]",    "p[0][1][1]",
      "p[0][1][2]",    "x[0][0][0][0]", "x[0][0][0][1]", "x[0][0][1][0]", "x[0][0][1][1]",
      "m[0][0][0][0]", "m[0][0][1][0]", "m[0][1][0][0]", "m[0][1][1][0]"};
  ASSERT_EQ(model.variables.size(), expected.size());
  for (std::size_t n = 0; n < expected.size(); ++n) {
    EXPECT_EQ(model.variables[n].name, expected[n]);
    EXPECT_EQ(model.find(expected[n]), static_cast<int>(n));
  }
}

TEST(BuildIlp, NoChainLinkVariablesForSingleVnfChains) {
  auto in = tiny_instance();
  in.catalog.types.push_back(fixtures::standard_type("b", 2));
  in.requests.push_back(fixtures::new_request(in.network, "r1", 0, {1}));
  EXPECT_EQ(count_by_prefix(build_ilp(in)).count('q'), 0u);
  in.requests[1].chain = {1, 0};
  EXPECT_EQ(count_by_prefix(build_ilp(in)).at('q'), 4);  // s,t in S x 1 x 1
}

TEST(BuildIlp, MigrationRowsExistOncePerIndex) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto in = fixtures::random_instance(rng);
    const auto model = build_ilp(in);
    for (const char* tag : {"2-2", "2-3", "2-4"}) {
      std::map<std::vector<int>, int> seen;
      for (const auto& row : model.rows)
        if (row.tag == tag) ++seen[row.index];
      std::size_t expected = 0;
      for (int k = 0; k < in.catalog.size(); ++k)
        if (in.type_required(k))
          expected += static_cast<std::size_t>(in.catalog.types[k].instances) * in.network.num_servers() *
                      in.network.num_servers();
      EXPECT_EQ(seen.size(), expected) << tag;
      for (const auto& [index, count] : seen) EXPECT_EQ(count, 1);
    }
  }
}

TEST(BuildIlp, RowTagsAreKnown) {
  const std::set<std::string> known = {"6",    "7",    "8",    "9",    "10",   "11",   "12", "13",
                                       "14",   "2-2",  "2-3",  "2-4",  "15-2", "15-3", "15-4", "15-5",
                                       "16-2", "16-3", "16-4", "16-5", "17",   "18",   "NOREUSE"};
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto model = build_ilp(fixtures::random_instance(rng), {{}, true});
    for (const auto& row : model.rows) EXPECT_TRUE(known.count(row.tag)) << row.tag;
  }
}

TEST(BuildIlp, NoReuseRowsTargetSnapshotInstances) {
  auto in = tiny_instance();
  in.catalog.types[0].instances = 2;
  in.snapshot.deployed = {{0, 0, 1}};
  const auto model = build_ilp(in, {{}, true});
  std::set<std::vector<int>> rows;
  for (const auto& row : model.rows)
    if (row.tag == "NOREUSE") rows.insert(row.index);
  EXPECT_EQ(rows, (std::set<std::vector<int>>{{0, 0, 0, 0}, {0, 1, 0, 0}}));
  in.requests[0].status = RequestStatus::kExisting;
  for (const auto& row : build_ilp(in, {{}, true}).rows) EXPECT_NE(row.tag, "NOREUSE");
}

TEST(BuildIlp, RejectsInvalidInstance) {
  auto in = tiny_instance();
  in.requests[0].candidate_servers = {0, 0};
  try {
    build_ilp(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationFailed);
  }
}

TEST(BuildIlp, IsDeterministic) {
  std::mt19937_64 rng(8);
  const auto in = fixtures::random_instance(rng);
  EXPECT_EQ(export_mps(build_ilp(in)), export_mps(build_ilp(in)));
  EXPECT_EQ(export_lp(build_ilp(in)), export_lp(build_ilp(in)));
}

TEST(BuildIlp, ObjectiveMatchesCostsOnFeasiblePlans) {
  const auto in = tiny_instance();
  const auto model = build_ilp(in);
  for (int s = 0; s < 2; ++s) {
    const auto plan = colocated_plan(in, s);
    const auto bits = evaluate_plan(model, plan);
    EXPECT_TRUE(model.violated_rows(bits).empty());
    EXPECT_EQ(model.objective_value(bits), total_objective(in, plan).total);
  }
}

TEST(BuildIlp, FrozenTypesKeepSnapshotDeployment) {
  auto in = tiny_instance();
  in.catalog.types.push_back(fixtures::standard_type("idle", 2));
  in.snapshot.deployed = {{1, 0, 1}};
  const auto model = build_ilp(in);
  EXPECT_FALSE(model.find("t[1][0][0]").has_value());
  ASSERT_EQ(model.shape.frozen.size(), 1u);
  auto plan = colocated_plan(in, 0);
  plan.deployment[1][0][1] = 1;
  const auto bits = evaluate_plan(model, plan);
  EXPECT_EQ(model.objective_value(bits), total_objective(in, plan).total);
  EXPECT_EQ(import_solution(model, values_of(model, bits)), plan);
}

TEST(ExportMps, EmptyModelSkeleton) {
  const auto text = export_mps(IlpModel{});
  for (const char* section : {"NAME", "ROWS", " N  OBJ", "COLUMNS", "RHS", "BOUNDS", "ENDATA"})
    EXPECT_NE(text.find(section), std::string::npos) << section;
  EXPECT_EQ(text.find("C0000001"), std::string::npos);
  const auto lp = export_lp(IlpModel{});
  EXPECT_NE(lp.find("Minimize"), std::string::npos);
  EXPECT_NE(lp.find("End"), std::string::npos);
}

TEST(ExportMps, OneBinaryColumnPerVariableInOrder) {
  const auto model = build_ilp(tiny_instance());
  const auto text = export_mps(model);
  std::size_t pos = 0;
  for (std::size_t n = 0; n < model.variables.size(); ++n) {
    const auto column = detail::mps_id('C', n);
    const auto bound = text.find(" BV BND       " + column + "\n");
    ASSERT_NE(bound, std::string::npos);
    EXPECT_GT(bound, pos);
    pos = bound;
    EXPECT_NE(text.find("* column " + column + " " + model.variables[n].name + "\n"), std::string::npos);
  }
  EXPECT_EQ(text.find(detail::mps_id('C', model.variables.size())), std::string::npos);
  EXPECT_NE(text.find("'INTORG'"), std::string::npos);
  EXPECT_NE(text.find("MIN"), std::string::npos);
}

TEST(ExportMps, ObjectiveIsScaledExactly) {
  auto in = tiny_instance();
  in.snapshot.deployed = {{0, 0, 1}};
  const auto model = build_ilp(in);
  const auto text = export_mps(model);
  // t[0][0][0]: R rho + L = $110; snapshot constant -$110 written as RHS 110.
  EXPECT_NE(text.find(detail::mps_entry("C0000003", "OBJ", "110")), std::string::npos);
  EXPECT_NE(text.find(detail::mps_entry("RHS", "OBJ", "110")), std::string::npos);
  EXPECT_EQ(detail::scaled_money(90'000), "0.09");
  EXPECT_EQ(detail::scaled_money(-4'400'000), "-4.4");
}

TEST(ExportLp, NamesAndConstant) {
  auto in = tiny_instance();
  in.snapshot.deployed = {{0, 0, 1}};
  const auto lp = export_lp(build_ilp(in));
  EXPECT_NE(lp.find("+ 110 t_0_0_0"), std::string::npos);
  EXPECT_NE(lp.find("- 110\n"), std::string::npos);
  EXPECT_NE(lp.find("_e15_2:"), std::string::npos);
  EXPECT_NE(lp.find("Binary"), std::string::npos);
}

TEST(ImportSolution, RoundTripsPlans) {
  const auto in = tiny_instance();
  const auto model = build_ilp(in);
  const auto plan = colocated_plan(in, 1);
  const auto bits = evaluate_plan(model, plan);
  EXPECT_EQ(import_solution(model, values_of(model, bits)), plan);
  EXPECT_EQ(import_solution(model, values_of(model, bits, false)), plan);

  // LP and MPS names resolve too.
  std::map<std::string, int> lp_values;
  std::map<std::string, int> mps_values;
  for (std::size_t n = 0; n < bits.size(); ++n) {
    lp_values[detail::lp_name(model.variables[n].name)] = bits[n];
    mps_values[detail::mps_id('C', n)] = bits[n];
  }
  EXPECT_EQ(import_solution(model, lp_values), plan);
  EXPECT_EQ(import_solution(model, mps_values), plan);
}

TEST(ImportSolution, RejectsInconsistentAuxiliary) {
  auto in = tiny_instance();
  in.snapshot.deployed = {{0, 0, 0}};
  const auto model = build_ilp(in);
  auto values = values_of(model, evaluate_plan(model, colocated_plan(in, 0)));
  values["x[0][0][0][0]"] = 0;  // snapshot 1 * tau 1 must be 1
  try {
    import_solution(model, values);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAuxiliaryInconsistent);
  }
}

TEST(ImportSolution, MissingAndUnknownNames) {
  const auto model = build_ilp(tiny_instance());
  auto values = values_of(model, Bits(model.variables.size(), 0));
  values.erase("p[0][0][2]");
  try {
    import_solution(model, values);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingVariable);
  }
  values["p[0][0][2]"] = 0;
  values["zz"] = 1;
  EXPECT_THROW(import_solution(model, values), Error);
}

TEST(ImportSolution, AllZeroImportsButIsInfeasible) {
  const auto in = tiny_instance();
  const auto model = build_ilp(in);
  const auto plan = import_solution(model, values_of(model, Bits(model.variables.size(), 0)));
  EXPECT_TRUE(check_feasibility(in, plan).violates("6", {0}));
}
