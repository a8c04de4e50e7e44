// Copyright 2026 The netexp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netexp/experiment.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <gtest/gtest.h>

#include "json.hpp"
#include "netexp/summary.h"
#include "netexp/theory.h"
#include "test_util.h"

namespace netexp {
namespace {

using nlohmann::json;

json SmallConfig() {
  return json::parse(R"({
    "graph": {"kind": "small_world", "n": 200, "k": 6, "p_rw": [0.01, 0.5]},
    "clustering": {"kind": "epsilon_net", "epsilon": 3},
    "designs": [
      {"name": "ind", "kind": "independent", "q": 0.5},
      {"name": "gcr", "kind": "graph_cluster", "q": 0.5}
    ],
    "response": {"alpha": -1.5, "beta": [0.0, 1.0], "gamma": [0.0, 0.5], "steps": 3},
    "exposures": [{"kind": "fntr", "lambda": 0.75}],
    "estimators": ["diff_in_means", "exposure_diff_in_means", "hajek", "horvitz_thompson"],
    "replications": 40,
    "seed": 3
  })");
}

std::string PerReplicationText(const ExperimentResult& r) {
  std::ostringstream out;
  WritePerReplicationCsv(out, r);
  return out.str();
}

TEST(DeriveSeedTest, Deterministic) {
  EXPECT_EQ(DeriveSeed(1, "cell", 4, SeedRole::kGraph), DeriveSeed(1, "cell", 4, SeedRole::kGraph));
}

TEST(DeriveSeedTest, NoCollisionsOverAMillionDerivations) {
  std::unordered_set<uint64_t> seen;
  seen.reserve(1 << 21);
  const SeedRole roles[] = {SeedRole::kGraph, SeedRole::kClustering, SeedRole::kAssignment,
                            SeedRole::kOutcomeNoise};
  const std::string keys[] = {"small_world|p_rw=0.01", "small_world|p_rw=0.1", "", "/ind"};
  int count = 0;
  for (uint64_t base : {0ull, 1ull}) {
    for (const auto& key : keys) {
      for (int r = 0; r < 31250; ++r) {
        for (auto role : roles) {
          seen.insert(DeriveSeed(base, key, r, role));
          ++count;
        }
      }
    }
  }
  EXPECT_EQ(count, 1000000);
  EXPECT_EQ(seen.size(), 1000000u);
}

TEST(ExperimentTest, LayoutAndAccounting) {
  const auto cfg = ParseConfig(SmallConfig().dump());
  const auto result = RunExperiment(cfg, 1);
  ASSERT_EQ(result.cells.size(), 8u);
  EXPECT_EQ(result.truths.size(), 8u * 40);
  EXPECT_EQ(result.records.size(), 8u * 40 * 2 * 4);
  // Canonical order: cell, replication, design, estimator.
  for (size_t i = 1; i < result.records.size(); ++i) {
    const auto& a = result.records[i - 1];
    const auto& b = result.records[i];
    ASSERT_TRUE(std::tie(a.cell, a.replication) <= std::tie(b.cell, b.replication));
  }
  const auto rows = Summarize(result, {"ind", "diff_in_means"});
  ASSERT_EQ(rows.size(), 8u * 2 * 4);
  for (const auto& row : rows) EXPECT_EQ(row.n_defined + row.n_undefined, 40);
}

TEST(ExperimentTest, NullEffectCell) {
  auto j = SmallConfig();
  j["response"]["beta"] = {0.0};
  j["response"]["gamma"] = {0.0};
  j["replications"] = 200;
  const auto cfg = ParseConfig(j.dump());
  const auto result = RunExperiment(cfg, 1);
  for (const auto& t : result.truths) EXPECT_EQ(t.ate(), 0.0);  // paired noise
  for (const auto& row : Summarize(result, {"ind", "diff_in_means"})) {
    EXPECT_EQ(row.truth, 0.0);
    EXPECT_FALSE(row.relative_bias.has_value());
    const double se = std::sqrt(row.variance / row.n_defined);
    EXPECT_LE(std::abs(row.bias), 3 * se + 1e-12) << row.design << " " << row.estimator;
  }
}

TEST(ExperimentTest, DeterministicAcrossWorkerCounts) {
  const auto cfg = ParseConfig(SmallConfig().dump());
  const auto one = RunExperiment(cfg, 1);
  const auto three = RunExperiment(cfg, 3);
  EXPECT_EQ(PerReplicationText(one), PerReplicationText(three));
  std::ostringstream a, b;
  WriteTruthCsv(a, one);
  WriteTruthCsv(b, three);
  EXPECT_EQ(a.str(), b.str());
}

TEST(ExperimentTest, TruthMatchesFullRun) {
  const auto cfg = ParseConfig(SmallConfig().dump());
  const auto full = RunExperiment(cfg, 2);
  const auto truth = RunTruth(cfg, 2);
  EXPECT_TRUE(truth.records.empty());
  ASSERT_EQ(truth.truths.size(), full.truths.size());
  for (size_t i = 0; i < truth.truths.size(); ++i) {
    EXPECT_EQ(truth.truths[i].mean_treated, full.truths[i].mean_treated);
    EXPECT_EQ(truth.truths[i].mean_control, full.truths[i].mean_control);
  }
}

TEST(ExperimentTest, DesignsShareNoiseAndGraph) {
  // With beta = gamma = 0 and identity noise, outcomes depend on noise only,
  // so two differently named but identical designs give identical estimates.
  auto j = SmallConfig();
  j["designs"] = json::parse(R"([{"name": "a", "kind": "independent"},
                                 {"name": "b", "kind": "graph_cluster"},
                                 {"name": "c", "kind": "graph_cluster"}])");
  j["response"] = json::parse(
      R"({"alpha": 0.3, "beta": [0.0], "gamma": [0.0], "steps": 2, "link": "identity"})");
  j["estimators"] = {"diff_in_means"};
  const auto result = RunExperiment(ParseConfig(j.dump()), 1);
  std::map<std::pair<int, int>, std::map<std::string, double>> est;
  for (const auto& r : result.records) est[{r.cell, r.replication}][r.design] = r.estimate;
  int differ = 0;
  for (const auto& [key, by_design] : est) {
    differ += by_design.at("b") != by_design.at("c");  // assignment streams differ
  }
  EXPECT_GT(differ, 0);
  // Truth arms share noise exactly.
  for (const auto& t : result.truths) EXPECT_NEAR(t.ate(), 0.0, 1e-12);
}

TEST(ExperimentTest, ComponentClustersRecoverTruthExactly) {
  // Two disjoint 6-cycles, one cluster each, deterministic identity outcomes.
  const auto dir = std::filesystem::temp_directory_path() / "netexp_exact_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream g(dir / "g.txt");
    for (int c = 0; c < 2; ++c) {
      for (int i = 0; i < 6; ++i) g << 6 * c + i << ' ' << 6 * c + (i + 1) % 6 << '\n';
    }
    std::ofstream cl(dir / "c.txt");
    for (int v = 0; v < 12; ++v) cl << v / 6 << '\n';
  }
  json j = {{"graph", {{"kind", "edge_list"}, {"path", (dir / "g.txt").string()}}},
            {"clustering", {{"kind", "file"}, {"path", (dir / "c.txt").string()}}},
            {"designs", {{{"name", "gcr"}, {"kind", "balanced_graph_cluster"}}}},
            {"response",
             {{"alpha", 0.2}, {"beta", {0.7}}, {"gamma", {0.5, 1.0}}, {"steps", 3},
              {"link", "identity"}, {"identity_noise", false}}},
            {"estimators", {"diff_in_means"}},
            {"replications", 20},
            {"seed", 1}};
  const auto result = RunExperiment(ParseConfig(j.dump()), 1);
  for (const auto& r : result.records) {
    ASSERT_TRUE(r.defined);
    const double tau = result.truths[r.cell * 20 + r.replication].ate();
    const double gamma = result.cells[r.cell].gamma;
    const double want = 0.7 * (1 + gamma + gamma * gamma);
    EXPECT_NEAR(tau, want, 1e-12);
    EXPECT_NEAR(r.estimate, tau, 1e-12);
  }
  std::filesystem::remove_all(dir);
}

TEST(ExperimentTest, RerandomizePolicy) {
  auto j = SmallConfig();
  j["graph"] = {{"kind", "small_world"}, {"n", 12}, {"k", 4}, {"p_rw", {0.0}}};
  j["clustering"] = {{"kind", "epsilon_net"}, {"epsilon", 3}};
  j["designs"] = json::parse(R"([{"name": "ind", "kind": "independent"},
                                 {"name": "gcr", "kind": "graph_cluster"}])");
  j["exposures"] = json::parse(R"([{"kind": "ntr"}])");
  j["estimators"] = {"diff_in_means", "exposure_diff_in_means"};
  j["response"]["beta"] = {1.0};
  j["response"]["gamma"] = {0.5};
  j["replications"] = 100;
  const auto excl = Summarize(RunExperiment(ParseConfig(j.dump()), 1), {"ind", "diff_in_means"});
  int undefined = 0;
  for (const auto& row : excl) undefined += row.n_undefined;
  EXPECT_GT(undefined, 0);

  j["undefined_policy"] = "rerandomize";
  // Both NTR arms are non-empty in only ~1.4% of draws here.
  j["max_rerandomize"] = 3000;
  const auto rer = Summarize(RunExperiment(ParseConfig(j.dump()), 1), {"ind", "diff_in_means"});
  for (const auto& row : rer) EXPECT_EQ(row.n_undefined, 0) << row.design << row.estimator;
}

TEST(ExperimentTest, FixedGraphPolicy) {
  auto j = SmallConfig();
  j["graph"]["policy"] = "fixed";
  j["clustering"]["policy"] = "fixed";
  j["response"] = json::parse(R"({"alpha": 0.1, "beta": [1.0], "gamma": [0.5], "steps": 2,
                                  "link": "identity", "identity_noise": false})");
  const auto result = RunTruth(ParseConfig(j.dump()), 1);
  // Deterministic outcomes on one graph: every replication has the same truth.
  for (const auto& t : result.truths) {
    EXPECT_EQ(t.ate(), result.truths[t.cell * 40].ate());
  }
  j["graph"]["policy"] = "per_replication";
  j["clustering"].erase("policy");
  const auto varying = RunTruth(ParseConfig(j.dump()), 1);
  // Per-replication graphs still give 1.5 exactly: no isolated vertices.
  for (const auto& t : varying.truths) EXPECT_NEAR(t.ate(), 1.5, 1e-12);
}

TEST(ExperimentTest, TrajectoryDump) {
  auto j = SmallConfig();
  j["graph"]["p_rw"] = {0.1};
  j["response"]["beta"] = {1.0};
  j["response"]["gamma"] = {0.5};
  const auto cfg = ParseConfig(j.dump());
  const auto dir = std::filesystem::temp_directory_path() / "netexp_traj_test";
  std::filesystem::remove_all(dir);
  WriteTrajectories(cfg, 0, dir);
  std::ifstream in(dir / "trajectories" / "cell0_gcr.csv");
  ASSERT_TRUE(in.good());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,vertex,y");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 4 * 200);
  std::filesystem::remove_all(dir);
}

TEST(ResolveWorkersTest, EnvironmentCap) {
  unsetenv("NETEXP_WORKERS");
  EXPECT_EQ(ResolveWorkers(5), 5);
  setenv("NETEXP_WORKERS", "2", 1);
  EXPECT_EQ(ResolveWorkers(5), 2);
  EXPECT_EQ(ResolveWorkers(1), 1);
  setenv("NETEXP_WORKERS", "zero", 1);
  EXPECT_THROW(ResolveWorkers(5), std::exception);
  unsetenv("NETEXP_WORKERS");
  EXPECT_GE(ResolveWorkers(std::nullopt), 1);
}

}  // namespace
}  // namespace netexp
