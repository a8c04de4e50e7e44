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

#include "netexp/summary.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "netexp/config.h"
#include "netexp/csv.h"
#include "netexp/rng.h"

namespace netexp {
namespace {

// One cell, `truth` constant across replications.
ExperimentResult Fixture(double truth, const std::vector<double>& estimates,
                         const std::string& design = "d", const std::string& estimator = "e") {
  ExperimentResult r;
  r.cells.push_back({"small_world", "p_rw", 0.01, 0.5, 0.25});
  for (size_t i = 0; i < estimates.size(); ++i) {
    r.truths.push_back({0, static_cast<int>(i), truth, 0.0});
    r.records.push_back({0, static_cast<int>(i), design, estimator, estimates[i], true});
  }
  return r;
}

TEST(SummarizeTest, ExactEstimates) {
  const auto rows = Summarize(Fixture(0.5, {0.5, 0.5, 0.5}), {"d", "e"});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].bias, 0.0);
  EXPECT_DOUBLE_EQ(rows[0].rmse, 0.0);
  EXPECT_DOUBLE_EQ(*rows[0].relative_bias, 0.0);
  EXPECT_FALSE(rows[0].pct_change_rmse.has_value());  // baseline rmse is zero
}

TEST(SummarizeTest, SymmetricSpread) {
  const auto rows = Summarize(Fixture(2.0, {3.0, 1.0}), {"d", "e"});
  EXPECT_DOUBLE_EQ(rows[0].bias, 0.0);
  EXPECT_DOUBLE_EQ(rows[0].rmse, 1.0);
  EXPECT_DOUBLE_EQ(rows[0].variance, 1.0);
  EXPECT_DOUBLE_EQ(*rows[0].pct_change_rmse, 0.0);
}

TEST(SummarizeTest, ZeroTruthHasNoRelativeBias) {
  const auto rows = Summarize(Fixture(0.0, {0.1, -0.3}), {"d", "e"});
  EXPECT_FALSE(rows[0].relative_bias.has_value());
}

TEST(SummarizeTest, MatchesOnePassReference) {
  CounterRng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int reps = 2 + static_cast<int>(rng.UniformInt(300));
    ExperimentResult r;
    r.cells.push_back({"dcbm", "p_comm", 0.2, 1.0, 0.5});
    // Per-replication truths vary; the cell truth is their mean.
    int undefined = 0;
    for (int i = 0; i < reps; ++i) {
      r.truths.push_back({0, i, 0.3 + 0.05 * rng.Normal(), 0.1 + 0.05 * rng.Normal()});
      const bool defined = rng.Bernoulli(0.9);
      undefined += !defined;
      r.records.push_back({0, i, "base", "e", 0.15 + 0.1 * rng.Normal(), true});
      r.records.push_back({0, i, "alt", "e", defined ? 0.2 + 0.05 * rng.Normal() : 0.0, defined});
    }
    const auto rows = Summarize(r, {"base", "e"});
    ASSERT_EQ(rows.size(), 2u);

    // Welford reference.
    double truth_mean = 0.0, truth_m2 = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double x = r.truths[i].ate();
      const double d = x - truth_mean;
      truth_mean += d / (i + 1);
      truth_m2 += d * (x - truth_mean);
    }
    double rmse[2] = {0, 0}, bias[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      double mean = 0.0, m2 = 0.0, sq = 0.0;
      int n = 0;
      for (int i = 0; i < reps; ++i) {
        const auto& rec = r.records[2 * i + k];
        if (!rec.defined) continue;
        ++n;
        const double d = rec.estimate - mean;
        mean += d / n;
        m2 += d * (rec.estimate - mean);
        sq += (rec.estimate - truth_mean) * (rec.estimate - truth_mean);
      }
      const auto& row = rows[k];
      EXPECT_EQ(row.n_defined, n);
      EXPECT_NEAR(row.truth, truth_mean, 1e-12);
      EXPECT_NEAR(row.truth_se, std::sqrt(truth_m2 / (reps - 1) / reps), 1e-12);
      EXPECT_NEAR(row.mean_estimate, mean, 1e-12);
      EXPECT_NEAR(row.bias, mean - truth_mean, 1e-12);
      EXPECT_NEAR(row.variance, m2 / n, 1e-12);
      EXPECT_NEAR(row.rmse, std::sqrt(sq / n), 1e-12);
      EXPECT_NEAR(row.rmse * row.rmse, row.bias * row.bias + row.variance, 1e-12);
      EXPECT_NEAR(*row.relative_bias, (mean - truth_mean) / truth_mean, 1e-12);
      rmse[k] = std::sqrt(sq / n);
      bias[k] = mean - truth_mean;
    }
    EXPECT_EQ(rows[1].n_undefined, undefined);
    EXPECT_NEAR(*rows[1].pct_change_rmse, 100.0 * (rmse[1] / rmse[0] - 1.0), 1e-10);
    EXPECT_NEAR(*rows[1].bias_change, std::abs(bias[1]) - std::abs(bias[0]), 1e-12);
    EXPECT_NEAR(*rows[0].pct_change_rmse, 0.0, 1e-12);
  }
}

TEST(SummarizeTest, AllUndefinedIsMissing) {
  auto r = Fixture(0.5, {1.0, 2.0});
  for (auto& rec : r.records) rec.defined = false;
  const auto rows = Summarize(r, {"d", "e"});
  EXPECT_TRUE(rows[0].missing);
  EXPECT_EQ(rows[0].n_undefined, 2);
  std::ostringstream out;
  WriteSummaryCsv(out, rows);
  EXPECT_NE(out.str().find(",0,2,1,"), std::string::npos) << out.str();
}

TEST(OutputTest, RoundTripThroughFiles) {
  const auto cfg = ParseConfig(R"({
    "graph": {"kind": "small_world", "n": 60, "k": 4, "p_rw": [0.0, 0.1]},
    "clustering": {"kind": "epsilon_net", "epsilon": 2},
    "designs": [{"name": "ind", "kind": "independent"}, {"name": "gcr", "kind": "graph_cluster"}],
    "response": {"alpha": -1.0, "beta": [0.5, 1.0], "gamma": [0.5], "steps": 2},
    "exposures": [{"kind": "fntr", "lambda": 0.5}],
    "estimators": ["diff_in_means", "hajek"],
    "replications": 15,
    "seed": 11
  })");
  const auto result = RunExperiment(cfg, 1);
  const auto dir = std::filesystem::temp_directory_path() / "netexp_output_test";
  std::filesystem::remove_all(dir);
  WriteRunOutputs(dir, cfg, result);
  for (const char* f : {"per_replication.csv", "truth.csv", "summary.csv", "plot_data.csv",
                        "metadata.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
  const auto back = ReadResults(dir);
  std::ostringstream a, b;
  WritePerReplicationCsv(a, result);
  WritePerReplicationCsv(b, back);
  EXPECT_EQ(a.str(), b.str());
  const auto baseline = ReadBaseline(dir);
  EXPECT_EQ(baseline.design, "ind");
  EXPECT_EQ(baseline.estimator, "diff_in_means");
  std::ostringstream s1, s2;
  WriteSummaryCsv(s1, Summarize(result, baseline));
  WriteSummaryCsv(s2, Summarize(back, baseline));
  EXPECT_EQ(s1.str(), s2.str());
  std::ifstream disk(dir / "summary.csv");
  std::stringstream disk_text;
  disk_text << disk.rdbuf();
  EXPECT_EQ(disk_text.str(), s1.str());

  // Plot data is long format over the full grid axes.
  std::ifstream plot_in(dir / "plot_data.csv");
  const auto plot = ReadCsv(plot_in, "plot_data.csv");
  EXPECT_EQ(plot.header,
            (std::vector<std::string>{"graph_kind", "graph_param_name", "graph_param", "beta",
                                      "gamma", "design", "estimator", "metric", "value"}));
  std::set<std::string> params, metrics;
  for (const auto& row : plot.rows) {
    params.insert(row[2]);
    metrics.insert(row[7]);
  }
  EXPECT_EQ(params, (std::set<std::string>{"0", "0.1"}));
  EXPECT_TRUE(metrics.count("pct_change_rmse"));
  EXPECT_TRUE(metrics.count("relative_bias"));
  std::filesystem::remove_all(dir);
}

TEST(MetadataTest, PinsRngAndSeed) {
  const auto cfg = ParseConfig(R"({
    "graph": {"kind": "small_world", "n": 20, "k": 4, "p_rw": [0.0]},
    "clustering": {"kind": "singleton"},
    "designs": [{"kind": "independent"}],
    "response": {"alpha": 0, "beta": [1], "gamma": [0], "steps": 1},
    "estimators": ["diff_in_means"],
    "replications": 1,
    "seed": 18446744073709551615
  })");
  const std::string meta = MetadataJson(cfg);
  EXPECT_NE(meta.find("\"rng\": \"splitmix64-counter\""), std::string::npos) << meta;
  EXPECT_NE(meta.find("18446744073709551615"), std::string::npos);
  EXPECT_NE(meta.find("\"version\""), std::string::npos);
}

TEST(CsvTest, FormatAndParse) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(FormatDouble(-2.5), "-2.5");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(ParseDouble(FormatDouble(x), "x"), x);
  std::istringstream in("a,b,c\n1,,3\n");
  const auto t = ReadCsv(in, "t");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][1], "");
  EXPECT_EQ(t.Column("c"), 2);
  std::istringstream bad("a,b\n1\n");
  EXPECT_THROW(ReadCsv(bad, "bad"), std::exception);
}

}  // namespace
}  // namespace netexp
