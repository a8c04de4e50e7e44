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

#ifndef NETEXP_SUMMARY_H_
#define NETEXP_SUMMARY_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "netexp/config.h"
#include "netexp/experiment.h"

namespace netexp {

// One (cell, design, estimator) row. Moments are taken over the defined
// replications; variance uses denominator n_defined so that
// rmse^2 == bias^2 + variance.
struct SummaryRow {
  CellKey cell;
  std::string design;
  std::string estimator;
  double truth = 0.0;
  double truth_se = 0.0;
  int n_defined = 0;
  int n_undefined = 0;
  // All replications undefined: the moment fields below are meaningless.
  bool missing = false;
  double mean_estimate = 0.0;
  double bias = 0.0;
  std::optional<double> relative_bias;  // absent when truth == 0
  double variance = 0.0;
  double rmse = 0.0;
  // 100 * (rmse / baseline rmse - 1) and |bias| - |baseline bias|.
  std::optional<double> pct_change_rmse;
  std::optional<double> bias_change;
};

struct Baseline {
  std::string design;
  std::string estimator;
};

std::vector<SummaryRow> Summarize(const ExperimentResult& result, const Baseline& baseline);

void WritePerReplicationCsv(std::ostream& out, const ExperimentResult& result);
void WriteTruthCsv(std::ostream& out, const ExperimentResult& result);
void WriteSummaryCsv(std::ostream& out, const std::vector<SummaryRow>& rows);
// Long format: one line per (cell, design, estimator, metric).
void WritePlotDataCsv(std::ostream& out, const std::vector<SummaryRow>& rows);

std::string MetadataJson(const ExperimentConfig& cfg);

// Writes per_replication.csv (unless empty), truth.csv, summary.csv,
// plot_data.csv and metadata.json into `dir`.
void WriteRunOutputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                     const ExperimentResult& result);

// Reads back per_replication.csv and truth.csv. Throws ConfigError on
// malformed or inconsistent files.
ExperimentResult ReadResults(const std::filesystem::path& dir);
Baseline ReadBaseline(const std::filesystem::path& dir);

}  // namespace netexp

#endif  // NETEXP_SUMMARY_H_
