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

#ifndef NETEXP_EXPERIMENT_H_
#define NETEXP_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netexp/config.h"

namespace netexp {

enum class SeedRole : uint64_t {
  kGraph = 1,
  kClustering = 2,
  kAssignment = 3,
  kOutcomeNoise = 4,
};

// Stream seed for one (key, replication, role). The harness passes the
// graph parameters as key for graph and clustering streams, graph
// parameters plus design name for assignment streams, and an empty key for
// outcome noise, so every design, every response cell and the truth runs of
// replication r share one noise path.
uint64_t DeriveSeed(uint64_t base_seed, std::string_view key, int replication, SeedRole role);

// Cell = one graph parameter value crossed with one (beta, gamma) pair.
struct CellKey {
  std::string graph_kind;
  std::string graph_param_name;
  double graph_param = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  bool operator==(const CellKey&) const = default;
};

struct ReplicationRecord {
  int cell = 0;  // index into ExperimentResult::cells
  int replication = 0;
  std::string design;
  std::string estimator;
  double estimate = 0.0;
  bool defined = false;
};

// Realized ATE of replication r: mean outcome under global treatment minus
// global control, on that replication's graph and noise path.
struct TruthRecord {
  int cell = 0;
  int replication = 0;
  double mean_treated = 0.0;
  double mean_control = 0.0;

  double ate() const { return mean_treated - mean_control; }
};

struct ExperimentResult {
  std::vector<CellKey> cells;
  // Sorted by (cell, replication, design order, estimator order).
  std::vector<ReplicationRecord> records;
  // Sorted by (cell, replication).
  std::vector<TruthRecord> truths;
};

// Worker count: the request (or hardware concurrency) capped by the
// NETEXP_WORKERS environment variable when set.
int ResolveWorkers(std::optional<int> requested);

// Runs every cell and replication. Output is identical for any worker count.
ExperimentResult RunExperiment(const ExperimentConfig& cfg, int workers);

// Ground-truth runs only.
ExperimentResult RunTruth(const ExperimentConfig& cfg, int workers);

// Full trajectories of one replication for every cell and design, as
// dir/trajectories/cell<i>_<design>.csv.
void WriteTrajectories(const ExperimentConfig& cfg, int replication,
                       const std::filesystem::path& dir);

}  // namespace netexp

#endif  // NETEXP_EXPERIMENT_H_
