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

#ifndef NETEXP_CONFIG_H_
#define NETEXP_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "netexp/exposure.h"
#include "netexp/outcomes.h"

namespace netexp {

enum class GraphKind { kSmallWorld, kDcbm, kEdgeList };

struct GraphConfig {
  GraphKind kind = GraphKind::kSmallWorld;
  int n = 0;
  // small world
  int k = 0;
  std::vector<double> p_rw;
  // dcbm
  int n_comm = 1;
  std::vector<double> p_comm;
  double degree_mean = 10.0;
  double degree_variance = 0.0;
  // edge list
  std::filesystem::path path;
  // Draw one graph per parameter value instead of one per replication.
  bool fixed = false;

  std::string KindName() const;
  // Name and values of the swept graph parameter (p_rw, p_comm or none).
  std::string ParamName() const;
  std::vector<double> ParamValues() const;
};

enum class ClusteringKind { kEpsilonNet, kSingleton, kFile };

struct ClusteringConfig {
  ClusteringKind kind = ClusteringKind::kEpsilonNet;
  int epsilon = 3;
  std::filesystem::path path;
  bool fixed = false;
};

enum class DesignKind { kIndependent, kGraphCluster, kBalancedGraphCluster, kHolePunched };

struct DesignConfig {
  std::string name;
  DesignKind kind = DesignKind::kIndependent;
  double q = 0.5;
  double eta = 1.0;
  std::vector<double> cluster_q;
};

struct ResponseConfig {
  double alpha = 0.0;
  std::vector<double> beta;
  std::vector<double> gamma;
  int steps = 1;
  Link link = Link::kProbit;
  bool identity_noise = true;
};

enum class EstimatorKind { kDiffInMeans, kExposureDiffInMeans, kHajek, kHorvitzThompson };

// One estimator column: a kind plus, for exposure-based kinds, a spec.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kDiffInMeans;
  ExposureSpec exposure;

  std::string Label() const;
};

enum class UndefinedPolicy { kExclude, kRerandomize };

struct ExperimentConfig {
  GraphConfig graph;
  ClusteringConfig clustering;
  std::vector<DesignConfig> designs;
  ResponseConfig response;
  std::vector<ExposureSpec> exposures;
  std::vector<EstimatorKind> estimator_kinds;
  int replications = 1;
  uint64_t seed = 0;
  UndefinedPolicy undefined_policy = UndefinedPolicy::kExclude;
  int max_rerandomize = 100;
  std::string baseline_design;
  std::string baseline_estimator = "diff_in_means";
  std::filesystem::path output_dir = "results";
  bool keep_trajectories = false;
  // Verbatim configuration text, echoed into run metadata.
  std::string source_text;

  // Estimator columns in output order: diff_in_means first, then each
  // exposure-based kind crossed with each exposure spec.
  std::vector<EstimatorSpec> Estimators() const;
};

// Parses a JSON configuration document. Relative input paths resolve
// against `base_dir`. Throws ConfigError on unknown keys, bad values or
// inconsistent settings.
ExperimentConfig ParseConfig(const std::string& text,
                             const std::filesystem::path& base_dir = {});
ExperimentConfig LoadConfig(const std::filesystem::path& path);

}  // namespace netexp

#endif  // NETEXP_CONFIG_H_
