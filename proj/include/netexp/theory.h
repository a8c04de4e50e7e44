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

#ifndef NETEXP_THEORY_H_
#define NETEXP_THEORY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "netexp/clustering.h"
#include "netexp/design.h"
#include "netexp/exposure.h"
#include "netexp/graph.h"

namespace netexp {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// E[Y_i(z)] = intercept_i + sum_j coef_ij z_j.
struct LinearOutcomeModel {
  Eigen::VectorXd intercept;
  RowMatrix coef;

  int size() const { return static_cast<int>(intercept.size()); }
  Eigen::VectorXd Mean(std::span<const uint8_t> z) const;
};

// Expected outcomes of the identity-link dynamics after `steps` steps, as a
// linear model. With P = gamma D^{-1} A (zero rows for isolated vertices)
// and S = sum_{q < steps} P^q: coef = beta S, intercept = alpha S 1 +
// P^steps initial_mean.
LinearOutcomeModel LinearInMeansModel(const Graph& g, double alpha, double beta, double gamma,
                                      int steps, const Eigen::VectorXd& initial_mean);

// (1/N) sum_ij B_ij.
double TrueAteLinear(const LinearOutcomeModel& model);

enum class ItrDesign {
  kIndependent,
  kGraphCluster,
  kBalancedGraphCluster,  // fixed equal-size clustering, half the clusters treated
  kBalancedIndependent,   // half the vertices treated
};

// Difference-in-means estimand under the given design, in closed form.
// Cluster designs need `clustering`; the balanced cluster form also needs
// equal cluster sizes and an even cluster count (std::invalid_argument
// otherwise).
double EstimandItr(const LinearOutcomeModel& model, ItrDesign design,
                   const Clustering* clustering = nullptr);

// Balanced cluster estimand averaged over a uniformly random partition into
// `num_clusters` equal-size clusters.
double EstimandItrBalancedRandomPartition(const LinearOutcomeModel& model, int num_clusters);

// Estimand / truth - 1 under graph cluster randomization; the balanced form
// carries the extra factor 1 + 1 / (N_C - 1). Throws std::domain_error when
// the true ATE is zero.
double RelativeBias(const LinearOutcomeModel& model, const Clustering& clustering,
                    bool balanced);

using MeanOutcomeFn = std::function<std::vector<double>(std::span<const uint8_t> z)>;

MeanOutcomeFn LinearMeanOutcome(const LinearOutcomeModel& model);

struct BruteForceEstimand {
  int side = 1;
  // Mean over vertices of E[Y_i | g_i(Z) = g_i(side)]; valid when defined.
  double mu = 0.0;
  bool defined = true;
  std::vector<double> event_probability;
  std::vector<double> conditional_mean;
  // E[Y_i - Y_i(side * 1) | g_i(Z) = g_i(side)].
  std::vector<double> bias_contribution;
};

// Exact conditional expectations by enumerating the design. ClusterFNTR uses
// `exposure_clustering`, defaulting to the design's clustering.
BruteForceEstimand EstimandBruteForce(const Graph& g, const Design& design,
                                      const ExposureSpec& spec, const MeanOutcomeFn& mean_outcome,
                                      int side, const Clustering* exposure_clustering = nullptr,
                                      uint64_t max_outcomes = kDefaultEnumerationLimit);

}  // namespace netexp

#endif  // NETEXP_THEORY_H_
