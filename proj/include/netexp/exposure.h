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

#ifndef NETEXP_EXPOSURE_H_
#define NETEXP_EXPOSURE_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "netexp/clustering.h"
#include "netexp/design.h"
#include "netexp/graph.h"

namespace netexp {

enum class ExposureKind {
  kItr,          // own assignment only
  kFntr,         // at least ceil(lambda k_i) neighbors match
  kNtr,          // every neighbor matches
  kClusterFntr,  // at least ceil(lambda |J_i|) neighboring clusters match whole
};

struct ExposureSpec {
  ExposureKind kind = ExposureKind::kItr;
  double lambda = 0.0;

  static ExposureSpec Itr() { return {ExposureKind::kItr, 0.0}; }
  static ExposureSpec Fntr(double lambda) { return {ExposureKind::kFntr, lambda}; }
  static ExposureSpec Ntr() { return {ExposureKind::kNtr, 1.0}; }
  static ExposureSpec ClusterFntr(double lambda) {
    return {ExposureKind::kClusterFntr, lambda};
  }

  bool vertex_level() const { return kind != ExposureKind::kClusterFntr; }
  // Fraction of J_i that must match; ITR is 0 and NTR is 1.
  double effective_lambda() const;
  // e.g. "itr", "fntr0.75", "ntr", "cfntr0.5".
  std::string Label() const;
};

// ceil(lambda * set_size), robust to rounding in the product.
int ExposureThreshold(double lambda, int set_size);

struct EffectiveSets {
  std::vector<uint8_t> treated;  // g_i(Z) = g_i(1)
  std::vector<uint8_t> control;  // g_i(Z) = g_i(0)
};

// Per-vertex match sets J_i and thresholds l_i for one graph and spec.
// Keeps references to `g` and `clustering`; both must outlive the model.
class ExposureModel {
 public:
  ExposureModel(const Graph& g, const ExposureSpec& spec, const Clustering* clustering = nullptr);

  const ExposureSpec& spec() const { return spec_; }
  int threshold(int i) const { return threshold_[i]; }
  // Neighbors (vertex-level specs) or neighboring clusters other than C(i).
  std::span<const int> match_set(int i) const;

  bool Indicator(std::span<const uint8_t> z, int side, int i) const;
  EffectiveSets Indicators(std::span<const uint8_t> z) const;

 private:
  // 0 or 1 when every member of the cluster has that value, 2 when mixed.
  std::vector<uint8_t> ClusterStates(std::span<const uint8_t> z) const;
  bool Matches(std::span<const uint8_t> z, std::span<const uint8_t> cluster_state, int side,
               int i) const;

  const Graph* graph_;
  const Clustering* clustering_;
  ExposureSpec spec_;
  std::vector<int> threshold_;
  std::vector<std::vector<int>> cluster_sets_;
};

// Single-vertex convenience wrapper around ExposureModel.
bool EffectiveIndicator(const ExposureSpec& spec, const Graph& g, const Clustering* clustering,
                        std::span<const uint8_t> z, int side, int i);

struct ExposureProbabilities {
  std::vector<double> pi1;
  std::vector<double> pi0;

  double pi(int side, int i) const { return side ? pi1[i] : pi0[i]; }
};

// Independent Bernoulli(q) assignment with a vertex-level spec:
// pi_i(1) = q P(Bin(k_i, q) >= l_i), pi_i(0) = (1 - q) P(Bin(k_i, 1 - q) >= l_i).
ExposureProbabilities ExposureProbIndependent(const Graph& g, const ExposureSpec& spec, double q);

// Graph cluster randomization with iid Bernoulli(q) clusters. Exact, by
// convolving the match count over the clusters touching each neighborhood.
ExposureProbabilities ExposureProbCluster(const Graph& g, const Clustering& clustering,
                                          const ExposureSpec& spec, double q);

inline constexpr uint64_t kDefaultEnumerationLimit = uint64_t{1} << 20;

// Exact probabilities by enumerating every design outcome. ClusterFNTR uses
// `exposure_clustering`, defaulting to the design's clustering. Throws
// std::length_error above `max_outcomes`.
ExposureProbabilities ExposureProbBruteForce(const Graph& g, const Design& design,
                                             const ExposureSpec& spec,
                                             const Clustering* exposure_clustering = nullptr,
                                             uint64_t max_outcomes = kDefaultEnumerationLimit);

// Closed form or dynamic program where available, enumeration otherwise.
// `exposure_clustering` as for ExposureProbBruteForce.
ExposureProbabilities ExposureProbForDesign(const Graph& g, const Design& design,
                                            const ExposureSpec& spec,
                                            const Clustering* exposure_clustering = nullptr);

// CSV with header vertex,pi1,pi0.
void WriteExposureCsv(std::ostream& out, const ExposureProbabilities& probs);

}  // namespace netexp

#endif  // NETEXP_EXPOSURE_H_
