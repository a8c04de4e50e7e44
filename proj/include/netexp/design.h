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

#ifndef NETEXP_DESIGN_H_
#define NETEXP_DESIGN_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "netexp/clustering.h"
#include "netexp/rng.h"

namespace netexp {

struct IndependentDesign {
  double q = 0.5;
};

struct GraphClusterDesign {
  Clustering clustering;
  double q = 0.5;
};

// Exactly half of the clusters treated, chosen uniformly.
struct BalancedGraphClusterDesign {
  Clustering clustering;
};

// Cluster draw W_c ~ Bernoulli(q_c), per-vertex keep switch X_i ~
// Bernoulli(eta); Z_i = W_{C(i)} when kept and 1 - W_{C(i)} otherwise.
struct HolePunchedDesign {
  Clustering clustering;
  double q = 0.5;
  double eta = 1.0;
  // Optional per-cluster treatment probabilities overriding q.
  std::vector<double> cluster_q;

  double cluster_prob(int c) const { return cluster_q.empty() ? q : cluster_q[c]; }
};

using Design = std::variant<IndependentDesign, GraphClusterDesign,
                            BalancedGraphClusterDesign, HolePunchedDesign>;

// Throws std::invalid_argument when the design is inconsistent with a
// population of n vertices.
void ValidateDesign(const Design& design, int n);

// Clustering carried by the design, or nullptr for independent assignment.
const Clustering* DesignClustering(const Design& design);

std::string DesignKindName(const Design& design);

// Probability that a given vertex is treated.
double MarginalTreatmentProb(const Design& design, int vertex);

struct Assignment {
  std::vector<uint8_t> z;
  // Cluster-level draws; empty for independent assignment.
  std::vector<uint8_t> cluster_w;
  // Hole-punch keep switches; empty unless hole punched.
  std::vector<uint8_t> keep_x;
};

Assignment DrawAssignment(const Design& design, int n, CounterRng& rng);

// Probability of the recorded random draws (W, X, or Z for independent
// assignment). Throws std::invalid_argument if `a` is inconsistent with the
// design.
double AssignmentProbability(const Design& design, const Assignment& a);
double AssignmentLogProb(const Design& design, const Assignment& a);

// Number of distinct draw outcomes the design can produce.
uint64_t DesignOutcomeCount(const Design& design, int n);

// Visits every draw outcome with its probability. Throws std::length_error
// if the outcome count exceeds `max_outcomes`.
void EnumerateDesign(const Design& design, int n, uint64_t max_outcomes,
                     const std::function<void(const Assignment&, double)>& visit);

// Line i holds Z_i.
void WriteAssignment(std::ostream& out, const Assignment& a);

}  // namespace netexp

#endif  // NETEXP_DESIGN_H_
