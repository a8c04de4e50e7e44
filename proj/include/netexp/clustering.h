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

#ifndef NETEXP_CLUSTERING_H_
#define NETEXP_CLUSTERING_H_

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "netexp/graph.h"
#include "netexp/rng.h"

namespace netexp {

// Vertex -> cluster map with dense ids in [0, num_clusters).
class Clustering {
 public:
  Clustering() = default;

  // Throws std::invalid_argument unless ids are dense and non-negative.
  explicit Clustering(std::vector<int> assignment);

  int num_vertices() const { return static_cast<int>(assignment_.size()); }
  int num_clusters() const { return num_clusters_; }
  int cluster_of(int v) const { return assignment_[v]; }
  const std::vector<int>& assignment() const { return assignment_; }
  // Members of each cluster in increasing vertex order.
  const std::vector<std::vector<int>>& members() const { return members_; }

  bool operator==(const Clustering& other) const {
    return assignment_ == other.assignment_;
  }

 private:
  std::vector<int> assignment_;
  int num_clusters_ = 0;
  std::vector<std::vector<int>> members_;
};

struct NetClustering {
  Clustering clustering;
  // centers[c] is the net center owning cluster c; increasing order.
  std::vector<int> centers;
};

// Epsilon-net clustering. Centers are picked in uniformly random order from
// the vertices not yet within epsilon - 1 hops of an earlier center; every
// vertex then joins its closest center, ties going to the smallest center
// id. Cluster ids follow increasing center id, so epsilon = 1 yields the
// identity map.
NetClustering EpsilonNetClustering(const Graph& g, int epsilon, CounterRng& rng);

Clustering SingletonClustering(int n);

struct NetValidation {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks center separation (>= epsilon hops), coverage within a component
// (<= epsilon - 1 hops) and that each vertex sits with one of its closest
// centers.
NetValidation ValidateNet(const Graph& g, const Clustering& clustering,
                          std::span<const int> centers, int epsilon);

// One cluster id per line, line i for vertex i.
Clustering ReadClustering(std::istream& in);
void WriteClustering(std::ostream& out, const Clustering& clustering);

}  // namespace netexp

#endif  // NETEXP_CLUSTERING_H_
