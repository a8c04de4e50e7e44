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

#ifndef NETEXP_GRAPH_H_
#define NETEXP_GRAPH_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netexp/rng.h"

namespace netexp {

using Edge = std::pair<int, int>;

// Immutable undirected simple graph in compressed adjacency form. Neighbor
// lists are strictly increasing.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on vertices [0, n). Throws std::invalid_argument on
  // self-loops, duplicate edges or out-of-range ids.
  static Graph FromEdges(int n, std::span<const Edge> edges);

  int num_vertices() const { return static_cast<int>(offsets_.size()) - 1; }
  int64_t num_edges() const { return static_cast<int64_t>(adjacency_.size()) / 2; }

  std::span<const int> neighbors(int v) const {
    return {adjacency_.data() + offsets_[v],
            static_cast<size_t>(offsets_[v + 1] - offsets_[v])};
  }
  int degree(int v) const {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }
  bool HasEdge(int u, int v) const;

  // Each edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> Edges() const;

  // Describes the first violated structural invariant, if any.
  std::optional<std::string> InvariantViolation() const;

 private:
  std::vector<int64_t> offsets_{0};
  std::vector<int> adjacency_;
};

struct SmallWorldSpec {
  int n = 0;
  int k = 0;  // even initial degree
  double p_rw = 0.0;
};

struct DcbmSpec {
  int n = 0;
  int n_comm = 1;
  double p_comm = 1.0;  // expected fraction of edges inside a community
  double degree_mean = 10.0;
  double degree_variance = 0.0;
};

struct DcbmSample {
  Graph graph;
  std::vector<int> community;
  std::vector<int> expected_degree;
};

// Watts-Strogatz ring lattice with per-edge rewiring of the far endpoint.
Graph GenerateSmallWorld(const SmallWorldSpec& spec, CounterRng& rng);

// Degree-corrected blockmodel with pairwise Bernoulli edges. Throws
// ConfigError for infeasible parameters.
DcbmSample GenerateDcbm(const DcbmSpec& spec, CounterRng& rng);

inline constexpr int kUnreached = -1;

// Hop distances from `source`; vertices farther than `max_dist` are
// kUnreached.
std::vector<int> BfsDistances(const Graph& g, int source, int max_dist);

// Mean over vertices of triangles(i) / C(k_i, 2), with 0 when k_i < 2.
double ClusteringCoefficient(const Graph& g);

// Fraction of edges whose endpoints share a community.
double WithinCommunityFraction(const Graph& g, std::span<const int> community);

// Connected component id per vertex, ids in order of smallest member.
std::vector<int> ConnectedComponents(const Graph& g);

// Plain-text edge list, one "u v" pair per line with 0-based ids. Blank
// lines and lines starting with '#' are skipped. Throws ConfigError with
// the offending line number on malformed lines, self-loops or duplicates.
// The vertex count is max id + 1 unless `num_vertices` is given.
Graph ReadEdgeList(std::istream& in, std::optional<int> num_vertices = {});
void WriteEdgeList(std::ostream& out, const Graph& g);

}  // namespace netexp

#endif  // NETEXP_GRAPH_H_
