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

// Small fixtures and brute-force oracles shared by the unit tests.

#ifndef NETEXP_TESTS_TEST_UTIL_H_
#define NETEXP_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <vector>

#include "netexp/clustering.h"
#include "netexp/graph.h"
#include "netexp/rng.h"

namespace netexp::testing {

inline Graph Cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::FromEdges(n, edges);
}

inline Graph Complete(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::FromEdges(n, edges);
}

inline Graph Star(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::FromEdges(leaves + 1, edges);
}

// G(n, p), possibly disconnected.
inline Graph RandomGraph(int n, double p, CounterRng& rng) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.Bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph::FromEdges(n, edges);
}

// Uniform random labels in [0, k), relabeled densely.
inline Clustering RandomClustering(int n, int k, CounterRng& rng) {
  std::vector<int> raw(n);
  for (auto& c : raw) c = static_cast<int>(rng.UniformInt(k));
  std::vector<int> map(k, -1);
  int next = 0;
  for (auto& c : raw) {
    if (map[c] < 0) map[c] = next++;
    c = map[c];
  }
  return Clustering(raw);
}

// Contiguous blocks of equal size after a random permutation.
inline Clustering RandomEqualClustering(int n, int num_clusters, CounterRng& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> labels(n);
  const int size = n / num_clusters;
  for (int r = 0; r < n; ++r) labels[perm[r]] = r / size;
  // Relabel by first appearance so ids are dense in vertex order.
  std::vector<int> map(num_clusters, -1);
  int next = 0;
  for (auto& c : labels) {
    if (map[c] < 0) map[c] = next++;
    c = map[c];
  }
  return Clustering(labels);
}

inline constexpr int kInf = 1 << 29;

inline std::vector<std::vector<int>> FloydWarshall(const Graph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j : g.neighbors(i)) d[i][j] = 1;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

inline std::vector<uint8_t> Bits(uint64_t mask, int n) {
  std::vector<uint8_t> z(n);
  for (int i = 0; i < n; ++i) z[i] = (mask >> i) & 1;
  return z;
}

}  // namespace netexp::testing

#endif  // NETEXP_TESTS_TEST_UTIL_H_
