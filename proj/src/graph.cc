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

#include "netexp/graph.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "netexp/errors.h"

namespace netexp {
namespace {

// Resample budget for a rewired endpoint before the lattice edge is kept.
constexpr int kMaxRewireAttempts = 100;

bool Contains(const std::vector<int>& list, int v) {
  return std::find(list.begin(), list.end(), v) != list.end();
}

void EraseValue(std::vector<int>& list, int v) {
  list.erase(std::find(list.begin(), list.end(), v));
}

Graph FromAdjacencySets(const std::vector<std::vector<int>>& adj) {
  std::vector<Edge> edges;
  for (int u = 0; u < static_cast<int>(adj.size()); ++u) {
    for (int v : adj[u]) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return Graph::FromEdges(static_cast<int>(adj.size()), edges);
}

}  // namespace

Graph Graph::FromEdges(int n, std::span<const Edge> edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::vector<int64_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency_[fill[u]++] = v;
    g.adjacency_[fill[v]++] = u;
  }
  for (int v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + g.offsets_[v];
    auto last = g.adjacency_.begin() + g.offsets_[v + 1];
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw std::invalid_argument("duplicate edge at vertex " + std::to_string(v));
    }
  }
  return g;
}

bool Graph::HasEdge(int u, int v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (int u = 0; u < num_vertices(); ++u) {
    for (int v : neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

std::optional<std::string> Graph::InvariantViolation() const {
  const int n = num_vertices();
  for (int u = 0; u < n; ++u) {
    const auto nb = neighbors(u);
    for (size_t idx = 0; idx < nb.size(); ++idx) {
      const int v = nb[idx];
      std::ostringstream msg;
      if (v < 0 || v >= n) {
        msg << "neighbor " << v << " of " << u << " out of range";
        return msg.str();
      }
      if (v == u) {
        msg << "self-loop at " << u;
        return msg.str();
      }
      if (idx > 0 && nb[idx - 1] >= v) {
        msg << "neighbor list of " << u << " not strictly increasing";
        return msg.str();
      }
      if (!HasEdge(v, u)) {
        msg << "edge " << u << "->" << v << " has no reverse";
        return msg.str();
      }
    }
  }
  return std::nullopt;
}

Graph GenerateSmallWorld(const SmallWorldSpec& spec, CounterRng& rng) {
  const int n = spec.n;
  const int k = spec.k;
  if (k <= 0 || k % 2 != 0 || k >= n) {
    throw std::invalid_argument("small world needs even k with 0 < k < n");
  }
  if (!(spec.p_rw >= 0.0 && spec.p_rw <= 1.0)) {
    throw std::invalid_argument("rewiring probability must lie in [0, 1]");
  }
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int d = 1; d <= k / 2; ++d) {
      const int j = (i + d) % n;
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  }
  for (int d = 1; d <= k / 2; ++d) {
    for (int i = 0; i < n; ++i) {
      if (!rng.Bernoulli(spec.p_rw)) continue;
      const int j = (i + d) % n;
      for (int attempt = 0; attempt < kMaxRewireAttempts; ++attempt) {
        const int w = static_cast<int>(rng.UniformInt(n));
        if (w == i || Contains(adj[i], w)) continue;
        EraseValue(adj[i], j);
        EraseValue(adj[j], i);
        adj[i].push_back(w);
        adj[w].push_back(i);
        break;
      }
    }
  }
  return FromAdjacencySets(adj);
}

DcbmSample GenerateDcbm(const DcbmSpec& spec, CounterRng& rng) {
  const int n = spec.n;
  if (n < 2) throw ConfigError("dcbm: need at least 2 vertices");
  if (spec.n_comm < 1) throw ConfigError("dcbm: n_comm must be at least 1");
  if (!(spec.p_comm > 0.0 && spec.p_comm <= 1.0)) {
    throw ConfigError("dcbm: p_comm must lie in (0, 1]");
  }
  if (!(spec.degree_mean > 0.0)) throw ConfigError("dcbm: degree_mean must be positive");
  if (!(spec.degree_variance >= 0.0)) {
    throw ConfigError("dcbm: degree_variance must be non-negative");
  }
  if (spec.degree_mean > n - 1) {
    throw ConfigError("dcbm: degree_mean exceeds n - 1");
  }

  DcbmSample out;
  out.community.resize(n);
  out.expected_degree.resize(n);
  for (int i = 0; i < n; ++i) {
    out.community[i] = static_cast<int>(rng.UniformInt(spec.n_comm));
  }
  // Log-normal moments: mean = exp(mu + s2 / 2), var = (exp(s2) - 1) exp(2 mu + s2).
  const double mean = spec.degree_mean;
  const double s2 = std::log1p(spec.degree_variance / (mean * mean));
  const double mu = std::log(mean) - s2 / 2.0;
  const double sigma = std::sqrt(s2);
  for (int i = 0; i < n; ++i) {
    const double draw = std::exp(mu + sigma * rng.Normal());
    out.expected_degree[i] = std::max(1, static_cast<int>(std::lround(draw)));
  }

  std::vector<double> block_mass(spec.n_comm, 0.0);
  std::vector<double> block_sq(spec.n_comm, 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = out.expected_degree[i];
    block_mass[out.community[i]] += t;
    block_sq[out.community[i]] += t * t;
    total += t;
  }
  double within_pairs = 0.0;  // sum of theta_i theta_j over within pairs i < j
  double sum_block_sq = 0.0;
  for (int c = 0; c < spec.n_comm; ++c) {
    within_pairs += (block_mass[c] * block_mass[c] - block_sq[c]) / 2.0;
    sum_block_sq += block_mass[c] * block_mass[c];
  }
  const double between_pairs = (total * total - sum_block_sq) / 2.0;
  const double edges = total / 2.0;
  double w_in = 0.0;
  double w_out = 0.0;
  if (between_pairs <= 0.0) {
    w_in = edges / within_pairs;
  } else if (within_pairs <= 0.0) {
    w_out = edges / between_pairs;
  } else {
    w_in = spec.p_comm * edges / within_pairs;
    w_out = (1.0 - spec.p_comm) * edges / between_pairs;
  }

  std::vector<Edge> edge_list;
  for (int i = 0; i < n; ++i) {
    const double ti = out.expected_degree[i];
    for (int j = i + 1; j < n; ++j) {
      const double w = out.community[i] == out.community[j] ? w_in : w_out;
      const double p = std::min(1.0, ti * out.expected_degree[j] * w);
      if (rng.Uniform() < p) edge_list.emplace_back(i, j);
    }
  }
  out.graph = Graph::FromEdges(n, edge_list);
  return out;
}

std::vector<int> BfsDistances(const Graph& g, int source, int max_dist) {
  if (source < 0 || source >= g.num_vertices()) {
    throw std::invalid_argument("bfs source out of range");
  }
  std::vector<int> dist(g.num_vertices(), kUnreached);
  dist[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[u] >= max_dist) continue;
    for (int v : g.neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

double ClusteringCoefficient(const Graph& g) {
  const int n = g.num_vertices();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto nb = g.neighbors(i);
    const int64_t k = static_cast<int64_t>(nb.size());
    if (k < 2) continue;
    int64_t links = 0;
    for (size_t a = 0; a < nb.size(); ++a) {
      // Count neighbors of nb[a] that are in nb and come after nb[a].
      const auto other = g.neighbors(nb[a]);
      auto x = nb.begin() + a + 1;
      auto y = std::upper_bound(other.begin(), other.end(), nb[a]);
      while (x != nb.end() && y != other.end()) {
        if (*x < *y) {
          ++x;
        } else if (*y < *x) {
          ++y;
        } else {
          ++links;
          ++x;
          ++y;
        }
      }
    }
    sum += static_cast<double>(links) / (static_cast<double>(k * (k - 1)) / 2.0);
  }
  return sum / n;
}

double WithinCommunityFraction(const Graph& g, std::span<const int> community) {
  int64_t within = 0;
  const auto edges = g.Edges();
  for (const auto& [u, v] : edges) {
    if (community[u] == community[v]) ++within;
  }
  return edges.empty() ? 0.0 : static_cast<double>(within) / edges.size();
}

std::vector<int> ConnectedComponents(const Graph& g) {
  std::vector<int> comp(g.num_vertices(), -1);
  int next = 0;
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u)) {
        if (comp[v] == -1) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

Graph ReadEdgeList(std::istream& in, std::optional<int> num_vertices) {
  std::vector<Edge> edges;
  std::vector<std::vector<int>> seen;
  std::string line;
  int line_no = 0;
  int max_id = -1;
  auto fail = [&](const std::string& why) {
    throw ConfigError("edge list line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) fail("expected two integer ids");
    if (u < 0 || v < 0 || u > 0x7fffffff || v > 0x7fffffff) fail("id out of range");
    if (num_vertices && (u >= *num_vertices || v >= *num_vertices)) {
      fail("id exceeds vertex count");
    }
    if (u == v) fail("self-loop");
    const int a = static_cast<int>(std::min(u, v));
    const int b = static_cast<int>(std::max(u, v));
    if (static_cast<int>(seen.size()) <= a) seen.resize(a + 1);
    if (Contains(seen[a], b)) fail("duplicate edge");
    seen[a].push_back(b);
    edges.emplace_back(a, b);
    max_id = std::max(max_id, b);
  }
  return Graph::FromEdges(num_vertices.value_or(max_id + 1), edges);
}

void WriteEdgeList(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.Edges()) out << u << ' ' << v << '\n';
}

}  // namespace netexp
