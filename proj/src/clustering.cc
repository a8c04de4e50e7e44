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

#include "netexp/clustering.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "netexp/errors.h"

namespace netexp {

Clustering::Clustering(std::vector<int> assignment) : assignment_(std::move(assignment)) {
  int max_id = -1;
  for (int c : assignment_) {
    if (c < 0) throw std::invalid_argument("negative cluster id");
    max_id = std::max(max_id, c);
  }
  num_clusters_ = max_id + 1;
  members_.assign(num_clusters_, {});
  for (int v = 0; v < num_vertices(); ++v) members_[assignment_[v]].push_back(v);
  for (int c = 0; c < num_clusters_; ++c) {
    if (members_[c].empty()) {
      throw std::invalid_argument("cluster id " + std::to_string(c) + " has no members");
    }
  }
}

NetClustering EpsilonNetClustering(const Graph& g, int epsilon, CounterRng& rng) {
  if (epsilon < 1) throw std::invalid_argument("epsilon must be at least 1");
  const int n = g.num_vertices();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.UniformInt(i + 1)]);
  }

  std::vector<char> removed(n, 0);
  std::vector<int> centers;
  std::vector<int> dist(n, kUnreached);
  std::vector<int> touched;
  std::vector<int> frontier;
  std::vector<int> next;
  for (int v : order) {
    if (removed[v]) continue;
    centers.push_back(v);
    // Truncated BFS removing the (epsilon - 1)-ball around the new center.
    removed[v] = 1;
    dist[v] = 0;
    touched.assign(1, v);
    frontier.assign(1, v);
    for (int d = 1; d < epsilon && !frontier.empty(); ++d) {
      next.clear();
      for (int u : frontier) {
        for (int w : g.neighbors(u)) {
          if (dist[w] != kUnreached) continue;
          dist[w] = d;
          removed[w] = 1;
          touched.push_back(w);
          next.push_back(w);
        }
      }
      frontier.swap(next);
    }
    for (int u : touched) dist[u] = kUnreached;
  }
  std::sort(centers.begin(), centers.end());

  // Multi-source BFS. A vertex at distance d inherits the smallest owner
  // among its neighbors at distance d - 1, which is the smallest id among
  // its closest centers.
  std::vector<int> owner(n, -1);
  frontier.clear();
  for (int c = 0; c < static_cast<int>(centers.size()); ++c) {
    owner[centers[c]] = c;
    dist[centers[c]] = 0;
    frontier.push_back(centers[c]);
  }
  for (int d = 1; !frontier.empty(); ++d) {
    next.clear();
    for (int u : frontier) {
      for (int w : g.neighbors(u)) {
        if (dist[w] == kUnreached) {
          dist[w] = d;
          owner[w] = owner[u];
          next.push_back(w);
        } else if (dist[w] == d) {
          owner[w] = std::min(owner[w], owner[u]);
        }
      }
    }
    frontier.swap(next);
  }
  return {Clustering(std::move(owner)), std::move(centers)};
}

Clustering SingletonClustering(int n) {
  if (n < 1) throw std::invalid_argument("singleton clustering needs n >= 1");
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return Clustering(std::move(ids));
}

NetValidation ValidateNet(const Graph& g, const Clustering& clustering,
                          std::span<const int> centers, int epsilon) {
  NetValidation result;
  auto report = [&](const std::string& what) {
    result.ok = false;
    result.violations.push_back(what);
  };
  const int n = g.num_vertices();
  if (clustering.num_vertices() != n) {
    report("clustering covers " + std::to_string(clustering.num_vertices()) +
           " vertices, graph has " + std::to_string(n));
    return result;
  }
  if (static_cast<int>(centers.size()) != clustering.num_clusters()) {
    report("expected one center per cluster");
    return result;
  }
  for (int c = 0; c < clustering.num_clusters(); ++c) {
    if (centers[c] < 0 || centers[c] >= n || clustering.cluster_of(centers[c]) != c) {
      report("center of cluster " + std::to_string(c) + " is not a member");
    }
  }
  if (!result.ok) return result;

  const int unbounded = std::numeric_limits<int>::max();
  std::vector<std::vector<int>> from_center;
  from_center.reserve(centers.size());
  for (int c : centers) from_center.push_back(BfsDistances(g, c, unbounded));

  for (size_t a = 0; a < centers.size(); ++a) {
    for (size_t b = a + 1; b < centers.size(); ++b) {
      const int d = from_center[a][centers[b]];
      if (d != kUnreached && d < epsilon) {
        report("centers " + std::to_string(centers[a]) + " and " +
               std::to_string(centers[b]) + " are " + std::to_string(d) + " hops apart");
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    int best = unbounded;
    for (const auto& dist : from_center) {
      if (dist[v] != kUnreached) best = std::min(best, dist[v]);
    }
    if (best == unbounded || best > epsilon - 1) {
      report("vertex " + std::to_string(v) + " is not within epsilon - 1 of a center");
      continue;
    }
    if (from_center[clustering.cluster_of(v)][v] != best) {
      report("vertex " + std::to_string(v) + " is not with a closest center");
    }
  }
  return result;
}

Clustering ReadClustering(std::istream& in) {
  std::vector<int> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    int id = -1;
    std::string extra;
    if (!(fields >> id) || (fields >> extra) || id < 0) {
      throw ConfigError("clustering line " + std::to_string(line_no) +
                        ": expected one non-negative cluster id");
    }
    ids.push_back(id);
  }
  try {
    return Clustering(std::move(ids));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("clustering file: ") + e.what());
  }
}

void WriteClustering(std::ostream& out, const Clustering& clustering) {
  for (int c : clustering.assignment()) out << c << '\n';
}

}  // namespace netexp
