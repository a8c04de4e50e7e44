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

#include "netexp/design.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace netexp {
namespace {

constexpr uint64_t kSaturated = std::numeric_limits<uint64_t>::max();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

uint64_t PowerOfTwo(int64_t bits) {
  return bits >= 64 ? kSaturated : (uint64_t{1} << bits);
}

uint64_t Binomial(int n, int k) {
  long double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  if (r > static_cast<long double>(kSaturated) / 2) return kSaturated;
  return static_cast<uint64_t>(std::llround(r));
}

void CheckProb(double p, const char* name) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
  }
}

void CheckCovers(const Clustering& c, int n) {
  if (c.num_vertices() != n) {
    throw std::invalid_argument("clustering covers " + std::to_string(c.num_vertices()) +
                                " vertices, expected " + std::to_string(n));
  }
}

double BernoulliProb(uint8_t x, double p) { return x ? p : 1.0 - p; }

void RequireSize(const std::vector<uint8_t>& v, size_t size, const char* what) {
  if (v.size() != size) {
    throw std::invalid_argument(std::string("assignment ") + what + " has wrong length");
  }
}

void FillFromClusters(const Clustering& c, const std::vector<uint8_t>& w,
                      std::vector<uint8_t>& z) {
  z.resize(c.num_vertices());
  for (int v = 0; v < c.num_vertices(); ++v) z[v] = w[c.cluster_of(v)];
}

// Advances a binary vector as a counter; false after the last state.
bool NextBits(std::vector<uint8_t>& bits) {
  for (auto& b : bits) {
    if (b == 0) {
      b = 1;
      return true;
    }
    b = 0;
  }
  return false;
}

// Next combination of `ones` set bits in lexicographic order of positions.
bool NextCombination(std::vector<int>& pos, int n) {
  const int k = static_cast<int>(pos.size());
  int i = k - 1;
  while (i >= 0 && pos[i] == n - k + i) --i;
  if (i < 0) return false;
  ++pos[i];
  for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
  return true;
}

}  // namespace

void ValidateDesign(const Design& design, int n) {
  std::visit(Overloaded{
                 [&](const IndependentDesign& d) { CheckProb(d.q, "q"); },
                 [&](const GraphClusterDesign& d) {
                   CheckProb(d.q, "q");
                   CheckCovers(d.clustering, n);
                 },
                 [&](const BalancedGraphClusterDesign& d) {
                   CheckCovers(d.clustering, n);
                   if (d.clustering.num_clusters() % 2 != 0) {
                     throw std::invalid_argument(
                         "balanced cluster design needs an even number of clusters");
                   }
                 },
                 [&](const HolePunchedDesign& d) {
                   CheckCovers(d.clustering, n);
                   CheckProb(d.q, "q");
                   if (!(d.eta >= 0.0 && d.eta <= 1.0)) {
                     throw std::invalid_argument("eta must lie in [0, 1]");
                   }
                   if (!d.cluster_q.empty()) {
                     if (static_cast<int>(d.cluster_q.size()) != d.clustering.num_clusters()) {
                       throw std::invalid_argument("cluster_q needs one entry per cluster");
                     }
                     for (double p : d.cluster_q) CheckProb(p, "cluster_q entry");
                   }
                 },
             },
             design);
}

const Clustering* DesignClustering(const Design& design) {
  return std::visit(Overloaded{
                        [](const IndependentDesign&) -> const Clustering* { return nullptr; },
                        [](const auto& d) -> const Clustering* { return &d.clustering; },
                    },
                    design);
}

std::string DesignKindName(const Design& design) {
  return std::visit(Overloaded{
                        [](const IndependentDesign&) { return std::string("independent"); },
                        [](const GraphClusterDesign&) { return std::string("graph_cluster"); },
                        [](const BalancedGraphClusterDesign&) {
                          return std::string("balanced_graph_cluster");
                        },
                        [](const HolePunchedDesign&) { return std::string("hole_punched"); },
                    },
                    design);
}

double MarginalTreatmentProb(const Design& design, int vertex) {
  return std::visit(Overloaded{
                        [](const IndependentDesign& d) { return d.q; },
                        [](const GraphClusterDesign& d) { return d.q; },
                        [](const BalancedGraphClusterDesign&) { return 0.5; },
                        [&](const HolePunchedDesign& d) {
                          const double q = d.cluster_prob(d.clustering.cluster_of(vertex));
                          return d.eta * q + (1.0 - d.eta) * (1.0 - q);
                        },
                    },
                    design);
}

Assignment DrawAssignment(const Design& design, int n, CounterRng& rng) {
  Assignment a;
  std::visit(Overloaded{
                 [&](const IndependentDesign& d) {
                   a.z.resize(n);
                   for (auto& zi : a.z) zi = rng.Bernoulli(d.q);
                 },
                 [&](const GraphClusterDesign& d) {
                   a.cluster_w.resize(d.clustering.num_clusters());
                   for (auto& w : a.cluster_w) w = rng.Bernoulli(d.q);
                   FillFromClusters(d.clustering, a.cluster_w, a.z);
                 },
                 [&](const BalancedGraphClusterDesign& d) {
                   const int nc = d.clustering.num_clusters();
                   std::vector<int> ids(nc);
                   for (int c = 0; c < nc; ++c) ids[c] = c;
                   // Partial Fisher-Yates: the first nc / 2 entries are treated.
                   for (int i = 0; i < nc / 2; ++i) {
                     std::swap(ids[i], ids[i + rng.UniformInt(nc - i)]);
                   }
                   a.cluster_w.assign(nc, 0);
                   for (int i = 0; i < nc / 2; ++i) a.cluster_w[ids[i]] = 1;
                   FillFromClusters(d.clustering, a.cluster_w, a.z);
                 },
                 [&](const HolePunchedDesign& d) {
                   const int nc = d.clustering.num_clusters();
                   a.cluster_w.resize(nc);
                   for (int c = 0; c < nc; ++c) a.cluster_w[c] = rng.Bernoulli(d.cluster_prob(c));
                   a.keep_x.resize(n);
                   a.z.resize(n);
                   for (int v = 0; v < n; ++v) {
                     a.keep_x[v] = rng.Bernoulli(d.eta);
                     const uint8_t w = a.cluster_w[d.clustering.cluster_of(v)];
                     a.z[v] = a.keep_x[v] ? w : 1 - w;
                   }
                 },
             },
             design);
  return a;
}

double AssignmentProbability(const Design& design, const Assignment& a) {
  return std::visit(
      Overloaded{
          [&](const IndependentDesign& d) {
            double p = 1.0;
            for (uint8_t zi : a.z) p *= BernoulliProb(zi, d.q);
            return p;
          },
          [&](const GraphClusterDesign& d) {
            RequireSize(a.cluster_w, d.clustering.num_clusters(), "cluster vector");
            RequireSize(a.z, d.clustering.num_vertices(), "z");
            double p = 1.0;
            for (uint8_t w : a.cluster_w) p *= BernoulliProb(w, d.q);
            for (int v = 0; v < d.clustering.num_vertices(); ++v) {
              if (a.z[v] != a.cluster_w[d.clustering.cluster_of(v)]) {
                throw std::invalid_argument("z differs from its cluster draw");
              }
            }
            return p;
          },
          [&](const BalancedGraphClusterDesign& d) {
            const int nc = d.clustering.num_clusters();
            RequireSize(a.cluster_w, nc, "cluster vector");
            RequireSize(a.z, d.clustering.num_vertices(), "z");
            int treated = 0;
            for (uint8_t w : a.cluster_w) treated += w;
            if (treated * 2 != nc) throw std::invalid_argument("unbalanced cluster vector");
            for (int v = 0; v < d.clustering.num_vertices(); ++v) {
              if (a.z[v] != a.cluster_w[d.clustering.cluster_of(v)]) {
                throw std::invalid_argument("z differs from its cluster draw");
              }
            }
            return 1.0 / static_cast<double>(Binomial(nc, nc / 2));
          },
          [&](const HolePunchedDesign& d) {
            const int n = d.clustering.num_vertices();
            RequireSize(a.cluster_w, d.clustering.num_clusters(), "cluster vector");
            RequireSize(a.keep_x, n, "keep switches");
            RequireSize(a.z, n, "z");
            double p = 1.0;
            for (int c = 0; c < d.clustering.num_clusters(); ++c) {
              p *= BernoulliProb(a.cluster_w[c], d.cluster_prob(c));
            }
            for (int v = 0; v < n; ++v) {
              const uint8_t w = a.cluster_w[d.clustering.cluster_of(v)];
              if (a.z[v] != (a.keep_x[v] ? w : 1 - w)) {
                throw std::invalid_argument("z inconsistent with cluster draw and switch");
              }
              p *= BernoulliProb(a.keep_x[v], d.eta);
            }
            return p;
          },
      },
      design);
}

double AssignmentLogProb(const Design& design, const Assignment& a) {
  return std::log(AssignmentProbability(design, a));
}

uint64_t DesignOutcomeCount(const Design& design, int n) {
  return std::visit(
      Overloaded{
          [&](const IndependentDesign&) { return PowerOfTwo(n); },
          [&](const GraphClusterDesign& d) { return PowerOfTwo(d.clustering.num_clusters()); },
          [&](const BalancedGraphClusterDesign& d) {
            return Binomial(d.clustering.num_clusters(), d.clustering.num_clusters() / 2);
          },
          [&](const HolePunchedDesign& d) {
            return PowerOfTwo(int64_t{d.clustering.num_clusters()} + n);
          },
      },
      design);
}

void EnumerateDesign(const Design& design, int n, uint64_t max_outcomes,
                     const std::function<void(const Assignment&, double)>& visit) {
  ValidateDesign(design, n);
  const uint64_t count = DesignOutcomeCount(design, n);
  if (count > max_outcomes) {
    throw std::length_error("design has " +
                            (count == kSaturated ? std::string("too many")
                                                 : std::to_string(count)) +
                            " outcomes, above the enumeration limit of " +
                            std::to_string(max_outcomes));
  }
  Assignment a;
  std::visit(
      Overloaded{
          [&](const IndependentDesign& d) {
            a.z.assign(n, 0);
            do {
              visit(a, AssignmentProbability(d, a));
            } while (NextBits(a.z));
          },
          [&](const GraphClusterDesign& d) {
            a.cluster_w.assign(d.clustering.num_clusters(), 0);
            do {
              FillFromClusters(d.clustering, a.cluster_w, a.z);
              visit(a, AssignmentProbability(d, a));
            } while (NextBits(a.cluster_w));
          },
          [&](const BalancedGraphClusterDesign& d) {
            const int nc = d.clustering.num_clusters();
            std::vector<int> pos(nc / 2);
            for (int i = 0; i < nc / 2; ++i) pos[i] = i;
            const double p = 1.0 / static_cast<double>(count);
            do {
              a.cluster_w.assign(nc, 0);
              for (int c : pos) a.cluster_w[c] = 1;
              FillFromClusters(d.clustering, a.cluster_w, a.z);
              visit(a, p);
            } while (NextCombination(pos, nc));
          },
          [&](const HolePunchedDesign& d) {
            a.cluster_w.assign(d.clustering.num_clusters(), 0);
            do {
              a.keep_x.assign(n, 0);
              do {
                a.z.resize(n);
                for (int v = 0; v < n; ++v) {
                  const uint8_t w = a.cluster_w[d.clustering.cluster_of(v)];
                  a.z[v] = a.keep_x[v] ? w : 1 - w;
                }
                visit(a, AssignmentProbability(d, a));
              } while (NextBits(a.keep_x));
            } while (NextBits(a.cluster_w));
          },
      },
      design);
}

void WriteAssignment(std::ostream& out, const Assignment& a) {
  for (uint8_t zi : a.z) out << static_cast<int>(zi) << '\n';
}

}  // namespace netexp
