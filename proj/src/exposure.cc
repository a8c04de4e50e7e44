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

#include "netexp/exposure.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace netexp {
namespace {

// P(sum >= threshold) where the sum starts at `base` and each term adds
// sizes[j] with probability p.
double TailProbability(int base, std::span<const int> sizes, double p, int threshold) {
  int total = base;
  for (int s : sizes) total += s;
  if (threshold <= base) return 1.0;
  if (threshold > total) return 0.0;
  std::vector<double> dist(total + 1, 0.0);
  std::vector<double> next(total + 1, 0.0);
  dist[base] = 1.0;
  int reach = base;
  for (int s : sizes) {
    std::fill(next.begin(), next.begin() + reach + s + 1, 0.0);
    for (int x = 0; x <= reach; ++x) {
      if (dist[x] == 0.0) continue;
      next[x] += (1.0 - p) * dist[x];
      next[x + s] += p * dist[x];
    }
    reach += s;
    dist.swap(next);
  }
  double tail = 0.0;
  for (int x = threshold; x <= total; ++x) tail += dist[x];
  return tail;
}

}  // namespace

double ExposureSpec::effective_lambda() const {
  switch (kind) {
    case ExposureKind::kItr:
      return 0.0;
    case ExposureKind::kNtr:
      return 1.0;
    default:
      return lambda;
  }
}

std::string ExposureSpec::Label() const {
  std::ostringstream out;
  switch (kind) {
    case ExposureKind::kItr:
      return "itr";
    case ExposureKind::kNtr:
      return "ntr";
    case ExposureKind::kFntr:
      out << "fntr" << lambda;
      break;
    case ExposureKind::kClusterFntr:
      out << "cfntr" << lambda;
      break;
  }
  return out.str();
}

int ExposureThreshold(double lambda, int set_size) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("exposure lambda must lie in [0, 1]");
  }
  const int l = static_cast<int>(std::ceil(lambda * set_size - 1e-9));
  return std::clamp(l, 0, set_size);
}

ExposureModel::ExposureModel(const Graph& g, const ExposureSpec& spec,
                             const Clustering* clustering)
    : graph_(&g), clustering_(clustering), spec_(spec) {
  const int n = g.num_vertices();
  const double lambda = spec.effective_lambda();
  threshold_.resize(n);
  if (spec.vertex_level()) {
    for (int i = 0; i < n; ++i) threshold_[i] = ExposureThreshold(lambda, g.degree(i));
    return;
  }
  if (clustering == nullptr) {
    throw std::invalid_argument("cluster-level exposure needs a clustering");
  }
  if (clustering->num_vertices() != n) {
    throw std::invalid_argument("clustering does not cover the graph");
  }
  cluster_sets_.resize(n);
  for (int i = 0; i < n; ++i) {
    auto& set = cluster_sets_[i];
    const int own = clustering->cluster_of(i);
    for (int j : g.neighbors(i)) {
      const int c = clustering->cluster_of(j);
      if (c != own) set.push_back(c);
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    threshold_[i] = ExposureThreshold(lambda, static_cast<int>(set.size()));
  }
}

std::span<const int> ExposureModel::match_set(int i) const {
  if (spec_.vertex_level()) return graph_->neighbors(i);
  return cluster_sets_[i];
}

std::vector<uint8_t> ExposureModel::ClusterStates(std::span<const uint8_t> z) const {
  std::vector<uint8_t> state(clustering_->num_clusters(), 3);
  for (int v = 0; v < static_cast<int>(z.size()); ++v) {
    uint8_t& s = state[clustering_->cluster_of(v)];
    if (s == 3) {
      s = z[v];
    } else if (s != z[v]) {
      s = 2;
    }
  }
  return state;
}

bool ExposureModel::Matches(std::span<const uint8_t> z, std::span<const uint8_t> cluster_state,
                            int side, int i) const {
  if (z[i] != side) return false;
  const int need = threshold_[i];
  if (need == 0) return true;
  int count = 0;
  if (spec_.vertex_level()) {
    for (int j : graph_->neighbors(i)) count += z[j] == side;
  } else {
    for (int c : cluster_sets_[i]) count += cluster_state[c] == side;
  }
  return count >= need;
}

bool ExposureModel::Indicator(std::span<const uint8_t> z, int side, int i) const {
  std::vector<uint8_t> state;
  if (!spec_.vertex_level()) state = ClusterStates(z);
  return Matches(z, state, side, i);
}

EffectiveSets ExposureModel::Indicators(std::span<const uint8_t> z) const {
  const int n = graph_->num_vertices();
  if (static_cast<int>(z.size()) != n) {
    throw std::invalid_argument("assignment length differs from vertex count");
  }
  std::vector<uint8_t> state;
  if (!spec_.vertex_level()) state = ClusterStates(z);
  EffectiveSets out;
  out.treated.resize(n);
  out.control.resize(n);
  for (int i = 0; i < n; ++i) {
    out.treated[i] = Matches(z, state, 1, i);
    out.control[i] = Matches(z, state, 0, i);
  }
  return out;
}

bool EffectiveIndicator(const ExposureSpec& spec, const Graph& g, const Clustering* clustering,
                        std::span<const uint8_t> z, int side, int i) {
  return ExposureModel(g, spec, clustering).Indicator(z, side, i);
}

ExposureProbabilities ExposureProbIndependent(const Graph& g, const ExposureSpec& spec,
                                              double q) {
  if (!spec.vertex_level()) {
    throw std::invalid_argument("independent closed form needs a vertex-level exposure");
  }
  const int n = g.num_vertices();
  const double lambda = spec.effective_lambda();
  ExposureProbabilities out;
  out.pi1.resize(n);
  out.pi0.resize(n);
  for (int i = 0; i < n; ++i) {
    const int k = g.degree(i);
    const int l = ExposureThreshold(lambda, k);
    const std::vector<int> ones(k, 1);
    out.pi1[i] = q * TailProbability(0, ones, q, l);
    out.pi0[i] = (1.0 - q) * TailProbability(0, ones, 1.0 - q, l);
  }
  return out;
}

ExposureProbabilities ExposureProbCluster(const Graph& g, const Clustering& clustering,
                                          const ExposureSpec& spec, double q) {
  const int n = g.num_vertices();
  if (clustering.num_vertices() != n) {
    throw std::invalid_argument("clustering does not cover the graph");
  }
  const ExposureModel model(g, spec, &clustering);
  ExposureProbabilities out;
  out.pi1.resize(n);
  out.pi0.resize(n);
  std::vector<int> ids;
  std::vector<int> sizes;
  for (int i = 0; i < n; ++i) {
    const int own = clustering.cluster_of(i);
    int base = 0;
    sizes.clear();
    if (spec.vertex_level()) {
      // Group the neighborhood by cluster; the ego's cluster matches for free.
      ids.clear();
      for (int j : g.neighbors(i)) {
        const int c = clustering.cluster_of(j);
        if (c == own) {
          ++base;
        } else {
          ids.push_back(c);
        }
      }
      std::sort(ids.begin(), ids.end());
      for (size_t a = 0; a < ids.size();) {
        size_t b = a;
        while (b < ids.size() && ids[b] == ids[a]) ++b;
        sizes.push_back(static_cast<int>(b - a));
        a = b;
      }
    } else {
      sizes.assign(model.match_set(i).size(), 1);
    }
    const int l = model.threshold(i);
    out.pi1[i] = q * TailProbability(base, sizes, q, l);
    out.pi0[i] = (1.0 - q) * TailProbability(base, sizes, 1.0 - q, l);
  }
  return out;
}

ExposureProbabilities ExposureProbBruteForce(const Graph& g, const Design& design,
                                             const ExposureSpec& spec,
                                             const Clustering* exposure_clustering,
                                             uint64_t max_outcomes) {
  const int n = g.num_vertices();
  const Clustering* clustering =
      exposure_clustering != nullptr ? exposure_clustering : DesignClustering(design);
  const ExposureModel model(g, spec, spec.vertex_level() ? nullptr : clustering);
  ExposureProbabilities out;
  out.pi1.assign(n, 0.0);
  out.pi0.assign(n, 0.0);
  EnumerateDesign(design, n, max_outcomes, [&](const Assignment& a, double p) {
    const auto sets = model.Indicators(a.z);
    for (int i = 0; i < n; ++i) {
      if (sets.treated[i]) out.pi1[i] += p;
      if (sets.control[i]) out.pi0[i] += p;
    }
  });
  return out;
}

ExposureProbabilities ExposureProbForDesign(const Graph& g, const Design& design,
                                            const ExposureSpec& spec,
                                            const Clustering* exposure_clustering) {
  if (const auto* d = std::get_if<IndependentDesign>(&design); d && spec.vertex_level()) {
    return ExposureProbIndependent(g, spec, d->q);
  }
  if (const auto* d = std::get_if<GraphClusterDesign>(&design);
      d && (exposure_clustering == nullptr || *exposure_clustering == d->clustering)) {
    return ExposureProbCluster(g, d->clustering, spec, d->q);
  }
  return ExposureProbBruteForce(g, design, spec, exposure_clustering);
}

void WriteExposureCsv(std::ostream& out, const ExposureProbabilities& probs) {
  out << "vertex,pi1,pi0\n" << std::setprecision(17);
  for (size_t i = 0; i < probs.pi1.size(); ++i) {
    out << i << ',' << probs.pi1[i] << ',' << probs.pi0[i] << '\n';
  }
}

}  // namespace netexp
