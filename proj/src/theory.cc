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

#include "netexp/theory.h"

#include <stdexcept>

namespace netexp {
namespace {

// out = P m with P = gamma D^{-1} A, row by row.
void ApplyPeerOperator(const Graph& g, double gamma, const RowMatrix& m, RowMatrix& out) {
  out.setZero(m.rows(), m.cols());
  for (int i = 0; i < g.num_vertices(); ++i) {
    const auto nb = g.neighbors(i);
    if (nb.empty()) continue;
    for (int j : nb) out.row(i) += m.row(j);
    out.row(i) *= gamma / static_cast<double>(nb.size());
  }
}

void RequireClustering(const Clustering* c, int n) {
  if (c == nullptr) throw std::invalid_argument("cluster design needs a clustering");
  if (c->num_vertices() != n) throw std::invalid_argument("clustering size mismatch");
}

double WithinClusterSum(const LinearOutcomeModel& model, const Clustering& c) {
  double sum = 0.0;
  for (const auto& members : c.members()) {
    for (int i : members) {
      for (int j : members) sum += model.coef(i, j);
    }
  }
  return sum;
}

}  // namespace

Eigen::VectorXd LinearOutcomeModel::Mean(std::span<const uint8_t> z) const {
  Eigen::VectorXd zv(z.size());
  for (size_t j = 0; j < z.size(); ++j) zv[j] = z[j];
  return intercept + coef * zv;
}

LinearOutcomeModel LinearInMeansModel(const Graph& g, double alpha, double beta, double gamma,
                                      int steps, const Eigen::VectorXd& initial_mean) {
  const int n = g.num_vertices();
  if (steps < 1) throw std::invalid_argument("need at least one time step");
  if (initial_mean.size() != n) throw std::invalid_argument("initial mean size mismatch");
  RowMatrix power = RowMatrix::Identity(n, n);
  RowMatrix sum = power;
  RowMatrix next;
  for (int q = 1; q < steps; ++q) {
    ApplyPeerOperator(g, gamma, power, next);
    power.swap(next);
    sum += power;
  }
  RowMatrix carried = initial_mean;
  for (int q = 0; q < steps; ++q) {
    ApplyPeerOperator(g, gamma, carried, next);
    carried.swap(next);
  }
  LinearOutcomeModel model;
  model.coef = beta * sum;
  model.intercept = alpha * sum.rowwise().sum() + Eigen::VectorXd(carried.col(0));
  return model;
}

double TrueAteLinear(const LinearOutcomeModel& model) {
  return model.coef.sum() / model.size();
}

double EstimandItr(const LinearOutcomeModel& model, ItrDesign design,
                   const Clustering* clustering) {
  const int n = model.size();
  const double total = model.coef.sum();
  const double diag = model.coef.trace();
  switch (design) {
    case ItrDesign::kIndependent:
      return diag / n;
    case ItrDesign::kGraphCluster:
      RequireClustering(clustering, n);
      return WithinClusterSum(model, *clustering) / n;
    case ItrDesign::kBalancedGraphCluster: {
      RequireClustering(clustering, n);
      const int nc = clustering->num_clusters();
      if (nc < 2 || nc % 2 != 0) {
        throw std::invalid_argument("balanced design needs an even number of clusters");
      }
      for (const auto& members : clustering->members()) {
        if (static_cast<int>(members.size()) * nc != n) {
          throw std::invalid_argument("balanced closed form needs equal cluster sizes");
        }
      }
      // A cross-cluster pair is treated together with probability
      // (N_C/2 - 1)/(N_C - 1) and apart with probability (N_C/2)/(N_C - 1).
      const double within = WithinClusterSum(model, *clustering);
      return (within - (total - within) / (nc - 1)) / n;
    }
    case ItrDesign::kBalancedIndependent:
      if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("balanced independent design needs an even population");
      }
      return (diag - (total - diag) / (n - 1)) / n;
  }
  throw std::invalid_argument("unknown design");
}

double EstimandItrBalancedRandomPartition(const LinearOutcomeModel& model, int num_clusters) {
  const int n = model.size();
  if (num_clusters < 2 || num_clusters % 2 != 0 || n % num_clusters != 0) {
    throw std::invalid_argument("need an even cluster count dividing the population");
  }
  const double total = model.coef.sum();
  const double diag = model.coef.trace();
  const double same = (static_cast<double>(n) / num_clusters - 1.0) / (n - 1.0);
  const double factor = same - (1.0 - same) / (num_clusters - 1.0);
  return (diag + (total - diag) * factor) / n;
}

double RelativeBias(const LinearOutcomeModel& model, const Clustering& clustering,
                    bool balanced) {
  RequireClustering(&clustering, model.size());
  const double total = model.coef.sum();
  if (total == 0.0) throw std::domain_error("relative bias undefined for a zero true ATE");
  const double ratio = WithinClusterSum(model, clustering) / total - 1.0;
  if (!balanced) return ratio;
  return (1.0 + 1.0 / (clustering.num_clusters() - 1.0)) * ratio;
}

MeanOutcomeFn LinearMeanOutcome(const LinearOutcomeModel& model) {
  return [model](std::span<const uint8_t> z) {
    const Eigen::VectorXd m = model.Mean(z);
    return std::vector<double>(m.data(), m.data() + m.size());
  };
}

BruteForceEstimand EstimandBruteForce(const Graph& g, const Design& design,
                                      const ExposureSpec& spec, const MeanOutcomeFn& mean_outcome,
                                      int side, const Clustering* exposure_clustering,
                                      uint64_t max_outcomes) {
  const int n = g.num_vertices();
  const Clustering* clustering =
      exposure_clustering != nullptr ? exposure_clustering : DesignClustering(design);
  const ExposureModel model(g, spec, spec.vertex_level() ? nullptr : clustering);
  BruteForceEstimand out;
  out.side = side;
  out.event_probability.assign(n, 0.0);
  std::vector<double> weighted(n, 0.0);
  EnumerateDesign(design, n, max_outcomes, [&](const Assignment& a, double p) {
    const auto sets = model.Indicators(a.z);
    const auto& flags = side ? sets.treated : sets.control;
    bool any = false;
    for (int i = 0; i < n && !any; ++i) any = flags[i];
    if (!any) return;
    const auto y = mean_outcome(a.z);
    for (int i = 0; i < n; ++i) {
      if (!flags[i]) continue;
      out.event_probability[i] += p;
      weighted[i] += p * y[i];
    }
  });
  const std::vector<uint8_t> global(n, static_cast<uint8_t>(side));
  const auto y_global = mean_outcome(global);
  out.conditional_mean.assign(n, 0.0);
  out.bias_contribution.assign(n, 0.0);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (out.event_probability[i] <= 0.0) {
      out.defined = false;
      continue;
    }
    out.conditional_mean[i] = weighted[i] / out.event_probability[i];
    out.bias_contribution[i] = out.conditional_mean[i] - y_global[i];
    sum += out.conditional_mean[i];
  }
  out.mu = sum / n;
  return out;
}

}  // namespace netexp
