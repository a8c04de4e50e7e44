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

#include "netexp/outcomes.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "netexp/rng.h"

namespace netexp {

std::vector<double> OutcomeNoise(uint64_t noise_seed, int n, int steps) {
  std::vector<double> noise(static_cast<size_t>(n) * steps);
  for (int t = 1; t <= steps; ++t) {
    for (int v = 0; v < n; ++v) {
      noise[static_cast<size_t>(t - 1) * n + v] = KeyedNormal(noise_seed, v, t);
    }
  }
  return noise;
}

Trajectory Simulate(const Graph& g, std::span<const uint8_t> z, const ResponseModel& model,
                    std::span<const double> noise, bool keep_full) {
  const int n = g.num_vertices();
  if (static_cast<int>(z.size()) != n) {
    throw std::invalid_argument("assignment length differs from vertex count");
  }
  if (model.steps < 1) throw std::invalid_argument("need at least one time step");
  const bool noisy = model.has_noise();
  if (noisy && noise.size() < static_cast<size_t>(n) * model.steps) {
    throw std::invalid_argument("noise buffer too short");
  }
  Trajectory traj;
  traj.steps = model.steps;
  traj.n = n;
  traj.y.assign(static_cast<size_t>(model.steps + 1) * n, 0.0);

  std::vector<double> prev(n, 0.0);
  std::vector<double> cur(n, 0.0);
  for (int t = 1; t <= model.steps; ++t) {
    const double* u = noisy ? noise.data() + static_cast<size_t>(t - 1) * n : nullptr;
    for (int v = 0; v < n; ++v) {
      const auto nb = g.neighbors(v);
      double peer = 0.0;
      if (!nb.empty()) {
        double sum = 0.0;
        for (int w : nb) sum += prev[w];
        peer = sum / static_cast<double>(nb.size());
      }
      double latent = model.alpha + model.beta * z[v] + model.gamma * peer;
      if (noisy) latent += u[v];
      cur[v] = model.link == Link::kProbit ? (latent > 0.0 ? 1.0 : 0.0) : latent;
    }
    if (keep_full || t == model.steps) {
      std::copy(cur.begin(), cur.end(), traj.y.begin() + static_cast<size_t>(t) * n);
    }
    prev.swap(cur);
  }
  return traj;
}

Trajectory Simulate(const Graph& g, std::span<const uint8_t> z, const ResponseModel& model,
                    uint64_t noise_seed, bool keep_full) {
  if (!model.has_noise()) return Simulate(g, z, model, std::span<const double>{}, keep_full);
  const auto noise = OutcomeNoise(noise_seed, g.num_vertices(), model.steps);
  return Simulate(g, z, model, noise, keep_full);
}

double StandardNormalCdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

uint64_t NoiseSeedForReplication(uint64_t seed, int replication) {
  return HashCombine(seed, static_cast<uint64_t>(replication));
}

AteEstimate TrueAteMonteCarlo(const Graph& g, const ResponseModel& model, int reps,
                              uint64_t seed) {
  if (reps < 1) throw std::invalid_argument("need at least one replication");
  const int n = g.num_vertices();
  const std::vector<uint8_t> all_treated(n, 1);
  const std::vector<uint8_t> all_control(n, 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> noise;
    if (model.has_noise()) noise = OutcomeNoise(NoiseSeedForReplication(seed, r), n, model.steps);
    const auto y1 = Simulate(g, all_treated, model, noise);
    const auto y0 = Simulate(g, all_control, model, noise);
    double diff = 0.0;
    for (int v = 0; v < n; ++v) diff += y1.final()[v] - y0.final()[v];
    diff /= n;
    sum += diff;
    sum_sq += diff * diff;
  }
  AteEstimate out;
  out.ate = sum / reps;
  if (reps > 1) {
    const double var = std::max(0.0, (sum_sq - reps * out.ate * out.ate) / (reps - 1));
    out.std_error = std::sqrt(var / reps);
  }
  return out;
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj) {
  out << "t,vertex,y\n";
  for (int t = 0; t <= traj.steps; ++t) {
    const auto row = traj.at(t);
    for (int v = 0; v < traj.n; ++v) out << t << ',' << v << ',' << row[v] << '\n';
  }
}

}  // namespace netexp
