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

#ifndef NETEXP_OUTCOMES_H_
#define NETEXP_OUTCOMES_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "netexp/graph.h"

namespace netexp {

enum class Link {
  kProbit,    // Y = 1{Y* > 0}, standard normal noise
  kIdentity,  // Y = Y*
};

struct ResponseModel {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int steps = 1;
  Link link = Link::kProbit;
  // Identity link only: add standard normal noise. Probit always has noise.
  bool identity_noise = true;

  bool has_noise() const { return link == Link::kProbit || identity_noise; }
};

// Outcomes y(t, v) for t = 0..steps, row-major by time step. When simulated
// without full retention only rows 0 and `steps` are meaningful.
struct Trajectory {
  int steps = 0;
  int n = 0;
  std::vector<double> y;

  std::span<const double> at(int t) const {
    return {y.data() + static_cast<size_t>(t) * n, static_cast<size_t>(n)};
  }
  std::span<const double> final() const { return at(steps); }
};

// Per-(vertex, step) noise U(v, t) for t = 1..steps laid out as
// noise[(t - 1) * n + v]; a pure function of the seed, never of z.
std::vector<double> OutcomeNoise(uint64_t noise_seed, int n, int steps);

// Runs the dynamic process
//   Y*(v, t) = alpha + beta z_v + gamma mean_{u ~ v} Y(u, t - 1) + U(v, t)
// from Y(., 0) = 0. Isolated vertices get a zero peer term.
Trajectory Simulate(const Graph& g, std::span<const uint8_t> z, const ResponseModel& model,
                    uint64_t noise_seed, bool keep_full = false);

// Same as above with caller-supplied noise (ignored when the model is
// noiseless). Lets many assignments share one noise path.
Trajectory Simulate(const Graph& g, std::span<const uint8_t> z, const ResponseModel& model,
                    std::span<const double> noise, bool keep_full = false);

double StandardNormalCdf(double x);

struct AteEstimate {
  double ate = 0.0;
  double std_error = 0.0;
};

// Monte Carlo ATE of global treatment versus global control. Replication r
// uses noise seed NoiseSeedForReplication(seed, r) for both arms.
AteEstimate TrueAteMonteCarlo(const Graph& g, const ResponseModel& model, int reps,
                              uint64_t seed);

uint64_t NoiseSeedForReplication(uint64_t seed, int replication);

// CSV with header t,vertex,y.
void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj);

}  // namespace netexp

#endif  // NETEXP_OUTCOMES_H_
