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

#include "netexp/estimators.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace netexp {
namespace {

void CheckLengths(size_t y, size_t a, size_t b) {
  if (y != a || y != b) throw std::invalid_argument("estimator inputs differ in length");
}

struct WeightedSum {
  double weight = 0.0;
  double value = 0.0;
  int count = 0;
};

WeightedSum Accumulate(std::span<const double> y, std::span<const uint8_t> flags,
                       std::span<const double> pi, EstimatorResult& result) {
  WeightedSum sum;
  for (size_t i = 0; i < y.size(); ++i) {
    if (!flags[i]) continue;
    if (!(pi[i] > 0.0)) {
      throw std::domain_error("vertex " + std::to_string(i) +
                              " is flagged but has zero exposure probability");
    }
    const double w = 1.0 / pi[i];
    result.min_weight = std::min(result.min_weight, w);
    result.max_weight = std::max(result.max_weight, w);
    sum.weight += w;
    sum.value += w * y[i];
    ++sum.count;
  }
  return sum;
}

}  // namespace

EstimatorResult DiffInMeans(std::span<const double> y, std::span<const uint8_t> z) {
  if (y.size() != z.size()) throw std::invalid_argument("estimator inputs differ in length");
  double sum1 = 0.0;
  double sum0 = 0.0;
  EstimatorResult r;
  for (size_t i = 0; i < y.size(); ++i) {
    if (z[i]) {
      sum1 += y[i];
      ++r.n_treated;
    } else {
      sum0 += y[i];
      ++r.n_control;
    }
  }
  if (r.n_treated > 0 && r.n_control > 0) r.estimate = sum1 / r.n_treated - sum0 / r.n_control;
  return r;
}

EstimatorResult ExposureDiffInMeans(std::span<const double> y, std::span<const uint8_t> treated,
                                    std::span<const uint8_t> control) {
  CheckLengths(y.size(), treated.size(), control.size());
  double sum1 = 0.0;
  double sum0 = 0.0;
  EstimatorResult r;
  for (size_t i = 0; i < y.size(); ++i) {
    if (treated[i]) {
      sum1 += y[i];
      ++r.n_treated;
    }
    if (control[i]) {
      sum0 += y[i];
      ++r.n_control;
    }
  }
  if (r.n_treated > 0 && r.n_control > 0) r.estimate = sum1 / r.n_treated - sum0 / r.n_control;
  return r;
}

EstimatorResult Hajek(std::span<const double> y, std::span<const uint8_t> treated,
                      std::span<const uint8_t> control, const ExposureProbabilities& probs) {
  CheckLengths(y.size(), treated.size(), control.size());
  CheckLengths(y.size(), probs.pi1.size(), probs.pi0.size());
  EstimatorResult r;
  r.min_weight = std::numeric_limits<double>::infinity();
  const auto t = Accumulate(y, treated, probs.pi1, r);
  const auto c = Accumulate(y, control, probs.pi0, r);
  r.n_treated = t.count;
  r.n_control = c.count;
  if (t.count == 0 && c.count == 0) r.min_weight = 0.0;
  if (t.count > 0 && c.count > 0) r.estimate = t.value / t.weight - c.value / c.weight;
  return r;
}

EstimatorResult HorvitzThompson(std::span<const double> y, std::span<const uint8_t> treated,
                                std::span<const uint8_t> control,
                                const ExposureProbabilities& probs, int n) {
  CheckLengths(y.size(), treated.size(), control.size());
  CheckLengths(y.size(), probs.pi1.size(), probs.pi0.size());
  if (n < 1) throw std::invalid_argument("population size must be positive");
  EstimatorResult r;
  r.min_weight = std::numeric_limits<double>::infinity();
  const auto t = Accumulate(y, treated, probs.pi1, r);
  const auto c = Accumulate(y, control, probs.pi0, r);
  r.n_treated = t.count;
  r.n_control = c.count;
  if (t.count == 0 && c.count == 0) r.min_weight = 0.0;
  r.estimate = (t.value - c.value) / n;
  return r;
}

}  // namespace netexp
