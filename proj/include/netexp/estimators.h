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

#ifndef NETEXP_ESTIMATORS_H_
#define NETEXP_ESTIMATORS_H_

#include <optional>
#include <span>

#include "netexp/exposure.h"

namespace netexp {

struct EstimatorResult {
  // Empty when an effective group has no members.
  std::optional<double> estimate;
  int n_treated = 0;
  int n_control = 0;
  // Inverse-probability weight range over flagged vertices; weighted
  // estimators only.
  double min_weight = 0.0;
  double max_weight = 0.0;

  bool defined() const { return estimate.has_value(); }
};

EstimatorResult DiffInMeans(std::span<const double> y, std::span<const uint8_t> z);

EstimatorResult ExposureDiffInMeans(std::span<const double> y, std::span<const uint8_t> treated,
                                    std::span<const uint8_t> control);

// Ratio-normalized inverse-probability weighted difference of means. Throws
// std::domain_error if a flagged vertex has zero exposure probability.
EstimatorResult Hajek(std::span<const double> y, std::span<const uint8_t> treated,
                      std::span<const uint8_t> control, const ExposureProbabilities& probs);

// (1/n) sum y / pi over flagged treated minus the same over flagged control.
// An empty side contributes zero, so the estimate is always defined.
EstimatorResult HorvitzThompson(std::span<const double> y, std::span<const uint8_t> treated,
                                std::span<const uint8_t> control,
                                const ExposureProbabilities& probs, int n);

}  // namespace netexp

#endif  // NETEXP_ESTIMATORS_H_
