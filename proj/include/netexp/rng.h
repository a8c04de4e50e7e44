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

#ifndef NETEXP_RNG_H_
#define NETEXP_RNG_H_

#include <cstdint>
#include <string_view>

namespace netexp {

// Name recorded in run metadata so results can be tied to the generator.
inline constexpr std::string_view kRngName = "splitmix64-counter";

// SplitMix64 finalizer: a bijective 64-bit mixer.
uint64_t Mix64(uint64_t x);

// Order-sensitive combination of two words into one well-mixed key.
uint64_t HashCombine(uint64_t a, uint64_t b);

// Counter-based stream. Draw k of the stream keyed by `key` is
// Mix64(key + (k + 1) * golden), so any position is reproducible from
// (key, counter) alone and streams with distinct keys do not share state.
// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = uint64_t;

  explicit CounterRng(uint64_t key, uint64_t counter = 0)
      : key_(Mix64(key)), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();
  // Uniform on (0, 1).
  double UniformOpen();
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform integer in [0, bound). bound must be positive.
  uint64_t UniformInt(uint64_t bound);
  // Standard normal via the cosine branch of Box-Muller; consumes two draws
  // and keeps no cached value, so the stream position stays predictable.
  double Normal();

  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_;
};

// Standard normal value that is a pure function of (key, a, b). Used for
// outcome noise indexed by (vertex, time step).
double KeyedNormal(uint64_t key, uint64_t a, uint64_t b);

}  // namespace netexp

#endif  // NETEXP_RNG_H_
