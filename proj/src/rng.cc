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

#include "netexp/rng.h"

#include <cmath>
#include <numbers>

namespace netexp {
namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

double ToUnit(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double ToOpenUnit(uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double BoxMuller(uint64_t b1, uint64_t b2) {
  const double u1 = ToOpenUnit(b1);
  const double u2 = ToUnit(b2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

uint64_t Mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

uint64_t HashCombine(uint64_t a, uint64_t b) {
  return Mix64(Mix64(a + kGolden) ^ (b + 0x632be59bd9b4e019ULL));
}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

double CounterRng::Uniform() { return ToUnit((*this)()); }

double CounterRng::UniformOpen() { return ToOpenUnit((*this)()); }

uint64_t CounterRng::UniformInt(uint64_t bound) {
  // Rejection keeps the result exactly uniform.
  const uint64_t limit = max() - max() % bound;
  uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % bound;
}

double CounterRng::Normal() {
  const uint64_t b1 = (*this)();
  const uint64_t b2 = (*this)();
  return BoxMuller(b1, b2);
}

double KeyedNormal(uint64_t key, uint64_t a, uint64_t b) {
  const uint64_t base = HashCombine(HashCombine(key, a), b);
  return BoxMuller(Mix64(base + kGolden), Mix64(base + 2 * kGolden));
}

}  // namespace netexp
