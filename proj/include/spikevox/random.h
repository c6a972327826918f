// Copyright (c) 2026 The SpikeVox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPIKEVOX_RANDOM_H_
#define SPIKEVOX_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace spikevox {

// The standard fixes mt19937_64 and seed_seq exactly, but not the
// distributions, so draws are mapped from raw engine output by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed);
  // Seed derived from a global seed and any number of string keys.
  Rng(uint64_t seed, std::initializer_list<std::string_view> keys);

  uint64_t Next() { return engine_(); }
  // Uniform integer in [0, n); n > 0.
  uint64_t Below(uint64_t n);
  // Uniform real in [0, 1).
  double Unit();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Unit(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spikevox

#endif  // SPIKEVOX_RANDOM_H_
