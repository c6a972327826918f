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

#include "spikevox/random.h"

#include <vector>

namespace spikevox {

namespace {

std::vector<uint32_t> SeedWords(uint64_t seed,
                                std::initializer_list<std::string_view> keys) {
  std::vector<uint32_t> words = {static_cast<uint32_t>(seed),
                                 static_cast<uint32_t>(seed >> 32)};
  for (auto key : keys) {
    // Length prefix keeps ("ab","c") apart from ("a","bc").
    words.push_back(static_cast<uint32_t>(key.size()));
    for (unsigned char ch : key) words.push_back(ch);
  }
  return words;
}

}  // namespace

Rng::Rng(uint64_t seed) : Rng(seed, {}) {}

Rng::Rng(uint64_t seed, std::initializer_list<std::string_view> keys) {
  auto words = SeedWords(seed, keys);
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

uint64_t Rng::Below(uint64_t n) {
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::Unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace spikevox
