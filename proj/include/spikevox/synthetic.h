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

#ifndef SPIKEVOX_SYNTHETIC_H_
#define SPIKEVOX_SYNTHETIC_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "spikevox/category.h"
#include "spikevox/lexicon.h"
#include "spikevox/recognizer.h"

namespace spikevox {

struct SyntheticSpec {
  std::vector<std::pair<Category, double>> targets;  // deficits in (0,1]
  int phoneme_count = 20;
  uint64_t seed = 1;
};

// Random lexicon words until `phoneme_count` phonemes, redrawn until every
// targeted category occurs. Targeted phonemes get confidence 1 - deficit
// (largest deficit wins); the rest are uniform in [0.75, 1].
// Confidences are rounded to 3 decimals.
RecognizerOutput Synthesize(const SyntheticSpec& spec, const Lexicon& lexicon,
                            const AnalysisConfig& config);

}  // namespace spikevox

#endif  // SPIKEVOX_SYNTHETIC_H_
