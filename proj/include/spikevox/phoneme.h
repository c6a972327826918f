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

#ifndef SPIKEVOX_PHONEME_H_
#define SPIKEVOX_PHONEME_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace spikevox {

// 39-symbol ARPAbet inventory, no stress markers.
constexpr int kNumPhonemes = 39;

const std::array<std::string_view, kNumPhonemes>& PhonemeInventory();

// Inventory index of `symbol`, or -1.
int PhonemeIndex(std::string_view symbol);
bool IsPhoneme(std::string_view symbol);
bool IsVowel(std::string_view symbol);
bool IsConsonant(std::string_view symbol);

using PhonemeBag = std::array<double, kNumPhonemes>;

// Count vector over the inventory; unknown symbols are ignored.
PhonemeBag BagOf(const std::vector<std::string>& phonemes);
// Cosine of two bags, 0 if either is all-zero.
double BagCosine(const PhonemeBag& a, const PhonemeBag& b);

}  // namespace spikevox

#endif  // SPIKEVOX_PHONEME_H_
