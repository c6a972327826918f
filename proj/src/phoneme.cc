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

#include "spikevox/phoneme.h"

#include <cmath>

namespace spikevox {

namespace {

// Vowels first so IsVowel is an index comparison.
constexpr std::array<std::string_view, kNumPhonemes> kInventory = {
    "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH",
    "IY", "OW", "OY", "UH", "UW",
    "B",  "CH", "D",  "DH", "F",  "G",  "HH", "JH", "K",  "L",
    "M",  "N",  "NG", "P",  "R",  "S",  "SH", "T",  "TH", "V",
    "W",  "Y",  "Z",  "ZH"};
constexpr int kNumVowels = 15;

}  // namespace

const std::array<std::string_view, kNumPhonemes>& PhonemeInventory() {
  return kInventory;
}

int PhonemeIndex(std::string_view symbol) {
  for (int i = 0; i < kNumPhonemes; ++i) {
    if (kInventory[i] == symbol) return i;
  }
  return -1;
}

bool IsPhoneme(std::string_view symbol) { return PhonemeIndex(symbol) >= 0; }

bool IsVowel(std::string_view symbol) {
  int i = PhonemeIndex(symbol);
  return i >= 0 && i < kNumVowels;
}

bool IsConsonant(std::string_view symbol) {
  return PhonemeIndex(symbol) >= kNumVowels;
}

PhonemeBag BagOf(const std::vector<std::string>& phonemes) {
  PhonemeBag bag{};
  for (const auto& p : phonemes) {
    int i = PhonemeIndex(p);
    if (i >= 0) bag[i] += 1.0;
  }
  return bag;
}

double BagCosine(const PhonemeBag& a, const PhonemeBag& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int i = 0; i < kNumPhonemes; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return c > 1.0 ? 1.0 : c;
}

}  // namespace spikevox
