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

#ifndef SPIKEVOX_LEXICON_H_
#define SPIKEVOX_LEXICON_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace spikevox {

// Word -> phoneme pronunciation table. Words are stored uppercase.
class Lexicon {
 public:
  Lexicon() = default;
  static Lexicon Load(const std::string& path);
  static Lexicon FromText(std::string_view text);

  void Add(const std::string& word, std::vector<std::string> phonemes);
  // Returns nullptr for unknown words. `word` must be uppercase.
  const std::vector<std::string>* Lookup(const std::string& word) const;
  bool Contains(const std::string& word) const {
    return Lookup(word) != nullptr;
  }
  // All words in sorted order.
  const std::vector<std::string>& Words() const { return words_; }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> table_;
  std::vector<std::string> words_;
};

struct G2pResult {
  // Normalized (uppercase, punctuation stripped) words.
  std::vector<std::string> words;
  std::vector<std::vector<std::string>> word_phonemes;
  std::vector<std::string> phonemes;
  // Some word went through the letter rules.
  bool fallback = false;
  // Some character could not be mapped and was skipped.
  bool warning = false;
};

// Letter-rule pronunciation of one word (see docs/letter-rules.md).
// Non-letters are ignored.
std::vector<std::string> LetterRules(std::string_view word);

G2pResult GraphemesToPhonemes(const Lexicon& lexicon, std::string_view text);

// Splits text into raw tokens on whitespace and hyphens and strips
// terminal punctuation. Tokens are uppercased.
std::vector<std::string> TokenizeWords(std::string_view text);

}  // namespace spikevox

#endif  // SPIKEVOX_LEXICON_H_
