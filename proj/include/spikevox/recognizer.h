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

#ifndef SPIKEVOX_RECOGNIZER_H_
#define SPIKEVOX_RECOGNIZER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace spikevox {

struct PhonemeScore {
  std::string symbol;
  double confidence = 0.0;
  int position = 0;
  // Timing is carried through untouched.
  std::optional<int64_t> start_ms;
  std::optional<int64_t> end_ms;
};

enum class RecognizerSource { kFile, kBridge, kSynthetic };

struct RecognizerOutput {
  std::string transcript;
  std::vector<PhonemeScore> phonemes;
  RecognizerSource source = RecognizerSource::kFile;

  std::vector<std::string> Symbols() const;
};

struct PhonemeIssue {
  PhonemeScore phoneme;
  double deficit = 0.0;
};

const char* SourceKey(RecognizerSource s);

// Parses the recognizer document. Throws SchemaError on shape problems and
// ValidationError (naming the phoneme) on bad values.
RecognizerOutput ParseRecognizerOutput(std::string_view document,
                                       RecognizerSource source =
                                           RecognizerSource::kFile);
RecognizerOutput RecognizerFromJson(const nlohmann::json& doc,
                                    RecognizerSource source =
                                        RecognizerSource::kFile);
nlohmann::json RecognizerToJson(const RecognizerOutput& output);

// Phonemes with confidence strictly below `issue_threshold`, in order.
std::vector<PhonemeIssue> FlagPhonemeIssues(const RecognizerOutput& output,
                                            double issue_threshold);

}  // namespace spikevox

#endif  // SPIKEVOX_RECOGNIZER_H_
