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

#include "spikevox/recognizer.h"

#include <cmath>
#include <string>

#include "spikevox/common.h"
#include "spikevox/phoneme.h"

namespace spikevox {

using nlohmann::json;

namespace {

std::optional<int64_t> TimingField(const json& p, const char* name,
                                   size_t index) {
  auto it = p.find(name);
  if (it == p.end()) return std::nullopt;
  if (!it->is_number_integer() || it->get<int64_t>() < 0) {
    throw SchemaError("phonemes[" + std::to_string(index) + "]." + name +
                      " must be a non-negative integer");
  }
  return it->get<int64_t>();
}

}  // namespace

std::vector<std::string> RecognizerOutput::Symbols() const {
  std::vector<std::string> out;
  out.reserve(phonemes.size());
  for (const auto& p : phonemes) out.push_back(p.symbol);
  return out;
}

const char* SourceKey(RecognizerSource s) {
  switch (s) {
    case RecognizerSource::kBridge:
      return "bridge";
    case RecognizerSource::kSynthetic:
      return "synthetic";
    default:
      return "file";
  }
}

RecognizerOutput ParseRecognizerOutput(std::string_view document,
                                       RecognizerSource source) {
  json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("recognizer document is not JSON");
  return RecognizerFromJson(doc, source);
}

RecognizerOutput RecognizerFromJson(const json& doc, RecognizerSource source) {
  if (!doc.is_object()) throw SchemaError("recognizer document must be object");
  auto t = doc.find("transcript");
  auto ph = doc.find("phonemes");
  if (t == doc.end() || !t->is_string()) {
    throw SchemaError("'transcript' must be a string");
  }
  if (ph == doc.end() || !ph->is_array()) {
    throw SchemaError("'phonemes' must be an array");
  }
  RecognizerOutput out;
  out.source = source;
  out.transcript = ToUpper(t->get<std::string>());
  for (size_t i = 0; i < ph->size(); ++i) {
    const json& p = (*ph)[i];
    std::string where = "phonemes[" + std::to_string(i) + "]";
    if (!p.is_object()) throw SchemaError(where + " must be an object");
    auto sym = p.find("symbol");
    auto conf = p.find("confidence");
    if (sym == p.end() || !sym->is_string()) {
      throw SchemaError(where + ".symbol must be a string");
    }
    if (conf == p.end() || !conf->is_number()) {
      throw SchemaError(where + ".confidence must be a number");
    }
    PhonemeScore score;
    score.symbol = sym->get<std::string>();
    score.confidence = conf->get<double>();
    score.position = static_cast<int>(i);
    score.start_ms = TimingField(p, "start_ms", i);
    score.end_ms = TimingField(p, "end_ms", i);
    if (score.start_ms && score.end_ms && *score.end_ms < *score.start_ms) {
      throw SchemaError(where + ".end_ms precedes start_ms");
    }
    if (!IsPhoneme(score.symbol)) {
      throw ValidationError(where + " unknown phoneme symbol '" +
                            score.symbol + "'");
    }
    if (!std::isfinite(score.confidence) || score.confidence < 0.0 ||
        score.confidence > 1.0) {
      throw ValidationError(where + " (" + score.symbol +
                            ") confidence outside [0,1]");
    }
    out.phonemes.push_back(std::move(score));
  }
  if (!Trim(out.transcript).empty() && out.phonemes.empty()) {
    throw ValidationError("non-empty transcript with no phonemes");
  }
  return out;
}

json RecognizerToJson(const RecognizerOutput& output) {
  json phonemes = json::array();
  for (const auto& p : output.phonemes) {
    json item = {{"symbol", p.symbol}, {"confidence", p.confidence}};
    if (p.start_ms) item["start_ms"] = *p.start_ms;
    if (p.end_ms) item["end_ms"] = *p.end_ms;
    phonemes.push_back(std::move(item));
  }
  return {{"transcript", output.transcript}, {"phonemes", phonemes}};
}

std::vector<PhonemeIssue> FlagPhonemeIssues(const RecognizerOutput& output,
                                            double issue_threshold) {
  std::vector<PhonemeIssue> issues;
  for (const auto& p : output.phonemes) {
    if (p.confidence < issue_threshold) {
      issues.push_back({p, 1.0 - p.confidence});
    }
  }
  return issues;
}

}  // namespace spikevox
