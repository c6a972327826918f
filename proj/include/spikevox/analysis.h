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

#ifndef SPIKEVOX_ANALYSIS_H_
#define SPIKEVOX_ANALYSIS_H_

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spikevox/category.h"
#include "spikevox/recognizer.h"
#include "spikevox/spiking.h"

namespace spikevox {

struct SpikeSummary {
  double density = 0.0;        // S_i
  double pattern_match = 0.0;  // M_i
  double mean_deficit = 0.0;
  int issue_count = 0;
};

struct FlaggedCategory {
  Category category;
  double confidence;
};

struct AnalysisResult {
  std::string analysis_id;
  std::string patient_id;
  RecognizerOutput input;
  std::vector<PhonemeIssue> issues;
  std::array<double, kNumCategories> confidences{};
  std::vector<FlaggedCategory> flagged;
  Severity severity = Severity::kMild;
  std::array<SpikeSummary, kNumCategories> spikes{};
  std::vector<std::string> diagnostics;
};

// alpha * mean(deficits) + beta * s/s_max + gamma * m. Empty deficits
// contribute 0. Throws ConfigError when the weights do not sum to one.
double CategoryConfidence(const std::vector<double>& deficits, double s,
                          double m, const CategoryConfig& config,
                          double s_max = 1.0);

// Categories with C_i >= threshold, by C_i descending then category order.
std::vector<FlaggedCategory> BuildProfile(
    const std::array<double, kNumCategories>& confidences,
    const AnalysisConfig& config);

Severity ClassifySeverity(int issue_count);

// Full pipeline. analysis_id and patient_id are left for the caller.
AnalysisResult Analyze(const RecognizerOutput& output,
                       const AnalysisConfig& config,
                       const ReferencePatternBank& bank);

nlohmann::json AnalysisToJson(const AnalysisResult& result);
AnalysisResult AnalysisFromJson(const nlohmann::json& doc);

}  // namespace spikevox

#endif  // SPIKEVOX_ANALYSIS_H_
