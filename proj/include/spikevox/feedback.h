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

#ifndef SPIKEVOX_FEEDBACK_H_
#define SPIKEVOX_FEEDBACK_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spikevox/analysis.h"
#include "spikevox/common.h"

namespace spikevox {

struct FeedbackConfig {
  double lambda_fb = 0.2;
  double excellent = 0.85;
  double good = 0.70;
  double fair = 0.50;
  double success_cutoff = 0.70;
  int general_tip_count = 3;

  static FeedbackConfig FromJson(const nlohmann::json& doc);
  static FeedbackConfig Load(const std::string& path);
};

struct VisualGuide {
  std::string guide_type;
  std::string description;
  std::string reference;
};

// Guidance templates, visual-guide table and general tips. Load() fails
// with ConfigError on any gap, so request handling never sees one.
class FeedbackAssets {
 public:
  static FeedbackAssets Load(const std::string& asset_dir);

  const std::vector<std::string>& Guidance(Category c) const {
    return guidance_[Index(c)];
  }
  const VisualGuide& Visual(Category c) const { return visual_[Index(c)]; }
  const std::vector<std::string>& Tips() const { return tips_; }

 private:
  std::array<std::vector<std::string>, kNumCategories> guidance_;
  std::array<VisualGuide, kNumCategories> visual_;
  std::vector<std::string> tips_;
};

struct PerformanceRecord {
  std::string exercise_id;
  Category category = Category::kRSound;
  int targets_attempted = 0;
  int targets_correct = 0;
  std::optional<double> prior_accuracy;
};

struct ExerciseFeedback {
  std::map<Category, double> accuracy;
  std::map<Category, double> base_accuracy;
  std::map<Category, std::string> assessment;
  std::vector<Category> improvement_areas;
  std::vector<Category> strengths;
};

struct SpecificGuidance {
  Category category;
  double confidence;
  std::string text;
};

struct FeedbackBundle {
  std::string analysis_id;
  std::vector<SpecificGuidance> specific;
  std::vector<std::string> general;
  std::vector<std::pair<Category, VisualGuide>> visual;
  std::string overall;
  std::optional<ExerciseFeedback> exercise;
};

// One entry per flagged category, in the given order.
std::vector<SpecificGuidance> MakeSpecificGuidance(
    const std::vector<FlaggedCategory>& flagged, const FeedbackAssets& assets,
    uint64_t session_seed);
std::vector<std::pair<Category, VisualGuide>> MakeVisualGuides(
    const std::vector<FlaggedCategory>& flagged, const FeedbackAssets& assets);
std::vector<std::string> MakeGeneralTips(const FeedbackAssets& assets,
                                         int count, uint64_t session_seed);

// Records of one category are pooled. Categories with zero attempts are
// left out. The first prior seen for a category is used.
std::map<Category, double> ExerciseAccuracy(
    const std::vector<PerformanceRecord>& records, double lambda_fb,
    std::map<Category, double>* base = nullptr);

std::string Assess(double a_c, const FeedbackConfig& config);
ExerciseFeedback AssembleExerciseFeedback(
    const std::map<Category, double>& accuracy,
    const std::map<Category, double>& base, const FeedbackConfig& config);

const char* OverallAssessment(Severity s);

FeedbackBundle GenerateFeedback(const AnalysisResult& analysis,
                                const std::vector<PerformanceRecord>* performance,
                                const FeedbackAssets& assets,
                                const FeedbackConfig& config,
                                uint64_t session_seed);

nlohmann::json FeedbackToJson(const FeedbackBundle& bundle);

}  // namespace spikevox

#endif  // SPIKEVOX_FEEDBACK_H_
