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

#include "spikevox/feedback.h"

#include <algorithm>

#include "spikevox/random.h"

namespace spikevox {

using nlohmann::json;

namespace {

json LoadJson(const std::string& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded()) throw ConfigError(path + " is not valid JSON");
  return doc;
}

}  // namespace

FeedbackConfig FeedbackConfig::FromJson(const json& doc) {
  FeedbackConfig cfg;
  try {
    cfg.lambda_fb = doc.value("lambda_feedback", cfg.lambda_fb);
    if (doc.contains("assess")) {
      const json& a = doc.at("assess");
      cfg.excellent = a.value("excellent", cfg.excellent);
      cfg.good = a.value("good", cfg.good);
      cfg.fair = a.value("fair", cfg.fair);
    }
    cfg.success_cutoff = doc.value("success_cutoff", cfg.success_cutoff);
    cfg.general_tip_count = doc.value("general_tip_count", cfg.general_tip_count);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("feedback config: ") + e.what());
  }
  if (!(cfg.fair <= cfg.good && cfg.good <= cfg.excellent)) {
    throw ConfigError("assess thresholds must be ordered fair <= good <= excellent");
  }
  if (cfg.general_tip_count < 0) throw ConfigError("general_tip_count < 0");
  return cfg;
}

FeedbackConfig FeedbackConfig::Load(const std::string& path) {
  return FromJson(LoadJson(path));
}

FeedbackAssets FeedbackAssets::Load(const std::string& asset_dir) {
  FeedbackAssets a;
  try {
    json guidance = LoadJson(JoinPath(asset_dir, "feedback/guidance.json"));
    json visual = LoadJson(JoinPath(asset_dir, "feedback/visual_guides.json"));
    json tips = LoadJson(JoinPath(asset_dir, "feedback/tips.json"));
    for (Category c : kAllCategories) {
      const char* key = CategoryKey(c);
      if (!guidance.contains(key) || guidance[key].size() < 3) {
        throw ConfigError(std::string("guidance for ") + key +
                          " needs at least 3 entries");
      }
      a.guidance_[Index(c)] = guidance[key].get<std::vector<std::string>>();
      if (!visual.contains(key)) {
        throw ConfigError(std::string("no visual guide for ") + key);
      }
      VisualGuide& v = a.visual_[Index(c)];
      v.guide_type = visual[key].at("guide_type").get<std::string>();
      v.description = visual[key].at("description").get<std::string>();
      v.reference = visual[key].at("reference").get<std::string>();
      if (!FileExists(JoinPath(asset_dir, v.reference))) {
        throw ConfigError("visual guide asset missing: " + v.reference);
      }
    }
    a.tips_ = tips.get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("feedback assets: ") + e.what());
  }
  if (a.tips_.empty()) throw ConfigError("general tips pool is empty");
  return a;
}

std::vector<SpecificGuidance> MakeSpecificGuidance(
    const std::vector<FlaggedCategory>& flagged, const FeedbackAssets& assets,
    uint64_t session_seed) {
  std::vector<SpecificGuidance> out;
  for (const auto& f : flagged) {
    const auto& pool = assets.Guidance(f.category);
    Rng rng(session_seed, {"guidance", CategoryKey(f.category)});
    out.push_back({f.category, f.confidence, pool[rng.Below(pool.size())]});
  }
  return out;
}

std::vector<std::pair<Category, VisualGuide>> MakeVisualGuides(
    const std::vector<FlaggedCategory>& flagged, const FeedbackAssets& assets) {
  std::vector<std::pair<Category, VisualGuide>> out;
  for (const auto& f : flagged) out.emplace_back(f.category, assets.Visual(f.category));
  return out;
}

std::vector<std::string> MakeGeneralTips(const FeedbackAssets& assets,
                                         int count, uint64_t session_seed) {
  std::vector<std::string> pool = assets.Tips();
  size_t k = std::min(pool.size(), static_cast<size_t>(std::max(count, 0)));
  Rng rng(session_seed, {"tips"});
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + static_cast<size_t>(rng.Below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::map<Category, double> ExerciseAccuracy(
    const std::vector<PerformanceRecord>& records, double lambda_fb,
    std::map<Category, double>* base) {
  std::map<Category, std::pair<int, int>> pooled;
  std::map<Category, double> prior;
  for (const auto& r : records) {
    auto& p = pooled[r.category];
    p.first += r.targets_attempted;
    p.second += r.targets_correct;
    if (r.prior_accuracy && !prior.count(r.category)) {
      prior[r.category] = *r.prior_accuracy;
    }
  }
  std::map<Category, double> out;
  for (const auto& [c, p] : pooled) {
    if (p.first <= 0) continue;
    double a_base = static_cast<double>(p.second) / p.first;
    double a_adj = prior.count(c) ? a_base - prior[c] : 0.0;
    out[c] = std::clamp(a_base + lambda_fb * a_adj, 0.0, 1.0);
    if (base) (*base)[c] = a_base;
  }
  return out;
}

std::string Assess(double a_c, const FeedbackConfig& config) {
  if (a_c >= config.excellent) return "excellent";
  if (a_c >= config.good) return "good";
  if (a_c >= config.fair) return "fair";
  return "needs-work";
}

ExerciseFeedback AssembleExerciseFeedback(
    const std::map<Category, double>& accuracy,
    const std::map<Category, double>& base, const FeedbackConfig& config) {
  ExerciseFeedback fe;
  fe.accuracy = accuracy;
  fe.base_accuracy = base;
  for (const auto& [c, a] : accuracy) {
    std::string label = Assess(a, config);
    if (label == "excellent") fe.strengths.push_back(c);
    if (label == "fair" || label == "needs-work") fe.improvement_areas.push_back(c);
    fe.assessment[c] = std::move(label);
  }
  return fe;
}

const char* OverallAssessment(Severity s) {
  switch (s) {
    case Severity::kModerate:
      return "Focused practice";
    case Severity::kSevere:
      return "Intensive practice";
    default:
      return "Simple practice";
  }
}

FeedbackBundle GenerateFeedback(const AnalysisResult& analysis,
                                const std::vector<PerformanceRecord>* performance,
                                const FeedbackAssets& assets,
                                const FeedbackConfig& config,
                                uint64_t session_seed) {
  FeedbackBundle b;
  b.analysis_id = analysis.analysis_id;
  // analysis.flagged is already ordered by descending confidence.
  b.specific = MakeSpecificGuidance(analysis.flagged, assets, session_seed);
  b.general = MakeGeneralTips(assets, config.general_tip_count, session_seed);
  b.visual = MakeVisualGuides(analysis.flagged, assets);
  b.overall = OverallAssessment(analysis.severity);
  if (performance != nullptr) {
    std::map<Category, double> base;
    auto acc = ExerciseAccuracy(*performance, config.lambda_fb, &base);
    b.exercise = AssembleExerciseFeedback(acc, base, config);
  }
  return b;
}

json FeedbackToJson(const FeedbackBundle& b) {
  json specific = json::array();
  for (const auto& s : b.specific) {
    specific.push_back({{"category", CategoryKey(s.category)},
                        {"confidence", s.confidence},
                        {"guidance", s.text}});
  }
  json visual = json::array();
  for (const auto& [c, v] : b.visual) {
    visual.push_back({{"category", CategoryKey(c)},
                      {"guide_type", v.guide_type},
                      {"description", v.description},
                      {"reference", v.reference}});
  }
  json doc = {{"analysis_id", b.analysis_id},
              {"overall", b.overall},
              {"specific", specific},
              {"general", b.general},
              {"visual", visual}};
  if (b.exercise) {
    const ExerciseFeedback& fe = *b.exercise;
    json acc = json::object(), base = json::object(), label = json::object();
    for (const auto& [c, a] : fe.accuracy) acc[CategoryKey(c)] = a;
    for (const auto& [c, a] : fe.base_accuracy) base[CategoryKey(c)] = a;
    for (const auto& [c, l] : fe.assessment) label[CategoryKey(c)] = l;
    json areas = json::array(), strengths = json::array();
    for (Category c : fe.improvement_areas) areas.push_back(CategoryKey(c));
    for (Category c : fe.strengths) strengths.push_back(CategoryKey(c));
    doc["exercise"] = {{"accuracy", acc},
                       {"base_accuracy", base},
                       {"assessment", label},
                       {"improvement_areas", areas},
                       {"strengths", strengths}};
  }
  return doc;
}

}  // namespace spikevox
