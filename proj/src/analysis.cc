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

#include "spikevox/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spikevox/common.h"

namespace spikevox {

using nlohmann::json;

double CategoryConfidence(const std::vector<double>& deficits, double s,
                          double m, const CategoryConfig& config,
                          double s_max) {
  if (std::fabs(config.alpha + config.beta + config.gamma - 1.0) > 1e-9) {
    throw ConfigError(std::string(CategoryKey(config.category)) +
                      ": weights must sum to 1");
  }
  double mean = 0.0;
  if (!deficits.empty()) {
    for (double d : deficits) mean += d;
    mean /= static_cast<double>(deficits.size());
  }
  return config.alpha * mean + config.beta * (s / s_max) + config.gamma * m;
}

std::vector<FlaggedCategory> BuildProfile(
    const std::array<double, kNumCategories>& confidences,
    const AnalysisConfig& config) {
  std::vector<FlaggedCategory> flagged;
  for (Category c : kAllCategories) {
    if (confidences[Index(c)] >= config.at(c).threshold) {
      flagged.push_back({c, confidences[Index(c)]});
    }
  }
  std::stable_sort(flagged.begin(), flagged.end(),
                   [](const FlaggedCategory& a, const FlaggedCategory& b) {
                     return a.confidence > b.confidence;
                   });
  return flagged;
}

Severity ClassifySeverity(int issue_count) {
  if (issue_count <= 5) return Severity::kMild;
  if (issue_count <= 10) return Severity::kModerate;
  return Severity::kSevere;
}

AnalysisResult Analyze(const RecognizerOutput& output,
                       const AnalysisConfig& config,
                       const ReferencePatternBank& bank) {
  AnalysisResult result;
  result.input = output;
  result.issues = FlagPhonemeIssues(output, config.issue_threshold);
  std::vector<std::string> symbols = output.Symbols();

  Matrix currents = EncodeStimulus(result.issues, symbols, config);
  auto [spikes, potentials] = SimulateLif(currents, config.lif);

  for (const auto& cfg : config.categories) {
    int c = Index(cfg.category);
    std::vector<double> deficits;
    for (const auto& issue : result.issues) {
      if (InCategoryContext(cfg, symbols,
                            static_cast<size_t>(issue.phoneme.position))) {
        deficits.push_back(issue.deficit);
      }
    }
    SpikeSummary& sum = result.spikes[c];
    sum.issue_count = static_cast<int>(deficits.size());
    // A silent population carries no evidence: S = M = 0.
    if (currents(cfg.neurons.first - 1, 0) != 0.0) {
      sum.density = SpikeDensity(spikes, cfg.neurons);
      sum.pattern_match = PatternMatchScore(potentials, bank, cfg);
    }
    double s_norm = sum.density / config.max_spike_density;
    result.confidences[c] =
        CategoryConfidence(deficits, s_norm, sum.pattern_match, cfg, 1.0);
    if (!deficits.empty()) {
      for (double d : deficits) sum.mean_deficit += d;
      sum.mean_deficit /= static_cast<double>(deficits.size());
    }
  }
  result.flagged = BuildProfile(result.confidences, config);
  result.severity = ClassifySeverity(static_cast<int>(result.issues.size()));

  for (const auto& f : result.flagged) {
    const auto& cfg = config.at(f.category);
    double s = result.spikes[Index(f.category)].density;
    if (s < cfg.typical_lo || s > cfg.typical_hi) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "%s: spike density %.4f outside typical range [%.2f, %.2f]",
                    CategoryKey(f.category), s, cfg.typical_lo, cfg.typical_hi);
      result.diagnostics.emplace_back(buf);
    }
  }
  return result;
}

json AnalysisToJson(const AnalysisResult& r) {
  json issues = json::array();
  for (const auto& i : r.issues) {
    issues.push_back({{"symbol", i.phoneme.symbol},
                      {"position", i.phoneme.position},
                      {"confidence", i.phoneme.confidence},
                      {"deficit", i.deficit}});
  }
  json conf = json::object();
  json spikes = json::object();
  for (Category c : kAllCategories) {
    const auto& s = r.spikes[Index(c)];
    conf[CategoryKey(c)] = r.confidences[Index(c)];
    spikes[CategoryKey(c)] = {{"spike_density", s.density},
                              {"pattern_match", s.pattern_match},
                              {"mean_deficit", s.mean_deficit},
                              {"issue_count", s.issue_count}};
  }
  json flagged = json::array();
  for (const auto& f : r.flagged) {
    flagged.push_back(
        {{"category", CategoryKey(f.category)}, {"confidence", f.confidence}});
  }
  json doc = {{"analysis_id", r.analysis_id},
              {"transcript", r.input.transcript},
              {"source", SourceKey(r.input.source)},
              {"recognizer", RecognizerToJson(r.input)},
              {"phoneme_issues", issues},
              {"issue_count", r.issues.size()},
              {"category_confidences", conf},
              {"flagged", flagged},
              {"severity", SeverityKey(r.severity)},
              {"spike_summary", spikes},
              {"diagnostics", r.diagnostics}};
  if (!r.patient_id.empty()) doc["patient_id"] = r.patient_id;
  return doc;
}

AnalysisResult AnalysisFromJson(const json& doc) {
  AnalysisResult r;
  try {
    r.analysis_id = doc.at("analysis_id").get<std::string>();
    r.patient_id = doc.value("patient_id", std::string());
    std::string source = doc.value("source", std::string("file"));
    RecognizerSource src = source == "bridge"      ? RecognizerSource::kBridge
                           : source == "synthetic" ? RecognizerSource::kSynthetic
                                                   : RecognizerSource::kFile;
    r.input = RecognizerFromJson(doc.at("recognizer"), src);
    for (const auto& i : doc.at("phoneme_issues")) {
      int pos = i.at("position").get<int>();
      if (pos < 0 || pos >= static_cast<int>(r.input.phonemes.size())) {
        throw SchemaError("phoneme issue position out of range");
      }
      r.issues.push_back({r.input.phonemes[pos], i.at("deficit").get<double>()});
    }
    for (Category c : kAllCategories) {
      r.confidences[Index(c)] =
          doc.at("category_confidences").at(CategoryKey(c)).get<double>();
      const json& s = doc.at("spike_summary").at(CategoryKey(c));
      r.spikes[Index(c)] = {s.at("spike_density").get<double>(),
                            s.at("pattern_match").get<double>(),
                            s.at("mean_deficit").get<double>(),
                            s.at("issue_count").get<int>()};
    }
    for (const auto& f : doc.at("flagged")) {
      r.flagged.push_back({CategoryFromKey(f.at("category").get<std::string>()),
                           f.at("confidence").get<double>()});
    }
    r.severity = SeverityFromKey(doc.at("severity").get<std::string>());
    r.diagnostics = doc.value("diagnostics", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw SchemaError(std::string("analysis document: ") + e.what());
  }
  return r;
}

}  // namespace spikevox
