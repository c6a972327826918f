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

#include "spikevox/category.h"

#include <cmath>
#include <limits>

namespace spikevox {

using nlohmann::json;

void LifParams::Validate() const {
  if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("lif.decay not in (0,1]");
  if (!(threshold > 0.0)) throw ConfigError("lif.threshold must be > 0");
  if (!std::isfinite(reset) || !(reset < threshold)) {
    throw ConfigError("lif.reset must be below threshold");
  }
  if (steps < 1) throw ConfigError("lif.steps must be >= 1");
}

bool CategoryConfig::IsTarget(const std::string& symbol) const {
  int i = PhonemeIndex(symbol);
  return i >= 0 && targets[i];
}

std::vector<std::string> CategoryConfig::TargetList() const {
  std::vector<std::string> out;
  for (int i = 0; i < kNumPhonemes; ++i) {
    if (targets[i]) out.emplace_back(PhonemeInventory()[i]);
  }
  return out;
}

AnalysisConfig AnalysisConfig::FromJson(const json& doc) {
  AnalysisConfig cfg;
  try {
    cfg.issue_threshold = doc.value("issue_threshold", 0.75);
    cfg.max_spike_density = doc.value("max_spike_density", 1.0);
    if (doc.contains("lif")) {
      const json& l = doc.at("lif");
      cfg.lif.decay = l.value("decay", 0.9);
      cfg.lif.threshold = l.value("threshold", 1.0);
      cfg.lif.reset = l.value("reset", 0.0);
      cfg.lif.steps = l.value("steps", 32);
    }
    std::array<bool, kNumCategories> seen{};
    for (const json& c : doc.at("categories")) {
      Category id = CategoryFromKey(c.at("category").get<std::string>());
      if (seen[Index(id)]) {
        throw ConfigError(std::string("duplicate category ") + CategoryKey(id));
      }
      seen[Index(id)] = true;
      CategoryConfig& cc = cfg.categories[Index(id)];
      cc.category = id;
      cc.name = c.value("name", std::string(CategoryKey(id)));
      cc.neurons = {c.at("neurons").at(0).get<int>(),
                    c.at("neurons").at(1).get<int>()};
      cc.typical_lo = c.at("typical_density").at(0).get<double>();
      cc.typical_hi = c.at("typical_density").at(1).get<double>();
      cc.threshold = c.at("threshold").get<double>();
      cc.alpha = c.at("weights").at(0).get<double>();
      cc.beta = c.at("weights").at(1).get<double>();
      cc.gamma = c.at("weights").at(2).get<double>();
      for (const auto& p : c.at("target_phonemes")) {
        int i = PhonemeIndex(p.get<std::string>());
        if (i < 0) throw ConfigError("unknown target phoneme " + p.dump());
        cc.targets[i] = true;
      }
      std::string ctx = c.value("context", std::string());
      if (!ctx.empty() && ctx != "consonant_run") {
        throw ConfigError("unknown context rule '" + ctx + "'");
      }
      cc.consonant_run = ctx == "consonant_run";
    }
    for (int i = 0; i < kNumCategories; ++i) {
      if (!seen[i]) {
        throw ConfigError(std::string("missing category ") +
                          CategoryKey(static_cast<Category>(i)));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("category config: ") + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("category config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

AnalysisConfig AnalysisConfig::Load(const std::string& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded()) throw ConfigError(path + " is not valid JSON");
  return FromJson(doc);
}

void AnalysisConfig::Validate() const {
  if (!(issue_threshold > 0.0 && issue_threshold < 1.0)) {
    throw ConfigError("issue_threshold not in (0,1)");
  }
  if (!(max_spike_density > 0.0)) throw ConfigError("max_spike_density <= 0");
  lif.Validate();
  std::array<int, kNumNeurons + 1> owner{};
  for (const auto& c : categories) {
    const char* key = CategoryKey(c.category);
    if (std::fabs(c.alpha + c.beta + c.gamma - 1.0) > 1e-9) {
      throw ConfigError(std::string(key) + ": weights must sum to 1");
    }
    if (c.alpha < 0 || c.beta < 0 || c.gamma < 0) {
      throw ConfigError(std::string(key) + ": negative weight");
    }
    if (!(c.threshold > 0.0 && c.threshold < 1.0)) {
      throw ConfigError(std::string(key) + ": threshold not in (0,1)");
    }
    if (c.neurons.first < 1 || c.neurons.last > kNumNeurons ||
        c.neurons.size() < 1) {
      throw ConfigError(std::string(key) + ": bad neuron range");
    }
    for (int n = c.neurons.first; n <= c.neurons.last; ++n) {
      if (owner[n]++) throw ConfigError(std::string(key) + ": ranges overlap");
    }
  }
  for (int n = 1; n <= kNumNeurons; ++n) {
    if (!owner[n]) {
      throw ConfigError("neuron " + std::to_string(n) + " has no category");
    }
  }
}

bool InCategoryContext(const CategoryConfig& cfg,
                       const std::vector<std::string>& seq, size_t i) {
  if (!cfg.IsTarget(seq[i])) return false;
  if (!cfg.consonant_run) return true;
  if (!IsConsonant(seq[i])) return false;
  bool left = i > 0 && IsConsonant(seq[i - 1]);
  bool right = i + 1 < seq.size() && IsConsonant(seq[i + 1]);
  return left || right;
}

int CountInContext(const CategoryConfig& cfg,
                   const std::vector<std::string>& seq) {
  int n = 0;
  for (size_t i = 0; i < seq.size(); ++i) n += InCategoryContext(cfg, seq, i);
  return n;
}

}  // namespace spikevox
