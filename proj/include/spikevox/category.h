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

#ifndef SPIKEVOX_CATEGORY_H_
#define SPIKEVOX_CATEGORY_H_

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "spikevox/common.h"
#include "spikevox/phoneme.h"

namespace spikevox {

constexpr int kNumNeurons = 384;

// 1-based inclusive neuron interval, as written in the category table.
struct NeuronRange {
  int first = 1;
  int last = 0;
  int size() const { return last - first + 1; }
};

struct LifParams {
  double decay = 0.9;
  double threshold = 1.0;
  double reset = 0.0;
  int steps = 32;

  // Throws ConfigError. decay may be 1 and threshold +inf (integrator).
  void Validate() const;
};

struct CategoryConfig {
  Category category = Category::kRSound;
  std::string name;
  NeuronRange neurons;
  double typical_lo = 0.0;
  double typical_hi = 1.0;
  double threshold = 0.5;
  double alpha = 1.0 / 3, beta = 1.0 / 3, gamma = 1.0 / 3;
  std::array<bool, kNumPhonemes> targets{};
  // Targets count only inside a run of two or more consonants.
  bool consonant_run = false;

  bool IsTarget(const std::string& symbol) const;
  std::vector<std::string> TargetList() const;
};

struct AnalysisConfig {
  double issue_threshold = 0.75;
  double max_spike_density = 1.0;
  LifParams lif;
  std::array<CategoryConfig, kNumCategories> categories;

  const CategoryConfig& at(Category c) const { return categories[Index(c)]; }

  static AnalysisConfig FromJson(const nlohmann::json& doc);
  static AnalysisConfig Load(const std::string& path);
  // Weights sum to one, thresholds in (0,1), ranges partition 1..384.
  void Validate() const;
};

// True when seq[i] counts toward `cfg`'s phoneme set in its context.
bool InCategoryContext(const CategoryConfig& cfg,
                       const std::vector<std::string>& seq, size_t i);
int CountInContext(const CategoryConfig& cfg,
                   const std::vector<std::string>& seq);

}  // namespace spikevox

#endif  // SPIKEVOX_CATEGORY_H_
