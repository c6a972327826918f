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

#ifndef SPIKEVOX_THERAPY_H_
#define SPIKEVOX_THERAPY_H_

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "spikevox/category.h"
#include "spikevox/common.h"
#include "spikevox/lexicon.h"
#include "spikevox/phoneme.h"

namespace spikevox {

struct DifficultyParams {
  double mu = 0.5;
  double delta = 0.25;
  double temperature = 0.9;
};

struct TherapyWeights {
  std::array<double, 3> omega = {0.5, 0.3, 0.2};
  double eta = 0.5;
  std::array<double, kNumCategories> lambda_rel = {1, 1, 1, 1, 1, 1};
  std::array<double, 4> alpha_cx = {0.25, 0.25, 0.25, 0.25};
  std::array<double, 2> gamma_pers = {1.0, 0.5};
  int kappa = 40;
};

struct QualityRules {
  int min_targets = 2;
  int min_words = 3;
  int max_words = 20;
  int max_words_easy = 8;
};

struct TherapyConfig {
  TherapyWeights weights;
  std::array<DifficultyParams, kNumDifficulties> difficulties = {
      DifficultyParams{0.25, 0.25, 0.7}, DifficultyParams{0.5, 0.25, 0.9},
      DifficultyParams{0.75, 0.25, 1.1}};
  int candidate_count = 16;
  int max_tokens = 48;
  QualityRules quality;

  const DifficultyParams& at(Difficulty d) const {
    return difficulties[Index(d)];
  }
  static TherapyConfig FromJson(const nlohmann::json& doc);
  static TherapyConfig Load(const std::string& path);
  void Validate() const;
};

// prefix_c + modifier_d + instruction_c.
class PromptTable {
 public:
  static PromptTable FromJson(const nlohmann::json& doc);
  static PromptTable Load(const std::string& path);
  std::string Build(Category c, Difficulty d) const;
  const std::string& Modifier(Difficulty d) const { return modifier_[Index(d)]; }
  const std::string& Instruction(Category c) const {
    return instruction_[Index(c)];
  }

 private:
  std::array<std::string, kNumCategories> prefix_;
  std::array<std::string, kNumDifficulties> modifier_;
  std::array<std::string, kNumCategories> instruction_;
};

// Tab separated: category, difficulty, sentence.
class TemplateCorpus {
 public:
  static TemplateCorpus FromText(std::string_view text);
  static TemplateCorpus Load(const std::string& path);
  const std::vector<std::string>& Sentences(Category c, Difficulty d) const {
    return sentences_[Index(c)][Index(d)];
  }

 private:
  std::array<std::array<std::vector<std::string>, kNumDifficulties>,
             kNumCategories>
      sentences_;
};

enum class Origin { kTemplate, kGenerated };
const char* OriginKey(Origin o);

struct ScoreBreakdown {
  double relevance = 0.0;
  double difficulty = 0.0;
  double personalization = 0.0;
  double total = 0.0;
};

struct Candidate {
  std::string sentence;
  Origin origin = Origin::kTemplate;
  ScoreBreakdown score;
};

// Phoneme bags of past exercises, split by outcome.
struct HistoryView {
  std::vector<PhonemeBag> successes;
  std::vector<PhonemeBag> failures;
};

struct Exercise {
  std::string exercise_id;
  std::string sentence;
  Category category = Category::kRSound;
  Difficulty difficulty = Difficulty::kEasy;
  std::vector<std::string> target_phonemes;
  ScoreBreakdown score;
  Origin origin = Origin::kTemplate;
  std::string description;
  std::string prompt;
};

nlohmann::json ExerciseToJson(const Exercise& e);
Exercise ExerciseFromJson(const nlohmann::json& doc);

// Text generator reached over the bridge protocol. Throws BridgeError.
class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;
  virtual std::string Generate(const std::string& prompt, double temperature,
                               int top_k, int max_tokens) = 0;
};

// 1 if both neighbours are consonants, 0.5 if one is, else 0.
double ContextFactor(const std::vector<std::string>& seq, size_t i);

// lambda * sum psi * (1 + eta * Q) / |s|, clamped to [0,1].
double Relevance(const std::vector<std::string>& phonemes,
                 const CategoryConfig& category, double lambda, double eta);

double SentenceComplexity(const G2pResult& g2p,
                          const std::array<double, 4>& alpha);

// max(0, 1 - |c - mu| / delta).
double DifficultyAlignment(double complexity, const DifficultyParams& d);

double MaxSimilarity(const PhonemeBag& bag,
                     const std::vector<PhonemeBag>& history);
double Personalization(const PhonemeBag& sentence, const HistoryView& history,
                       const std::array<double, 2>& gamma);

double TotalScore(const ScoreBreakdown& s, const std::array<double, 3>& omega);

// Index of the highest total; ties go to the smallest sentence.
// Throws CorpusExhaustedError on an empty set.
size_t SelectBest(const std::vector<Candidate>& candidates);

class TherapyEngine {
 public:
  TherapyEngine(const TherapyConfig& config, const AnalysisConfig& analysis,
                const Lexicon& lexicon, const PromptTable& prompts,
                const TemplateCorpus& corpus,
                GeneratorBackend* generator = nullptr);

  std::string BuildPrompt(Category c, Difficulty d) const {
    return prompts_.Build(c, d);
  }

  bool PassesQuality(const std::string& sentence, Category c, Difficulty d,
                     const std::set<std::string>& selected) const;
  std::vector<std::string> QualityFilter(
      const std::vector<std::string>& sentences, Category c, Difficulty d,
      const std::set<std::string>& selected) const;

  // Seeded template draw; up to `count` distinct sentences that pass the
  // filter, in draw order.
  std::vector<std::string> TemplateCandidates(
      Category c, Difficulty d, int count, uint64_t seed,
      const std::set<std::string>& selected) const;

  // Bridge output first (if configured), padded with templates.
  std::vector<Candidate> GenerateCandidates(
      Category c, Difficulty d, int count, uint64_t seed,
      const std::set<std::string>& selected,
      std::vector<std::string>* warnings) const;

  ScoreBreakdown Score(const std::string& sentence, Category c, Difficulty d,
                       const HistoryView& history) const;

  // Exercise without an id.
  Exercise Select(Category c, Difficulty d, const HistoryView& history,
                  uint64_t seed, const std::set<std::string>& selected,
                  std::vector<std::string>* warnings) const;

  std::vector<std::string> TargetsIn(const std::string& sentence,
                                     Category c) const;

  const TherapyConfig& config() const { return config_; }

 private:
  const TherapyConfig& config_;
  const AnalysisConfig& analysis_;
  const Lexicon& lexicon_;
  const PromptTable& prompts_;
  const TemplateCorpus& corpus_;
  GeneratorBackend* generator_;
};

}  // namespace spikevox

#endif  // SPIKEVOX_THERAPY_H_
