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

#ifndef SPIKEVOX_ENGINE_H_
#define SPIKEVOX_ENGINE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "spikevox/analysis.h"
#include "spikevox/bridge.h"
#include "spikevox/feedback.h"
#include "spikevox/lexicon.h"
#include "spikevox/session_store.h"
#include "spikevox/spiking.h"
#include "spikevox/therapy.h"

namespace spikevox {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  uint64_t seed = 42;
  std::string store_path;  // empty: in memory
  int compaction_interval = 256;
  std::string recognizer_bridge_url;
  std::string generator_bridge_url;
  int bridge_timeout_ms = 5000;
  std::string cors_origin = "*";
  std::string asset_dir;
  std::string reference_bank;  // empty: generate at startup
  std::string categories_config;
  std::string therapy_config;
  std::string feedback_config;

  // Unset paths resolve against asset_dir (default: the installed assets).
  static ServiceConfig FromJson(const nlohmann::json& doc);
  static ServiceConfig Load(const std::string& path);
  static ServiceConfig Defaults();
  void ResolvePaths();
};

std::string DefaultAssetDir();

using Warnings = std::vector<std::string>;

nlohmann::json MakeEnvelope(const nlohmann::json& data, const Warnings& warnings);
nlohmann::json MakeErrorEnvelope(const std::string& code,
                                 const std::string& message);

// Composes analysis, persistence, therapy and feedback. Shared by the
// HTTP service and the CLI so both produce the same documents.
class Engine {
 public:
  explicit Engine(ServiceConfig config, SessionStore::Clock clock = {});
  ~Engine();

  nlohmann::json Analyze(const RecognizerOutput& input,
                         const std::string& patient_id, Warnings* warnings);
  // Throws UnprocessableError without a recognizer bridge.
  nlohmann::json AnalyzeAudio(const std::string& wav,
                              const std::string& patient_id,
                              Warnings* warnings);
  // {analysis_id, difficulty?, count?}
  nlohmann::json GenerateTherapy(const nlohmann::json& request,
                                 Warnings* warnings);
  // {analysis_id, performance?}
  nlohmann::json Feedback(const nlohmann::json& request, Warnings* warnings);
  nlohmann::json Progress(const std::string& patient_id,
                          const std::string& category);
  nlohmann::json GetAnalysis(const std::string& id);
  nlohmann::json Health() const;

  // Registers documents produced elsewhere (CLI file workflow).
  void ImportAnalysis(const nlohmann::json& analysis_doc);
  void ImportExercises(const std::string& analysis_id,
                       const nlohmann::json& exercises);

  Difficulty DefaultDifficulty(const PatientHistory& history, Category c) const;

  const ServiceConfig& config() const { return config_; }
  const AnalysisConfig& analysis_config() const { return analysis_; }
  const TherapyEngine& therapy() const { return *therapy_engine_; }
  const Lexicon& lexicon() const { return lexicon_; }
  const ReferencePatternBank& bank() const { return bank_; }
  SessionStore& store() { return *store_; }
  bool has_recognizer() const { return recognizer_ != nullptr; }

 private:
  std::vector<PerformanceRecord> ParsePerformance(
      const nlohmann::json& performance, const AnalysisResult& analysis,
      std::vector<Exercise>* exercises) const;

  ServiceConfig config_;
  AnalysisConfig analysis_;
  TherapyConfig therapy_cfg_;
  FeedbackConfig feedback_cfg_;
  Lexicon lexicon_;
  PromptTable prompts_;
  TemplateCorpus corpus_;
  FeedbackAssets assets_;
  ReferencePatternBank bank_;
  std::unique_ptr<RecognizerBridge> recognizer_;
  std::unique_ptr<GeneratorBackend> generator_;
  std::unique_ptr<TherapyEngine> therapy_engine_;
  std::unique_ptr<SessionStore> store_;
};

}  // namespace spikevox

#endif  // SPIKEVOX_ENGINE_H_
