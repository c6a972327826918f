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

#include "spikevox/engine.h"

#include <cstdlib>

#include "spikevox/random.h"

#ifndef SPIKEVOX_ASSET_DIR
#define SPIKEVOX_ASSET_DIR "assets"
#endif

namespace spikevox {

using nlohmann::json;

namespace {

void CheckPatientId(const std::string& id) {
  if (id.empty() || id.size() > 128) {
    throw ValidationError("patient_id must be 1-128 characters");
  }
  for (char c : id) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
          c == '.')) {
      throw ValidationError("patient_id may only contain letters, digits, '-', '_' and '.'");
    }
  }
}

std::string RequireString(const json& req, const char* key) {
  auto it = req.find(key);
  if (it == req.end() || !it->is_string()) {
    throw SchemaError(std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::string ShortHash(const std::string& prefix, const std::string& data) {
  return prefix + Sha256Hex(data).substr(0, 16);
}

}  // namespace

std::string DefaultAssetDir() {
  const char* env = std::getenv("SPIKEVOX_ASSET_DIR");
  return env != nullptr && *env ? env : SPIKEVOX_ASSET_DIR;
}

ServiceConfig ServiceConfig::Defaults() {
  ServiceConfig c;
  c.ResolvePaths();
  return c;
}

ServiceConfig ServiceConfig::FromJson(const json& doc) {
  ServiceConfig c;
  try {
    c.host = doc.value("host", c.host);
    c.port = doc.value("port", c.port);
    c.seed = doc.value("seed", c.seed);
    c.store_path = doc.value("store_path", c.store_path);
    c.compaction_interval = doc.value("compaction_interval", c.compaction_interval);
    c.recognizer_bridge_url = doc.value("recognizer_bridge_url", c.recognizer_bridge_url);
    c.generator_bridge_url = doc.value("generator_bridge_url", c.generator_bridge_url);
    c.bridge_timeout_ms = doc.value("bridge_timeout_ms", c.bridge_timeout_ms);
    c.cors_origin = doc.value("cors_origin", c.cors_origin);
    c.asset_dir = doc.value("asset_dir", c.asset_dir);
    c.reference_bank = doc.value("reference_bank", c.reference_bank);
    c.categories_config = doc.value("categories_config", c.categories_config);
    c.therapy_config = doc.value("therapy_config", c.therapy_config);
    c.feedback_config = doc.value("feedback_config", c.feedback_config);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("service config: ") + e.what());
  }
  if (c.port < 0 || c.port > 65535) throw ConfigError("port out of range");
  if (c.bridge_timeout_ms <= 0) throw ConfigError("bridge_timeout_ms must be > 0");
  c.ResolvePaths();
  return c;
}

ServiceConfig ServiceConfig::Load(const std::string& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ConfigError(path + " is not a JSON object");
  }
  return FromJson(doc);
}

void ServiceConfig::ResolvePaths() {
  if (asset_dir.empty()) asset_dir = DefaultAssetDir();
  if (categories_config.empty()) {
    categories_config = JoinPath(asset_dir, "config/categories.json");
  }
  if (therapy_config.empty()) {
    therapy_config = JoinPath(asset_dir, "config/therapy.json");
  }
  if (feedback_config.empty()) {
    feedback_config = JoinPath(asset_dir, "config/feedback.json");
  }
}

json MakeEnvelope(const json& data, const Warnings& warnings) {
  return {{"version", 1}, {"data", data}, {"warnings", warnings}};
}

json MakeErrorEnvelope(const std::string& code, const std::string& message) {
  return {{"version", 1}, {"error", {{"code", code}, {"message", message}}}};
}

Engine::Engine(ServiceConfig config, SessionStore::Clock clock)
    : config_(std::move(config)) {
  config_.ResolvePaths();
  analysis_ = AnalysisConfig::Load(config_.categories_config);
  therapy_cfg_ = TherapyConfig::Load(config_.therapy_config);
  feedback_cfg_ = FeedbackConfig::Load(config_.feedback_config);
  lexicon_ = Lexicon::Load(JoinPath(config_.asset_dir, "lexicon/lexicon.txt"));
  prompts_ = PromptTable::Load(JoinPath(config_.asset_dir, "therapy/prompts.json"));
  corpus_ = TemplateCorpus::Load(JoinPath(config_.asset_dir, "therapy/templates.tsv"));
  assets_ = FeedbackAssets::Load(config_.asset_dir);

  if (!config_.reference_bank.empty() && FileExists(config_.reference_bank)) {
    bank_ = ReferencePatternBank::Load(config_.reference_bank);
    const LifParams& p = bank_.params;
    const LifParams& q = analysis_.lif;
    if (p.decay != q.decay || p.threshold != q.threshold || p.reset != q.reset ||
        p.steps != q.steps) {
      throw ConfigError("reference bank was built with different LIF parameters");
    }
    for (const auto& c : analysis_.categories) {
      if (bank_.patterns[Index(c.category)].rows != c.neurons.size()) {
        throw ConfigError(std::string("reference bank rows do not match ") +
                          CategoryKey(c.category));
      }
    }
  } else {
    bank_ = GenerateReferenceBank(analysis_, config_.seed);
    if (!config_.reference_bank.empty()) bank_.Save(config_.reference_bank);
  }

  if (!config_.recognizer_bridge_url.empty()) {
    recognizer_ = std::make_unique<RecognizerBridge>(config_.recognizer_bridge_url,
                                                     config_.bridge_timeout_ms);
  }
  if (!config_.generator_bridge_url.empty()) {
    generator_ = std::make_unique<HttpGeneratorBackend>(
        config_.generator_bridge_url, config_.bridge_timeout_ms);
  }
  therapy_engine_ = std::make_unique<TherapyEngine>(
      therapy_cfg_, analysis_, lexicon_, prompts_, corpus_, generator_.get());

  SessionStore::Options opts;
  opts.path = config_.store_path;
  opts.compaction_interval = config_.compaction_interval;
  opts.success_cutoff = feedback_cfg_.success_cutoff;
  opts.clock = std::move(clock);
  store_ = std::make_unique<SessionStore>(std::move(opts));
}

Engine::~Engine() = default;

json Engine::Analyze(const RecognizerOutput& input, const std::string& patient_id,
                     Warnings* warnings) {
  std::string patient = patient_id.empty() ? "anonymous" : patient_id;
  CheckPatientId(patient);
  AnalysisResult result = spikevox::Analyze(input, analysis_, bank_);
  uint64_t seq = store_->ReserveSequence();
  result.analysis_id = ShortHash(
      "an-", std::to_string(config_.seed) + "\n" + patient + "\n" +
                 RecognizerToJson(input).dump() + "\n" + std::to_string(seq));
  result.patient_id = patient;
  store_->PutAnalysis(result, seq);
  if (warnings) {
    warnings->insert(warnings->end(), result.diagnostics.begin(),
                     result.diagnostics.end());
  }
  return AnalysisToJson(result);
}

json Engine::AnalyzeAudio(const std::string& wav, const std::string& patient_id,
                          Warnings* warnings) {
  if (!recognizer_) {
    throw UnprocessableError("recognizer_unavailable",
                             "audio input needs a recognizer bridge; post "
                             "recognizer JSON instead or configure "
                             "recognizer_bridge_url");
  }
  return Analyze(recognizer_->Recognize(wav), patient_id, warnings);
}

Difficulty Engine::DefaultDifficulty(const PatientHistory& history,
                                     Category c) const {
  auto latest = history.LatestAccuracy(c);
  if (!latest || *latest < feedback_cfg_.good) return Difficulty::kEasy;
  if (*latest < feedback_cfg_.excellent) return Difficulty::kMedium;
  return Difficulty::kHard;
}

json Engine::GenerateTherapy(const json& request, Warnings* warnings) {
  if (!request.is_object()) throw SchemaError("request must be a JSON object");
  std::string id = RequireString(request, "analysis_id");
  std::optional<Difficulty> difficulty;
  if (request.contains("difficulty") && !request["difficulty"].is_null()) {
    if (!request["difficulty"].is_string()) {
      throw SchemaError("'difficulty' must be a string");
    }
    difficulty = DifficultyFromKey(request["difficulty"].get<std::string>());
  }
  int count = kNumCategories;
  if (request.contains("count") && !request["count"].is_null()) {
    if (!request["count"].is_number_integer() || request["count"].get<int64_t>() < 1) {
      throw ValidationError("'count' must be a positive integer");
    }
    count = static_cast<int>(std::min<int64_t>(request["count"].get<int64_t>(),
                                               kNumCategories));
  }
  auto analysis = store_->GetAnalysis(id);
  json doc = {{"analysis_id", id}, {"patient_id", analysis->patient_id}};
  if (analysis->flagged.empty()) {
    doc["exercises"] = json::array();
    doc["message"] = "no disorder category was flagged; no exercises needed";
    return doc;
  }
  auto history = store_->History(analysis->patient_id);
  HistoryView view = history->View();
  uint64_t seed = Rng(config_.seed, {"therapy", id}).Next();
  std::set<std::string> selected;
  std::vector<Exercise> exercises;
  for (const auto& f : analysis->flagged) {
    if (static_cast<int>(exercises.size()) >= count) break;
    Difficulty d = difficulty ? *difficulty : DefaultDifficulty(*history, f.category);
    Exercise e = therapy_engine_->Select(f.category, d, view, seed, selected, warnings);
    e.exercise_id = ShortHash("ex-", id + "\n" + CategoryKey(e.category) + "\n" +
                                         DifficultyKey(e.difficulty) + "\n" + e.sentence);
    selected.insert(e.sentence);
    exercises.push_back(std::move(e));
  }
  store_->PutExercises(id, exercises);
  json list = json::array();
  for (const auto& e : exercises) list.push_back(ExerciseToJson(e));
  doc["exercises"] = list;
  return doc;
}

std::vector<PerformanceRecord> Engine::ParsePerformance(
    const json& performance, const AnalysisResult& analysis,
    std::vector<Exercise>* exercises) const {
  auto bad = [](const std::string& msg) {
    return UnprocessableError("invalid_performance", msg);
  };
  if (!performance.is_array()) throw bad("'performance' must be an array");
  std::vector<PerformanceRecord> records;
  for (size_t i = 0; i < performance.size(); ++i) {
    const json& item = performance[i];
    std::string where = "performance[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("exercise_id") ||
        !item["exercise_id"].is_string()) {
      throw bad(where + " needs an 'exercise_id' string");
    }
    std::string ex_id = item["exercise_id"].get<std::string>();
    auto ex = store_->FindExercise(analysis.analysis_id, ex_id);
    if (!ex) {
      throw UnprocessableError("unissued_exercise",
                               where + ": exercise '" + ex_id +
                                   "' was not issued for this analysis");
    }
    PerformanceRecord r;
    r.exercise_id = ex_id;
    r.category = ex->category;
    if (item.contains("attempt")) {
      RecognizerOutput attempt;
      try {
        attempt = RecognizerFromJson(item["attempt"], RecognizerSource::kFile);
      } catch (const Error& e) {
        throw bad(where + ".attempt: " + e.what());
      }
      std::set<std::string> targets(ex->target_phonemes.begin(),
                                    ex->target_phonemes.end());
      for (const auto& p : attempt.phonemes) {
        if (!targets.count(p.symbol)) continue;
        ++r.targets_attempted;
        if (p.confidence >= analysis_.issue_threshold) ++r.targets_correct;
      }
    } else {
      const json& att = item.value("targets_attempted", json());
      const json& cor = item.value("targets_correct", json());
      if (!att.is_number_integer() || !cor.is_number_integer()) {
        throw bad(where + " needs integer targets_attempted and targets_correct "
                          "or an 'attempt' recognizer document");
      }
      int64_t a = att.get<int64_t>(), c = cor.get<int64_t>();
      if (a < 0 || c < 0 || c > a || a > 1000000) {
        throw bad(where + ": need 0 <= targets_correct <= targets_attempted");
      }
      r.targets_attempted = static_cast<int>(a);
      r.targets_correct = static_cast<int>(c);
    }
    records.push_back(std::move(r));
    exercises->push_back(*ex);
  }
  return records;
}

json Engine::Feedback(const json& request, Warnings* warnings) {
  (void)warnings;
  if (!request.is_object()) throw SchemaError("request must be a JSON object");
  std::string id = RequireString(request, "analysis_id");
  auto analysis = store_->GetAnalysis(id);
  uint64_t session_seed = Rng(config_.seed, {"session", id}).Next();

  bool with_performance = request.contains("performance") &&
                          !request["performance"].is_null();
  std::vector<PerformanceRecord> records;
  if (with_performance) {
    std::vector<Exercise> exercises;
    records = ParsePerformance(request["performance"], *analysis, &exercises);
    auto guard = store_->LockPatient(analysis->patient_id);
    auto history = store_->History(analysis->patient_id);
    for (auto& r : records) r.prior_accuracy = history->PriorBase(r.category, id);
    std::map<Category, double> base;
    auto acc = ExerciseAccuracy(records, feedback_cfg_.lambda_fb, &base);
    for (size_t i = 0; i < records.size(); ++i) {
      Category c = records[i].category;
      if (!acc.count(c)) continue;
      auto g2p = GraphemesToPhonemes(lexicon_, exercises[i].sentence);
      store_->RecordPerformance(analysis->patient_id, id, exercises[i],
                                g2p.phonemes, acc[c], base[c]);
    }
  }
  FeedbackBundle bundle =
      GenerateFeedback(*analysis, with_performance ? &records : nullptr, assets_,
                       feedback_cfg_, session_seed);
  json doc = FeedbackToJson(bundle);
  if (with_performance) store_->PutFeedback(id, doc);
  return doc;
}

json Engine::Progress(const std::string& patient_id, const std::string& category) {
  CheckPatientId(patient_id);
  std::vector<Category> cats;
  if (category.empty()) {
    cats.assign(kAllCategories.begin(), kAllCategories.end());
  } else {
    cats.push_back(CategoryFromKey(category));
  }
  json series = json::object();
  for (Category c : cats) {
    json points = json::array();
    for (const auto& p : store_->ProgressSeries(patient_id, c)) {
      points.push_back({{"timestamp_ms", p.timestamp_ms},
                        {"accuracy", p.accuracy},
                        {"analysis_id", p.analysis_id},
                        {"exercise_id", p.exercise_id}});
    }
    series[CategoryKey(c)] = points;
  }
  return {{"patient_id", patient_id}, {"series", series}};
}

json Engine::GetAnalysis(const std::string& id) {
  return AnalysisToJson(*store_->GetAnalysis(id));
}

json Engine::Health() const {
  return {{"status", "ok"},
          {"analyses", store_->AnalysisCount()},
          {"recognizer_bridge", recognizer_ != nullptr},
          {"generator_bridge", generator_ != nullptr}};
}

void Engine::ImportAnalysis(const json& analysis_doc) {
  AnalysisResult r = AnalysisFromJson(analysis_doc);
  if (r.patient_id.empty()) r.patient_id = "anonymous";
  CheckPatientId(r.patient_id);
  store_->PutAnalysis(r, store_->ReserveSequence());
}

void Engine::ImportExercises(const std::string& analysis_id, const json& exercises) {
  if (!exercises.is_array()) throw SchemaError("exercises must be an array");
  std::vector<Exercise> list;
  for (const auto& e : exercises) list.push_back(ExerciseFromJson(e));
  store_->PutExercises(analysis_id, list);
}

}  // namespace spikevox
