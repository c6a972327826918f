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

#ifndef SPIKEVOX_SESSION_STORE_H_
#define SPIKEVOX_SESSION_STORE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "spikevox/analysis.h"
#include "spikevox/therapy.h"

namespace spikevox {

struct HistoryRecord {
  std::string exercise_id;
  std::string analysis_id;
  std::string sentence;
  Category category = Category::kRSound;
  Difficulty difficulty = Difficulty::kEasy;
  std::vector<std::string> phonemes;
  double accuracy = 0.0;       // A_c
  double base_accuracy = 0.0;  // A_base
  int64_t timestamp_ms = 0;
  bool success = false;
};

struct ProgressPoint {
  int64_t timestamp_ms = 0;
  Category category = Category::kRSound;
  double accuracy = 0.0;
  std::string analysis_id;
  std::string exercise_id;
};

struct PatientHistory {
  std::string patient_id;
  std::vector<HistoryRecord> successes;
  std::vector<HistoryRecord> failures;
  std::vector<ProgressPoint> progress;

  HistoryView View() const;
  // Most recent A_c for the category.
  std::optional<double> LatestAccuracy(Category c) const;
  // Most recent A_base for the category from another analysis.
  std::optional<double> PriorBase(Category c,
                                  const std::string& analysis_id) const;
  int64_t LastTimestamp() const;
};

nlohmann::json HistoryToJson(const PatientHistory& h);

// Single-file JSON-lines log (see docs/store-format.md). An empty path
// keeps everything in memory. Writers are serialized; readers get
// immutable snapshots.
class SessionStore {
 public:
  using Clock = std::function<int64_t()>;

  struct Options {
    std::string path;
    int compaction_interval = 256;  // appends between compactions, 0 = never
    double success_cutoff = 0.70;
    Clock clock;  // milliseconds; defaults to the system clock
  };

  explicit SessionStore(Options options);
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  static int64_t SystemClockMs();

  // Store-wide counter used to derive analysis ids.
  uint64_t ReserveSequence();

  // Throws ValidationError on a duplicate id, StoreIoError on write failure.
  // `sequence` is the value from ReserveSequence(), kept so the counter
  // survives restarts.
  void PutAnalysis(const AnalysisResult& result, uint64_t sequence = 0);
  // Throws NotFoundError.
  std::shared_ptr<const AnalysisResult> GetAnalysis(const std::string& id) const;
  size_t AnalysisCount() const;

  // Appends exercises whose ids are new for the analysis.
  void PutExercises(const std::string& analysis_id,
                    const std::vector<Exercise>& exercises);
  std::vector<Exercise> Exercises(const std::string& analysis_id) const;
  std::optional<Exercise> FindExercise(const std::string& analysis_id,
                                       const std::string& exercise_id) const;

  // Serializes read-modify-write sequences for one patient.
  std::unique_lock<std::mutex> LockPatient(const std::string& patient_id);

  // Routes to successes iff a_c >= success_cutoff. Throws NotFoundError
  // when the exercise was never issued for the analysis.
  std::shared_ptr<const PatientHistory> RecordPerformance(
      const std::string& patient_id, const std::string& analysis_id,
      const Exercise& exercise, const std::vector<std::string>& phonemes,
      double a_c, double a_base);

  void PutFeedback(const std::string& analysis_id, const nlohmann::json& bundle);
  std::vector<nlohmann::json> Feedback(const std::string& analysis_id) const;

  // Empty history for unknown patients.
  std::shared_ptr<const PatientHistory> History(
      const std::string& patient_id) const;
  std::vector<ProgressPoint> ProgressSeries(const std::string& patient_id,
                                            Category category) const;

  // Rewrites the log through a temp file and rename.
  void Compact();
  nlohmann::json Export() const;

 private:
  void Load();
  void Replay(const nlohmann::json& record);
  void Append(const nlohmann::json& record);
  void WriteAll(int fd) const;
  void OpenForAppend();

  void ApplyAnalysis(std::shared_ptr<const AnalysisResult> a, uint64_t seq);
  void CompactLocked();
  void ApplyExercises(const std::string& analysis_id,
                      const std::vector<Exercise>& exercises);
  void ApplyPerformance(const std::string& patient_id, const HistoryRecord& r);

  Options options_;
  int fd_ = -1;
  int appends_since_compaction_ = 0;
  std::atomic<uint64_t> sequence_{0};

  // Held by every writer across the append and the in-memory update.
  mutable std::mutex write_mu_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<const AnalysisResult>> analyses_;
  std::vector<std::string> analysis_order_;
  std::map<std::string, uint64_t> analysis_seq_;
  std::map<std::string, std::vector<Exercise>> exercises_;
  std::map<std::string, std::vector<nlohmann::json>> feedback_;
  std::map<std::string, std::shared_ptr<const PatientHistory>> patients_;

  std::mutex locks_mu_;
  std::map<std::string, std::unique_ptr<std::mutex>> patient_locks_;
};

}  // namespace spikevox

#endif  // SPIKEVOX_SESSION_STORE_H_
