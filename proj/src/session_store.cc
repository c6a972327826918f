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

#include "spikevox/session_store.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <libgen.h>

namespace spikevox {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "spikevox-store";
constexpr int kVersion = 1;

json HistoryRecordToJson(const HistoryRecord& r) {
  return {{"exercise_id", r.exercise_id},
          {"analysis_id", r.analysis_id},
          {"sentence", r.sentence},
          {"category", CategoryKey(r.category)},
          {"difficulty", DifficultyKey(r.difficulty)},
          {"phonemes", r.phonemes},
          {"accuracy", r.accuracy},
          {"base_accuracy", r.base_accuracy},
          {"timestamp_ms", r.timestamp_ms},
          {"success", r.success}};
}

HistoryRecord HistoryRecordFromJson(const json& j) {
  HistoryRecord r;
  r.exercise_id = j.at("exercise_id").get<std::string>();
  r.analysis_id = j.at("analysis_id").get<std::string>();
  r.sentence = j.at("sentence").get<std::string>();
  r.category = CategoryFromKey(j.at("category").get<std::string>());
  r.difficulty = DifficultyFromKey(j.at("difficulty").get<std::string>());
  r.phonemes = j.at("phonemes").get<std::vector<std::string>>();
  r.accuracy = j.at("accuracy").get<double>();
  r.base_accuracy = j.at("base_accuracy").get<double>();
  r.timestamp_ms = j.at("timestamp_ms").get<int64_t>();
  r.success = j.at("success").get<bool>();
  return r;
}

std::string Errno(const std::string& what, const std::string& path) {
  return what + " " + path + ": " + std::strerror(errno);
}

void WriteFully(int fd, const std::string& data, const std::string& path) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw StoreIoError(Errno("write", path));
    }
    off += static_cast<size_t>(n);
  }
}

std::vector<HistoryRecord> InOrder(const PatientHistory& h) {
  std::vector<HistoryRecord> all = h.successes;
  all.insert(all.end(), h.failures.begin(), h.failures.end());
  std::sort(all.begin(), all.end(),
            [](const HistoryRecord& a, const HistoryRecord& b) {
              return a.timestamp_ms < b.timestamp_ms;
            });
  return all;
}

}  // namespace

HistoryView PatientHistory::View() const {
  HistoryView v;
  for (const auto& r : successes) v.successes.push_back(BagOf(r.phonemes));
  for (const auto& r : failures) v.failures.push_back(BagOf(r.phonemes));
  return v;
}

std::optional<double> PatientHistory::LatestAccuracy(Category c) const {
  for (auto it = progress.rbegin(); it != progress.rend(); ++it) {
    if (it->category == c) return it->accuracy;
  }
  return std::nullopt;
}

std::optional<double> PatientHistory::PriorBase(
    Category c, const std::string& analysis_id) const {
  std::optional<double> out;
  int64_t best = INT64_MIN;
  for (const auto* list : {&successes, &failures}) {
    for (const auto& r : *list) {
      if (r.category == c && r.analysis_id != analysis_id &&
          r.timestamp_ms > best) {
        best = r.timestamp_ms;
        out = r.base_accuracy;
      }
    }
  }
  return out;
}

int64_t PatientHistory::LastTimestamp() const {
  return progress.empty() ? INT64_MIN : progress.back().timestamp_ms;
}

json HistoryToJson(const PatientHistory& h) {
  json ok = json::array(), bad = json::array(), progress = json::array();
  for (const auto& r : h.successes) ok.push_back(HistoryRecordToJson(r));
  for (const auto& r : h.failures) bad.push_back(HistoryRecordToJson(r));
  for (const auto& p : h.progress) {
    progress.push_back({{"timestamp_ms", p.timestamp_ms},
                        {"category", CategoryKey(p.category)},
                        {"accuracy", p.accuracy},
                        {"analysis_id", p.analysis_id},
                        {"exercise_id", p.exercise_id}});
  }
  return {{"patient_id", h.patient_id},
          {"successes", ok},
          {"failures", bad},
          {"progress", progress}};
}

SessionStore::SessionStore(Options options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = &SessionStore::SystemClockMs;
  Load();
}

SessionStore::~SessionStore() {
  if (fd_ >= 0) ::close(fd_);
}

int64_t SessionStore::SystemClockMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void SessionStore::OpenForAppend() {
  fd_ = ::open(options_.path.c_str(), O_WRONLY | O_APPEND | O_CLOEXEC);
  if (fd_ < 0) throw StoreIoError(Errno("open", options_.path));
}

void SessionStore::Load() {
  if (options_.path.empty()) return;
  const std::string& path = options_.path;
  int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) {
    if (errno != ENOENT) throw StoreIoError(Errno("open", path));
    fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644);
    if (fd < 0) throw StoreIoError(Errno("create", path));
    json header = {{"format", kFormat}, {"version", kVersion}};
    try {
      WriteFully(fd, header.dump() + "\n", path);
    } catch (...) {
      ::close(fd);
      throw;
    }
    if (::fsync(fd) != 0) {
      ::close(fd);
      throw StoreIoError(Errno("fsync", path));
    }
    ::close(fd);
    OpenForAppend();
    return;
  }
  std::string data;
  char buf[1 << 16];
  for (;;) {
    ssize_t n = ::read(fd, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      throw StoreIoError(Errno("read", path));
    }
    if (n == 0) break;
    data.append(buf, static_cast<size_t>(n));
  }
  ::close(fd);

  size_t pos = 0;
  int line_no = 0;
  while (pos < data.size()) {
    size_t nl = data.find('\n', pos);
    bool complete = nl != std::string::npos;
    std::string line = data.substr(pos, complete ? nl - pos : std::string::npos);
    ++line_no;
    json rec = json::parse(line, nullptr, false);
    if (line_no == 1) {
      if (rec.is_discarded() || rec.value("format", "") != kFormat) {
        throw StoreIoError(path + ": not a spikevox store");
      }
      if (rec.value("version", 0) != kVersion) {
        throw StoreIoError(path + ": unsupported store version");
      }
    } else if (rec.is_discarded()) {
      if (complete) {
        throw StoreIoError(path + ": corrupt record at line " +
                           std::to_string(line_no));
      }
      // Torn final write: drop it.
      if (::truncate(path.c_str(), static_cast<off_t>(pos)) != 0) {
        throw StoreIoError(Errno("truncate", path));
      }
      break;
    } else {
      try {
        Replay(rec);
      } catch (const Error& e) {
        throw StoreIoError(path + ": bad record at line " +
                           std::to_string(line_no) + ": " + e.what());
      } catch (const json::exception& e) {
        throw StoreIoError(path + ": bad record at line " +
                           std::to_string(line_no) + ": " + e.what());
      }
    }
    if (!complete) {
      // Parsable but unterminated: finish the line.
      int wfd = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CLOEXEC);
      if (wfd < 0) throw StoreIoError(Errno("open", path));
      WriteFully(wfd, "\n", path);
      ::fsync(wfd);
      ::close(wfd);
      break;
    }
    pos = nl + 1;
  }
  if (line_no == 0) throw StoreIoError(path + ": empty store file");
  OpenForAppend();
}

void SessionStore::Replay(const json& rec) {
  std::string kind = rec.at("kind").get<std::string>();
  if (kind == "analysis") {
    auto a = std::make_shared<AnalysisResult>(AnalysisFromJson(rec.at("data")));
    ApplyAnalysis(std::move(a), rec.value("sequence", uint64_t{0}));
  } else if (kind == "exercises") {
    std::vector<Exercise> list;
    for (const auto& e : rec.at("data")) list.push_back(ExerciseFromJson(e));
    ApplyExercises(rec.at("analysis_id").get<std::string>(), list);
  } else if (kind == "performance") {
    ApplyPerformance(rec.at("patient_id").get<std::string>(),
                     HistoryRecordFromJson(rec.at("data")));
  } else if (kind == "feedback") {
    feedback_[rec.at("analysis_id").get<std::string>()].push_back(rec.at("data"));
  } else {
    throw SchemaError("unknown record kind '" + kind + "'");
  }
}

void SessionStore::Append(const json& record) {
  if (fd_ < 0) return;
  WriteFully(fd_, record.dump() + "\n", options_.path);
  if (::fsync(fd_) != 0) throw StoreIoError(Errno("fsync", options_.path));
  ++appends_since_compaction_;
}

uint64_t SessionStore::ReserveSequence() { return sequence_.fetch_add(1); }

void SessionStore::ApplyAnalysis(std::shared_ptr<const AnalysisResult> a,
                                 uint64_t seq) {
  std::unique_lock lock(mu_);
  const std::string id = a->analysis_id;
  analysis_order_.push_back(id);
  analysis_seq_[id] = seq;
  analyses_[id] = std::move(a);
  uint64_t next = std::max<uint64_t>(seq + 1, analyses_.size());
  uint64_t cur = sequence_.load();
  while (cur < next && !sequence_.compare_exchange_weak(cur, next)) {
  }
}

void SessionStore::PutAnalysis(const AnalysisResult& result, uint64_t sequence) {
  if (result.analysis_id.empty()) throw ValidationError("analysis id is empty");
  std::lock_guard wl(write_mu_);
  {
    std::shared_lock lock(mu_);
    if (analyses_.count(result.analysis_id)) {
      throw ValidationError("duplicate analysis id " + result.analysis_id);
    }
  }
  Append({{"kind", "analysis"},
          {"sequence", sequence},
          {"data", AnalysisToJson(result)}});
  ApplyAnalysis(std::make_shared<const AnalysisResult>(result), sequence);
  if (options_.compaction_interval > 0 &&
      appends_since_compaction_ >= options_.compaction_interval) {
    CompactLocked();
  }
}

std::shared_ptr<const AnalysisResult> SessionStore::GetAnalysis(
    const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = analyses_.find(id);
  if (it == analyses_.end()) throw NotFoundError("unknown analysis id '" + id + "'");
  return it->second;
}

size_t SessionStore::AnalysisCount() const {
  std::shared_lock lock(mu_);
  return analyses_.size();
}

void SessionStore::ApplyExercises(const std::string& analysis_id,
                                  const std::vector<Exercise>& exercises) {
  std::unique_lock lock(mu_);
  if (!analyses_.count(analysis_id)) {
    throw NotFoundError("unknown analysis id '" + analysis_id + "'");
  }
  auto& list = exercises_[analysis_id];
  for (const auto& e : exercises) {
    bool known = std::any_of(list.begin(), list.end(), [&](const Exercise& x) {
      return x.exercise_id == e.exercise_id;
    });
    if (!known) list.push_back(e);
  }
}

void SessionStore::PutExercises(const std::string& analysis_id,
                                const std::vector<Exercise>& exercises) {
  std::lock_guard wl(write_mu_);
  std::vector<Exercise> fresh;
  {
    std::shared_lock lock(mu_);
    if (!analyses_.count(analysis_id)) {
      throw NotFoundError("unknown analysis id '" + analysis_id + "'");
    }
    auto it = exercises_.find(analysis_id);
    for (const auto& e : exercises) {
      bool known = it != exercises_.end() &&
                   std::any_of(it->second.begin(), it->second.end(),
                               [&](const Exercise& x) {
                                 return x.exercise_id == e.exercise_id;
                               });
      if (!known) fresh.push_back(e);
    }
  }
  if (fresh.empty()) return;
  json list = json::array();
  for (const auto& e : fresh) list.push_back(ExerciseToJson(e));
  Append({{"kind", "exercises"}, {"analysis_id", analysis_id}, {"data", list}});
  ApplyExercises(analysis_id, fresh);
}

std::vector<Exercise> SessionStore::Exercises(const std::string& analysis_id) const {
  std::shared_lock lock(mu_);
  auto it = exercises_.find(analysis_id);
  return it == exercises_.end() ? std::vector<Exercise>{} : it->second;
}

std::optional<Exercise> SessionStore::FindExercise(
    const std::string& analysis_id, const std::string& exercise_id) const {
  std::shared_lock lock(mu_);
  auto it = exercises_.find(analysis_id);
  if (it == exercises_.end()) return std::nullopt;
  for (const auto& e : it->second) {
    if (e.exercise_id == exercise_id) return e;
  }
  return std::nullopt;
}

std::unique_lock<std::mutex> SessionStore::LockPatient(
    const std::string& patient_id) {
  std::mutex* m;
  {
    std::lock_guard lock(locks_mu_);
    auto& slot = patient_locks_[patient_id];
    if (!slot) slot = std::make_unique<std::mutex>();
    m = slot.get();
  }
  return std::unique_lock<std::mutex>(*m);
}

void SessionStore::ApplyPerformance(const std::string& patient_id,
                                    const HistoryRecord& r) {
  std::unique_lock lock(mu_);
  auto it = patients_.find(patient_id);
  auto next = it == patients_.end() ? std::make_shared<PatientHistory>()
                                    : std::make_shared<PatientHistory>(*it->second);
  next->patient_id = patient_id;
  (r.success ? next->successes : next->failures).push_back(r);
  next->progress.push_back(
      {r.timestamp_ms, r.category, r.accuracy, r.analysis_id, r.exercise_id});
  patients_[patient_id] = std::move(next);
}

std::shared_ptr<const PatientHistory> SessionStore::RecordPerformance(
    const std::string& patient_id, const std::string& analysis_id,
    const Exercise& exercise, const std::vector<std::string>& phonemes,
    double a_c, double a_base) {
  if (!FindExercise(analysis_id, exercise.exercise_id)) {
    throw NotFoundError("exercise '" + exercise.exercise_id +
                        "' was not issued for analysis '" + analysis_id + "'");
  }
  std::lock_guard wl(write_mu_);
  HistoryRecord r;
  r.exercise_id = exercise.exercise_id;
  r.analysis_id = analysis_id;
  r.sentence = exercise.sentence;
  r.category = exercise.category;
  r.difficulty = exercise.difficulty;
  r.phonemes = phonemes;
  r.accuracy = a_c;
  r.base_accuracy = a_base;
  r.success = a_c >= options_.success_cutoff;
  int64_t last = History(patient_id)->LastTimestamp();
  int64_t now = options_.clock();
  r.timestamp_ms = last == INT64_MIN ? now : std::max(now, last + 1);
  Append({{"kind", "performance"},
          {"patient_id", patient_id},
          {"data", HistoryRecordToJson(r)}});
  ApplyPerformance(patient_id, r);
  if (options_.compaction_interval > 0 &&
      appends_since_compaction_ >= options_.compaction_interval) {
    CompactLocked();
  }
  return History(patient_id);
}

void SessionStore::PutFeedback(const std::string& analysis_id,
                               const json& bundle) {
  std::lock_guard wl(write_mu_);
  Append({{"kind", "feedback"}, {"analysis_id", analysis_id}, {"data", bundle}});
  std::unique_lock lock(mu_);
  feedback_[analysis_id].push_back(bundle);
}

std::vector<json> SessionStore::Feedback(const std::string& analysis_id) const {
  std::shared_lock lock(mu_);
  auto it = feedback_.find(analysis_id);
  return it == feedback_.end() ? std::vector<json>{} : it->second;
}

std::shared_ptr<const PatientHistory> SessionStore::History(
    const std::string& patient_id) const {
  std::shared_lock lock(mu_);
  auto it = patients_.find(patient_id);
  if (it != patients_.end()) return it->second;
  auto empty = std::make_shared<PatientHistory>();
  empty->patient_id = patient_id;
  return empty;
}

std::vector<ProgressPoint> SessionStore::ProgressSeries(
    const std::string& patient_id, Category category) const {
  std::vector<ProgressPoint> out;
  for (const auto& p : History(patient_id)->progress) {
    if (p.category == category) out.push_back(p);
  }
  return out;
}

void SessionStore::WriteAll(int fd) const {
  std::shared_lock lock(mu_);
  const std::string& path = options_.path;
  std::string out = json{{"format", kFormat}, {"version", kVersion}}.dump() + "\n";
  for (const auto& id : analysis_order_) {
    out += json{{"kind", "analysis"},
                {"sequence", analysis_seq_.at(id)},
                {"data", AnalysisToJson(*analyses_.at(id))}}
               .dump() +
           "\n";
    auto ex = exercises_.find(id);
    if (ex != exercises_.end() && !ex->second.empty()) {
      json list = json::array();
      for (const auto& e : ex->second) list.push_back(ExerciseToJson(e));
      out += json{{"kind", "exercises"}, {"analysis_id", id}, {"data", list}}.dump() +
             "\n";
    }
    auto fb = feedback_.find(id);
    if (fb != feedback_.end()) {
      for (const auto& b : fb->second) {
        out += json{{"kind", "feedback"}, {"analysis_id", id}, {"data", b}}.dump() +
               "\n";
      }
    }
  }
  for (const auto& [pid, hist] : patients_) {
    for (const auto& r : InOrder(*hist)) {
      out += json{{"kind", "performance"},
                  {"patient_id", pid},
                  {"data", HistoryRecordToJson(r)}}
                 .dump() +
             "\n";
    }
  }
  WriteFully(fd, out, path);
}

void SessionStore::CompactLocked() {
  appends_since_compaction_ = 0;
  if (options_.path.empty()) return;
  std::string tmp = options_.path + ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw StoreIoError(Errno("open", tmp));
  try {
    WriteAll(fd);
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmp.c_str());
    throw StoreIoError(Errno("fsync", tmp));
  }
  if (::rename(tmp.c_str(), options_.path.c_str()) != 0) {
    ::unlink(tmp.c_str());
    throw StoreIoError(Errno("rename", tmp));
  }
  std::string dir_buf = options_.path;
  int dfd = ::open(::dirname(dir_buf.data()), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (dfd >= 0) {
    ::fsync(dfd);
    ::close(dfd);
  }
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  OpenForAppend();
}

void SessionStore::Compact() {
  std::lock_guard wl(write_mu_);
  CompactLocked();
}

json SessionStore::Export() const {
  std::shared_lock lock(mu_);
  json analyses = json::array();
  for (const auto& id : analysis_order_) {
    json a = AnalysisToJson(*analyses_.at(id));
    json ex = json::array();
    auto it = exercises_.find(id);
    if (it != exercises_.end()) {
      for (const auto& e : it->second) ex.push_back(ExerciseToJson(e));
    }
    a["exercises"] = ex;
    auto fb = feedback_.find(id);
    a["feedback"] = fb == feedback_.end() ? json::array() : json(fb->second);
    analyses.push_back(std::move(a));
  }
  json patients = json::object();
  for (const auto& [pid, hist] : patients_) patients[pid] = HistoryToJson(*hist);
  return {{"format", "spikevox-export"},
          {"version", kVersion},
          {"analyses", analyses},
          {"patients", patients}};
}

}  // namespace spikevox
