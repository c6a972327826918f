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

#ifndef SPIKEVOX_COMMON_H_
#define SPIKEVOX_COMMON_H_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spikevox {

// Base of every error the library throws. `code()` is the stable machine
// readable token used in API error envelopes.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Document does not have the expected shape.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& message)
      : Error("schema_error", message) {}
};

// Document is well formed but a value is out of range or unknown.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error("validation_error", message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error("config_error", message) {}
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& message)
      : Error("not_found", message) {}
};

// Request is understood but cannot be processed (unissued exercise,
// malformed performance, missing bridge).
class UnprocessableError : public Error {
 public:
  UnprocessableError(std::string code, const std::string& message)
      : Error(std::move(code), message) {}
};

class StoreIoError : public Error {
 public:
  explicit StoreIoError(const std::string& message)
      : Error("store_io_error", message) {}
};

class BridgeError : public Error {
 public:
  explicit BridgeError(const std::string& message)
      : Error("bridge_error", message) {}
};

// No candidate sentence survived filtering.
class CorpusExhaustedError : public Error {
 public:
  explicit CorpusExhaustedError(const std::string& message)
      : Error("corpus_exhausted", message) {}
};

enum class Category {
  kRSound = 0,
  kSSound,
  kThSound,
  kLSound,
  kConsonantCluster,
  kVowelDistortion,
};
constexpr int kNumCategories = 6;
constexpr std::array<Category, kNumCategories> kAllCategories = {
    Category::kRSound,  Category::kSSound,           Category::kThSound,
    Category::kLSound,  Category::kConsonantCluster, Category::kVowelDistortion};

enum class Difficulty { kEasy = 0, kMedium, kHard };
constexpr int kNumDifficulties = 3;
constexpr std::array<Difficulty, kNumDifficulties> kAllDifficulties = {
    Difficulty::kEasy, Difficulty::kMedium, Difficulty::kHard};

enum class Severity { kMild = 0, kModerate, kSevere };

const char* CategoryKey(Category c);
// Throws ValidationError for unknown keys.
Category CategoryFromKey(std::string_view key);
const char* DifficultyKey(Difficulty d);
Difficulty DifficultyFromKey(std::string_view key);
const char* SeverityKey(Severity s);
Severity SeverityFromKey(std::string_view key);

inline int Index(Category c) { return static_cast<int>(c); }
inline int Index(Difficulty d) { return static_cast<int>(d); }

// Whole-file read; throws ConfigError when the file cannot be opened.
std::string ReadFile(const std::string& path);
std::string JoinPath(const std::string& dir, const std::string& name);
bool FileExists(const std::string& path);

std::string ToUpper(std::string_view s);
std::string Trim(std::string_view s);
std::vector<std::string> SplitWhitespace(std::string_view s);

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);

double Round3(double x);

}  // namespace spikevox

#endif  // SPIKEVOX_COMMON_H_
