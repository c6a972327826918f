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

#include "spikevox/common.h"

#include <openssl/evp.h>

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <sys/stat.h>

namespace spikevox {

namespace {

constexpr std::array<const char*, kNumCategories> kCategoryKeys = {
    "r_sound", "s_sound", "th_sound", "l_sound", "consonant_cluster",
    "vowel_distortion"};
constexpr std::array<const char*, kNumDifficulties> kDifficultyKeys = {
    "easy", "medium", "hard"};
constexpr std::array<const char*, 3> kSeverityKeys = {"mild", "moderate",
                                                       "severe"};

}  // namespace

const char* CategoryKey(Category c) { return kCategoryKeys[Index(c)]; }

Category CategoryFromKey(std::string_view key) {
  for (int i = 0; i < kNumCategories; ++i) {
    if (key == kCategoryKeys[i]) return static_cast<Category>(i);
  }
  throw ValidationError("unknown category '" + std::string(key) + "'");
}

const char* DifficultyKey(Difficulty d) { return kDifficultyKeys[Index(d)]; }

Difficulty DifficultyFromKey(std::string_view key) {
  for (int i = 0; i < kNumDifficulties; ++i) {
    if (key == kDifficultyKeys[i]) return static_cast<Difficulty>(i);
  }
  throw ValidationError("unknown difficulty '" + std::string(key) + "'");
}

const char* SeverityKey(Severity s) {
  return kSeverityKeys[static_cast<int>(s)];
}

Severity SeverityFromKey(std::string_view key) {
  for (int i = 0; i < 3; ++i) {
    if (key == kSeverityKeys[i]) return static_cast<Severity>(i);
  }
  throw ValidationError("unknown severity '" + std::string(key) + "'");
}

std::string ReadFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string JoinPath(const std::string& dir, const std::string& name) {
  if (dir.empty() || (!name.empty() && name[0] == '/')) return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

bool FileExists(const std::string& path) {
  struct stat st;
  return ::stat(path.c_str(), &st) == 0;
}

std::string ToUpper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  }
  return out;
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("internal", "sha256 failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

double Round3(double x) { return std::round(x * 1000.0) / 1000.0; }

}  // namespace spikevox
