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


#ifndef SPIKEVOX_TESTS_SUPPORT_UTIL_H_
#define SPIKEVOX_TESTS_SUPPORT_UTIL_H_

#include <string>
#include <vector>

#include "json.hpp"

namespace spikevox::testing {

std::string FixturePath(const std::string& name);
nlohmann::json ReadJson(const std::string& path);

// Fresh directory under the system temp dir, removed by the destructor.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::string& path() const { return path_; }
  std::string File(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the spikevox binary with `args` (no shell quoting beyond single
// quotes around each argument).
CliResult RunCli(const std::vector<std::string>& args);

}  // namespace spikevox::testing

#endif  // SPIKEVOX_TESTS_SUPPORT_UTIL_H_
