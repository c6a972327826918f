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

#ifndef SPIKEVOX_BRIDGE_H_
#define SPIKEVOX_BRIDGE_H_

#include <string>

#include "spikevox/recognizer.h"
#include "spikevox/therapy.h"

namespace spikevox {

// Base URL split into "scheme://host:port" and a path prefix.
struct BridgeUrl {
  std::string origin;
  std::string prefix;
  static BridgeUrl Parse(const std::string& url);
};

// POST {prefix}/recognize with a WAV body; the reply is recognizer JSON.
class RecognizerBridge {
 public:
  RecognizerBridge(const std::string& url, int timeout_ms);
  // Throws BridgeError on transport failure, non-200 or a bad reply.
  RecognizerOutput Recognize(const std::string& wav) const;

 private:
  BridgeUrl url_;
  int timeout_ms_;
};

// POST {prefix}/generate with {"prompt","temperature","top_k","max_tokens"}.
class HttpGeneratorBackend : public GeneratorBackend {
 public:
  HttpGeneratorBackend(const std::string& url, int timeout_ms);
  std::string Generate(const std::string& prompt, double temperature,
                       int top_k, int max_tokens) override;

 private:
  BridgeUrl url_;
  int timeout_ms_;
};

}  // namespace spikevox

#endif  // SPIKEVOX_BRIDGE_H_
