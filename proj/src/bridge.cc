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

#include "spikevox/bridge.h"

#include "httplib.h"
#include "json.hpp"
#include "spikevox/common.h"

namespace spikevox {

using nlohmann::json;

namespace {

httplib::Client MakeClient(const BridgeUrl& url, int timeout_ms) {
  httplib::Client cli(url.origin);
  time_t sec = timeout_ms / 1000;
  time_t usec = static_cast<time_t>(timeout_ms % 1000) * 1000;
  cli.set_connection_timeout(sec, usec);
  cli.set_read_timeout(sec, usec);
  cli.set_write_timeout(sec, usec);
  return cli;
}

}  // namespace

BridgeUrl BridgeUrl::Parse(const std::string& url) {
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("bridge URL needs a scheme: " + url);
  size_t slash = url.find('/', scheme + 3);
  BridgeUrl out;
  out.origin = url.substr(0, slash);
  if (slash != std::string::npos) out.prefix = url.substr(slash);
  while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  return out;
}

RecognizerBridge::RecognizerBridge(const std::string& url, int timeout_ms)
    : url_(BridgeUrl::Parse(url)), timeout_ms_(timeout_ms) {}

RecognizerOutput RecognizerBridge::Recognize(const std::string& wav) const {
  auto cli = MakeClient(url_, timeout_ms_);
  auto res = cli.Post(url_.prefix + "/recognize", wav, "audio/wav");
  if (!res) {
    throw BridgeError("recognizer bridge: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BridgeError("recognizer bridge returned HTTP " +
                      std::to_string(res->status));
  }
  try {
    return ParseRecognizerOutput(res->body, RecognizerSource::kBridge);
  } catch (const SchemaError& e) {
    throw BridgeError(std::string("recognizer bridge reply: ") + e.what());
  } catch (const ValidationError& e) {
    throw BridgeError(std::string("recognizer bridge reply: ") + e.what());
  }
}

HttpGeneratorBackend::HttpGeneratorBackend(const std::string& url,
                                           int timeout_ms)
    : url_(BridgeUrl::Parse(url)), timeout_ms_(timeout_ms) {}

std::string HttpGeneratorBackend::Generate(const std::string& prompt,
                                           double temperature, int top_k,
                                           int max_tokens) {
  json body = {{"prompt", prompt},
               {"temperature", temperature},
               {"top_k", top_k},
               {"max_tokens", max_tokens}};
  auto cli = MakeClient(url_, timeout_ms_);
  auto res = cli.Post(url_.prefix + "/generate", body.dump(), "application/json");
  if (!res) {
    throw BridgeError("generator bridge: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BridgeError("generator bridge returned HTTP " +
                      std::to_string(res->status));
  }
  json reply = json::parse(res->body, nullptr, false);
  if (!reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
    throw BridgeError("generator bridge reply lacks a 'text' string");
  }
  return reply["text"].get<std::string>();
}

}  // namespace spikevox
