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

#ifndef SPIKEVOX_SERVICE_H_
#define SPIKEVOX_SERVICE_H_

#include <memory>
#include <string>

#include "spikevox/engine.h"

namespace httplib {
class Server;
}

namespace spikevox {

// REST front end over an Engine:
//   POST /api/speech-analyze   recognizer JSON or WAV audio
//   POST /api/generate-therapy {analysis_id, difficulty?, count?}
//   POST /api/feedback         {analysis_id, performance?}
//   GET  /api/progress?patient_id=&category=
//   GET  /api/analysis/<id>
//   GET  /api/health
class ApiServer {
 public:
  explicit ApiServer(Engine* engine);
  ~ApiServer();

  // Returns the bound port (useful with port 0), or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();
  bool is_running() const;

 private:
  void Routes();

  Engine* engine_;
  std::unique_ptr<httplib::Server> server_;
};

// HTTP status for a library error.
int HttpStatusFor(const Error& e);

}  // namespace spikevox

#endif  // SPIKEVOX_SERVICE_H_
