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

#include "spikevox/service.h"

#include <algorithm>
#include <cctype>

#include "httplib.h"
#include "spikevox/wav.h"

namespace spikevox {

using nlohmann::json;

namespace {

constexpr const char* kJsonType = "application/json";

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

std::string MediaType(const httplib::Request& req) {
  std::string ct = req.get_header_value("Content-Type");
  ct = ct.substr(0, ct.find(';'));
  std::transform(ct.begin(), ct.end(), ct.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return Trim(ct);
}

bool IsAudio(const std::string& type) {
  return type == "audio/wav" || type == "audio/x-wav" || type == "audio/wave" ||
         type == "audio/vnd.wave" || type == "application/octet-stream";
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) throw SchemaError("request body is empty");
  json doc = json::parse(req.body, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("request body is not valid JSON");
  return doc;
}

// Runs `fn` and turns exceptions into error envelopes.
template <typename Fn>
void Guard(httplib::Response& res, Fn&& fn) {
  try {
    Warnings warnings;
    json data = fn(&warnings);
    Reply(res, 200, MakeEnvelope(data, warnings));
  } catch (const Error& e) {
    Reply(res, HttpStatusFor(e), MakeErrorEnvelope(e.code(), e.what()));
  } catch (const std::exception& e) {
    Reply(res, 500, MakeErrorEnvelope("internal", e.what()));
  }
}

}  // namespace

int HttpStatusFor(const Error& e) {
  if (dynamic_cast<const SchemaError*>(&e) ||
      dynamic_cast<const ValidationError*>(&e)) {
    return 400;
  }
  if (dynamic_cast<const NotFoundError*>(&e)) return 404;
  if (dynamic_cast<const UnprocessableError*>(&e)) {
    return e.code() == "unsupported_media_type" ? 415 : 422;
  }
  if (dynamic_cast<const BridgeError*>(&e)) return 502;
  if (dynamic_cast<const StoreIoError*>(&e)) return 503;
  return 500;
}

ApiServer::ApiServer(Engine* engine)
    : engine_(engine), server_(std::make_unique<httplib::Server>()) {
  server_->set_payload_max_length(32 * 1024 * 1024);
  std::string origin = engine_->config().cors_origin;
  server_->set_default_headers(
      {{"Access-Control-Allow-Origin", origin},
       {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
       {"Access-Control-Allow-Headers", "Content-Type"}});
  Routes();
}

ApiServer::~ApiServer() { Stop(); }

void ApiServer::Routes() {
  httplib::Server& s = *server_;

  s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  s.Post("/api/speech-analyze",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guard(res, [&](Warnings* w) {
             std::string patient = req.get_param_value("patient_id");
             std::string type = MediaType(req);
             if (IsAudio(type)) {
               if (!engine_->has_recognizer()) {
                 return engine_->AnalyzeAudio(req.body, patient, w);
               }
               if (req.body.empty()) throw SchemaError("request body is empty");
               ValidateWav(req.body);
               return engine_->AnalyzeAudio(req.body, patient, w);
             }
             if (!type.empty() && type != kJsonType) {
               throw UnprocessableError("unsupported_media_type",
                                        "unsupported Content-Type '" + type + "'");
             }
             json doc = ParseBody(req);
             return engine_->Analyze(RecognizerFromJson(doc), patient, w);
           });
         });

  s.Post("/api/generate-therapy",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guard(res, [&](Warnings* w) {
             return engine_->GenerateTherapy(ParseBody(req), w);
           });
         });

  s.Post("/api/feedback",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guard(res, [&](Warnings* w) {
             return engine_->Feedback(ParseBody(req), w);
           });
         });

  s.Get("/api/progress", [this](const httplib::Request& req,
                                httplib::Response& res) {
    Guard(res, [&](Warnings*) {
      if (!req.has_param("patient_id")) {
        throw ValidationError("query parameter 'patient_id' is required");
      }
      return engine_->Progress(req.get_param_value("patient_id"),
                               req.get_param_value("category"));
    });
  });

  s.Get(R"(/api/analysis/([A-Za-z0-9_.-]+))",
        [this](const httplib::Request& req, httplib::Response& res) {
          Guard(res, [&](Warnings*) {
            return engine_->GetAnalysis(req.matches[1].str());
          });
        });

  s.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    Guard(res, [&](Warnings*) { return engine_->Health(); });
  });

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    std::string code = res.status == 404 ? "not_found" : "http_error";
    Reply(res, res.status,
          MakeErrorEnvelope(code, "HTTP " + std::to_string(res.status)));
  });
}

int ApiServer::Bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool ApiServer::ListenAfterBind() { return server_->listen_after_bind(); }

void ApiServer::Stop() {
  if (server_ && server_->is_running()) server_->stop();
}

bool ApiServer::is_running() const { return server_->is_running(); }

}  // namespace spikevox
