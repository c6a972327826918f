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

#include <gtest/gtest.h>

#include <atomic>
#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "httplib.h"
#include "spikevox/bridge.h"
#include "spikevox/random.h"
#include "spikevox/wav.h"
#include "support/schema_validator.h"
#include "support/util.h"

namespace spikevox {
namespace {

using nlohmann::json;
using testing::SchemaValidator;

std::string FixtureBody() {
  return testing::ReadJson(testing::FixturePath("hello_good_morning.json")).dump();
}

std::string Joined(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += x + "\n";
  return s;
}

// A live server on an ephemeral port.
class LiveServer {
 public:
  explicit LiveServer(ServiceConfig cfg = ServiceConfig::Defaults())
      : engine_(std::move(cfg)), server_(&engine_) {
    port_ = server_.Bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.ListenAfterBind(); });
    while (!server_.is_running()) std::this_thread::yield();
  }
  ~LiveServer() {
    server_.Stop();
    thread_.join();
  }
  int port() const { return port_; }
  Engine& engine() { return engine_; }
  httplib::Client Client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

 private:
  Engine engine_;
  ApiServer server_;
  int port_ = -1;
  std::thread thread_;
};

// A bare httplib server used to stand in for the model bridges.
class StubServer {
 public:
  StubServer() { port_ = server_.bind_to_any_port("127.0.0.1"); }
  void Start() {
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    while (!server_.is_running()) std::this_thread::yield();
  }
  ~StubServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Server& server() { return server_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = -1;
  std::thread thread_;
};

// A port nothing listens on.
int ClosedPort() {
  httplib::Server s;
  return s.bind_to_any_port("127.0.0.1");
}

json Body(const httplib::Result& r) {
  EXPECT_TRUE(r);
  if (!r) return json();
  return json::parse(r->body);
}

void ExpectError(const httplib::Result& r, int status, const std::string& code) {
  static SchemaValidator v;
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, status) << r->body;
  json doc = json::parse(r->body);
  EXPECT_EQ(Joined(v.Validate(doc, "envelope.schema.json#/definitions/error")), "");
  if (!code.empty()) {
    EXPECT_EQ(doc["error"]["code"], code) << r->body;
  }
}

class ServiceTest : public ::testing::Test {
 protected:
  SchemaValidator v_;
};

TEST_F(ServiceTest, FullWalkValidatesAgainstSchemas) {
  LiveServer live;
  auto cli = live.Client();

  auto health = cli.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  json h = Body(health);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(h, "health.schema.json")), "");
  EXPECT_EQ(h["data"]["analyses"], 0);
  EXPECT_EQ(h["data"]["recognizer_bridge"], false);

  auto an = cli.Post("/api/speech-analyze?patient_id=p-7", FixtureBody(),
                     "application/json");
  ASSERT_TRUE(an);
  ASSERT_EQ(an->status, 200) << an->body;
  json a = Body(an);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(a, "analysis.schema.json")), "");
  EXPECT_EQ(a["data"]["severity"], "mild");
  EXPECT_EQ(a["data"]["issue_count"], 3);
  EXPECT_EQ(a["data"]["patient_id"], "p-7");
  ASSERT_EQ(a["data"]["flagged"].size(), 2u);
  EXPECT_EQ(a["data"]["flagged"][0]["category"], "vowel_distortion");
  EXPECT_EQ(a["data"]["flagged"][1]["category"], "l_sound");
  EXPECT_EQ(a["warnings"].size(), 1u);
  std::string id = a["data"]["analysis_id"];

  auto th = cli.Post("/api/generate-therapy", json{{"analysis_id", id}}.dump(),
                     "application/json");
  ASSERT_TRUE(th);
  ASSERT_EQ(th->status, 200) << th->body;
  json t = Body(th);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(t, "therapy.schema.json")), "");
  const json& exercises = t["data"]["exercises"];
  ASSERT_EQ(exercises.size(), 2u);
  EXPECT_EQ(exercises[0]["category"], "vowel_distortion");
  EXPECT_EQ(exercises[1]["category"], "l_sound");
  std::string l_exercise = exercises[1]["exercise_id"];

  auto fb0 = cli.Post("/api/feedback", json{{"analysis_id", id}}.dump(),
                      "application/json");
  ASSERT_TRUE(fb0);
  ASSERT_EQ(fb0->status, 200) << fb0->body;
  json f0 = Body(fb0);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(f0, "feedback.schema.json")), "");
  EXPECT_EQ(f0["data"]["overall"], "Simple practice");
  EXPECT_FALSE(f0["data"].contains("exercise"));

  auto before = Body(cli.Get("/api/progress?patient_id=p-7&category=l_sound"));
  EXPECT_EQ(Joined(v_.ValidateEnvelope(before, "progress.schema.json")), "");
  EXPECT_EQ(before["data"]["series"]["l_sound"].size(), 0u);

  json perf = {{"analysis_id", id},
               {"performance",
                {{{"exercise_id", l_exercise},
                  {"targets_attempted", 10},
                  {"targets_correct", 9}}}}};
  auto fb1 = cli.Post("/api/feedback", perf.dump(), "application/json");
  ASSERT_TRUE(fb1);
  ASSERT_EQ(fb1->status, 200) << fb1->body;
  json f1 = Body(fb1);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(f1, "feedback.schema.json")), "");
  ASSERT_TRUE(f1["data"].contains("exercise"));
  EXPECT_TRUE(f1["data"]["exercise"]["assessment"].contains("l_sound"));

  auto after = Body(cli.Get("/api/progress?patient_id=p-7&category=l_sound"));
  EXPECT_EQ(Joined(v_.ValidateEnvelope(after, "progress.schema.json")), "");
  ASSERT_EQ(after["data"]["series"]["l_sound"].size(), 1u);
  EXPECT_EQ(after["data"]["series"]["l_sound"][0]["analysis_id"], id);
  EXPECT_EQ(after["data"]["series"]["l_sound"][0]["exercise_id"], l_exercise);
  EXPECT_EQ(after["data"]["series"].size(), 1u);

  auto all = Body(cli.Get("/api/progress?patient_id=p-7"));
  EXPECT_EQ(all["data"]["series"].size(), 6u);

  auto got = cli.Get("/api/analysis/" + id);
  ASSERT_TRUE(got);
  EXPECT_EQ(got->status, 200);
  json g = Body(got);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(g, "analysis.schema.json")), "");
  EXPECT_EQ(g["data"], a["data"]);

  EXPECT_EQ(Body(cli.Get("/api/health"))["data"]["analyses"], 1);
}

TEST_F(ServiceTest, ErrorStatuses) {
  LiveServer live;
  auto cli = live.Client();
  ExpectError(cli.Post("/api/speech-analyze", "", "application/json"), 400, "");
  ExpectError(cli.Post("/api/speech-analyze", "{not json", "application/json"),
              400, "");
  json bad = testing::ReadJson(testing::FixturePath("hello_good_morning.json"));
  bad["phonemes"][1]["confidence"] = 1.2;
  ExpectError(cli.Post("/api/speech-analyze", bad.dump(), "application/json"),
              400, "");
  ExpectError(cli.Post("/api/speech-analyze", FixtureBody(), "text/plain"), 415,
              "unsupported_media_type");
  ExpectError(cli.Post("/api/speech-analyze", MakeSilentWav(1600), "audio/wav"),
              422, "recognizer_unavailable");
  ExpectError(cli.Post("/api/speech-analyze?patient_id=bad%20id", FixtureBody(),
                       "application/json"),
              400, "");

  ExpectError(cli.Get("/api/analysis/an-0000000000000000"), 404, "");
  ExpectError(cli.Post("/api/generate-therapy",
                       json{{"analysis_id", "an-missing"}}.dump(),
                       "application/json"),
              404, "");
  ExpectError(cli.Post("/api/feedback", json{{"analysis_id", "an-missing"}}.dump(),
                       "application/json"),
              404, "");
  ExpectError(cli.Post("/api/generate-therapy", "", "application/json"), 400, "");
  ExpectError(cli.Get("/api/progress"), 400, "");
  ExpectError(cli.Get("/api/progress?patient_id=p1&category=bogus"), 400, "");
  ExpectError(cli.Get("/api/nowhere"), 404, "not_found");

  auto an = Body(cli.Post("/api/speech-analyze", FixtureBody(), "application/json"));
  std::string id = an["data"]["analysis_id"];
  ExpectError(cli.Post("/api/generate-therapy",
                       json{{"analysis_id", id}, {"difficulty", "extreme"}}.dump(),
                       "application/json"),
              400, "");
  ExpectError(cli.Post("/api/generate-therapy",
                       json{{"analysis_id", id}, {"count", 0}}.dump(),
                       "application/json"),
              400, "");
  json malformed = {{"analysis_id", id},
                    {"performance", {{{"exercise_id", "x"}, {"targets_attempted", "ten"}}}}};
  ExpectError(cli.Post("/api/feedback", malformed.dump(), "application/json"), 422,
              "");
  json wrong_order = {{"analysis_id", id},
                      {"performance", {{{"targets_attempted", 3}, {"targets_correct", 4}}}}};
  ExpectError(cli.Post("/api/feedback", wrong_order.dump(), "application/json"),
              422, "");
  json unissued = {{"analysis_id", id},
                   {"performance",
                    {{{"exercise_id", "ex-ffffffffffffffff"},
                      {"targets_attempted", 3},
                      {"targets_correct", 2}}}}};
  ExpectError(cli.Post("/api/feedback", unissued.dump(), "application/json"), 422,
              "unissued_exercise");
}

TEST_F(ServiceTest, CorsPreflight) {
  LiveServer live;
  auto cli = live.Client();
  auto r = cli.Options("/api/speech-analyze");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_NE(r->get_header_value("Access-Control-Allow-Methods").find("POST"),
            std::string::npos);
  auto h = cli.Get("/api/health");
  EXPECT_EQ(h->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(ServiceTest, TherapyOptionsAndEmptyList) {
  LiveServer live;
  auto cli = live.Client();
  std::string id = Body(cli.Post("/api/speech-analyze", FixtureBody(),
                                 "application/json"))["data"]["analysis_id"];
  json t = Body(cli.Post("/api/generate-therapy",
                         json{{"analysis_id", id}, {"count", 1}, {"difficulty", "hard"}}
                             .dump(),
                         "application/json"));
  EXPECT_EQ(Joined(v_.ValidateEnvelope(t, "therapy.schema.json")), "");
  ASSERT_EQ(t["data"]["exercises"].size(), 1u);
  EXPECT_EQ(t["data"]["exercises"][0]["difficulty"], "hard");

  json perfect = testing::ReadJson(testing::FixturePath("hello_good_morning.json"));
  for (auto& p : perfect["phonemes"]) p["confidence"] = 0.99;
  std::string pid = Body(cli.Post("/api/speech-analyze", perfect.dump(),
                                  "application/json"))["data"]["analysis_id"];
  json e = Body(cli.Post("/api/generate-therapy", json{{"analysis_id", pid}}.dump(),
                         "application/json"));
  EXPECT_EQ(Joined(v_.ValidateEnvelope(e, "therapy.schema.json")), "");
  EXPECT_TRUE(e["data"]["exercises"].empty());
  EXPECT_TRUE(e["data"].contains("message"));
}

TEST_F(ServiceTest, RepeatedRequestsAreDeterministic) {
  LiveServer a, b;
  auto ca = a.Client(), cb = b.Client();
  for (int i = 0; i < 3; ++i) {
    auto ra = ca.Post("/api/speech-analyze", FixtureBody(), "application/json");
    auto rb = cb.Post("/api/speech-analyze", FixtureBody(), "application/json");
    EXPECT_EQ(ra->body, rb->body);
    std::string id = Body(ra)["data"]["analysis_id"];
    auto ta = ca.Post("/api/generate-therapy", json{{"analysis_id", id}}.dump(),
                      "application/json");
    auto tb = cb.Post("/api/generate-therapy", json{{"analysis_id", id}}.dump(),
                      "application/json");
    EXPECT_EQ(ta->body, tb->body);
  }
}

TEST_F(ServiceTest, ConcurrentAnalysesGetDistinctIds) {
  LiveServer live;
  std::mutex mu;
  std::set<std::string> ids;
  std::atomic<int> ok{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      auto cli = live.Client();
      for (int i = 0; i < 5; ++i) {
        auto r = cli.Post("/api/speech-analyze?patient_id=c" + std::to_string(t),
                          FixtureBody(), "application/json");
        if (!r || r->status != 200) continue;
        ++ok;
        std::lock_guard<std::mutex> lock(mu);
        ids.insert(json::parse(r->body)["data"]["analysis_id"].get<std::string>());
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(ok.load(), 40);
  EXPECT_EQ(ids.size(), 40u);
  EXPECT_EQ(Body(live.Client().Get("/api/health"))["data"]["analyses"], 40);
}

// Recognizer bridge.

TEST_F(ServiceTest, AudioGoesThroughRecognizerBridge) {
  StubServer stub;
  std::atomic<int> calls{0};
  std::string seen_type;
  size_t seen_bytes = 0;
  stub.server().Post("/recognize", [&](const httplib::Request& req,
                                       httplib::Response& res) {
    ++calls;
    seen_type = req.get_header_value("Content-Type");
    seen_bytes = req.body.size();
    json doc = testing::ReadJson(testing::FixturePath("hello_good_morning.json"));
    doc["transcript"] = "FROM THE STUB";
    res.set_content(doc.dump(), "application/json");
  });
  stub.Start();

  ServiceConfig cfg = ServiceConfig::Defaults();
  cfg.recognizer_bridge_url = stub.url();
  LiveServer live(cfg);
  auto cli = live.Client();
  EXPECT_EQ(Body(cli.Get("/api/health"))["data"]["recognizer_bridge"], true);

  std::string wav = MakeSilentWav(16000);
  auto r = cli.Post("/api/speech-analyze", wav, "audio/wav");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200) << r->body;
  json a = json::parse(r->body);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(a, "analysis.schema.json")), "");
  EXPECT_EQ(a["data"]["transcript"], "FROM THE STUB");
  EXPECT_EQ(a["data"]["source"], "bridge");
  EXPECT_EQ(a["data"]["severity"], "mild");
  EXPECT_EQ(calls.load(), 1);
  EXPECT_EQ(seen_type, "audio/wav");
  EXPECT_EQ(seen_bytes, wav.size());

  // Bad audio never reaches the bridge.
  ExpectError(cli.Post("/api/speech-analyze", "RIFFjunk", "audio/wav"), 400, "");
  std::string stereo = wav;
  stereo[22] = 2;
  ExpectError(cli.Post("/api/speech-analyze", stereo, "audio/wav"), 400, "");
  ExpectError(cli.Post("/api/speech-analyze", "", "audio/wav"), 400, "");
  EXPECT_EQ(calls.load(), 1);
}

TEST_F(ServiceTest, RecognizerFailuresMapTo502) {
  StubServer stub;
  std::atomic<int> mode{0};
  stub.server().Post("/recognize", [&](const httplib::Request&,
                                       httplib::Response& res) {
    if (mode == 0) {
      res.status = 500;
      res.set_content("boom", "text/plain");
    } else {
      res.set_content(R"({"phonemes": [{"symbol": "QQ", "confidence": 0.5}]})",
                      "application/json");
    }
  });
  stub.Start();
  ServiceConfig cfg = ServiceConfig::Defaults();
  cfg.recognizer_bridge_url = stub.url();
  LiveServer live(cfg);
  auto cli = live.Client();
  ExpectError(cli.Post("/api/speech-analyze", MakeSilentWav(160), "audio/wav"), 502,
              "");
  mode = 1;
  ExpectError(cli.Post("/api/speech-analyze", MakeSilentWav(160), "audio/wav"), 502,
              "");

  ServiceConfig down = ServiceConfig::Defaults();
  down.recognizer_bridge_url = "http://127.0.0.1:" + std::to_string(ClosedPort());
  down.bridge_timeout_ms = 1000;
  LiveServer live_down(down);
  ExpectError(live_down.Client().Post("/api/speech-analyze", MakeSilentWav(160),
                                      "audio/wav"),
              502, "");
}

// Generator bridge.

// Sentences the stub generator serves: the easy L templates, which also
// carry enough vowels for the vowel category.
std::vector<std::string> StubSentences() {
  std::vector<std::string> out;
  std::ifstream in(JoinPath(DefaultAssetDir(), "therapy/templates.tsv"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("l_sound\teasy\t", 0) == 0) out.push_back(line.substr(13));
  }
  return out;
}

TEST_F(ServiceTest, GeneratorBridgeRequestsMatchSchema) {
  const std::vector<std::string> sentences = StubSentences();
  ASSERT_GE(sentences.size(), 16u);
  StubServer stub;
  std::mutex mu;
  std::vector<std::string> problems;
  std::map<std::string, size_t> per_prompt;
  std::atomic<int> calls{0};
  stub.server().Post("/generate", [&](const httplib::Request& req,
                                      httplib::Response& res) {
    ++calls;
    json body = json::parse(req.body, nullptr, false);
    std::lock_guard<std::mutex> lock(mu);
    auto errs = v_.Validate(body, "requests.schema.json#/definitions/generate_bridge_request");
    problems.insert(problems.end(), errs.begin(), errs.end());
    std::string prompt = body.value("prompt", "");
    json reply = {{"text", sentences[per_prompt[prompt]++ % sentences.size()]}};
    errs = v_.Validate(reply,
                       "requests.schema.json#/definitions/generate_bridge_response");
    problems.insert(problems.end(), errs.begin(), errs.end());
    res.set_content(reply.dump(), "application/json");
  });
  stub.Start();

  ServiceConfig cfg = ServiceConfig::Defaults();
  cfg.generator_bridge_url = stub.url() + "/";
  LiveServer live(cfg);
  auto cli = live.Client();
  EXPECT_EQ(Body(cli.Get("/api/health"))["data"]["generator_bridge"], true);
  std::string id = Body(cli.Post("/api/speech-analyze", FixtureBody(),
                                 "application/json"))["data"]["analysis_id"];
  json t = Body(cli.Post("/api/generate-therapy", json{{"analysis_id", id}}.dump(),
                         "application/json"));
  EXPECT_EQ(Joined(v_.ValidateEnvelope(t, "therapy.schema.json")), "");
  EXPECT_GT(calls.load(), 0);
  EXPECT_EQ(Joined(problems), "");
  // Sixteen distinct generated candidates leave no room for templates.
  const json& first = t["data"]["exercises"][0];
  EXPECT_EQ(first["category"], "vowel_distortion");
  EXPECT_EQ(first["origin"], "generated");
  for (const auto& e : t["data"]["exercises"]) {
    if (e["origin"] == "generated") {
      EXPECT_NE(std::find(sentences.begin(), sentences.end(), e["sentence"]),
                sentences.end());
    }
  }

  // Randomized direct calls through the backend.
  HttpGeneratorBackend backend(stub.url(), 2000);
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    std::string prompt = "prompt " + std::to_string(rng.Next() % 1000);
    double temp = rng.Unit();
    int top_k = 1 + static_cast<int>(rng.Next() % 100);
    int max_tokens = 1 + static_cast<int>(rng.Next() % 256);
    EXPECT_FALSE(backend.Generate(prompt, temp, top_k, max_tokens).empty());
  }
  EXPECT_EQ(Joined(problems), "");
}

TEST_F(ServiceTest, GeneratorDownFallsBackToTemplates) {
  ServiceConfig cfg = ServiceConfig::Defaults();
  cfg.generator_bridge_url = "http://127.0.0.1:" + std::to_string(ClosedPort());
  cfg.bridge_timeout_ms = 500;
  LiveServer live(cfg);
  auto cli = live.Client();
  std::string id = Body(cli.Post("/api/speech-analyze", FixtureBody(),
                                 "application/json"))["data"]["analysis_id"];
  auto r = cli.Post("/api/generate-therapy", json{{"analysis_id", id}}.dump(),
                    "application/json");
  ASSERT_TRUE(r);
  ASSERT_EQ(r->status, 200) << r->body;
  json t = json::parse(r->body);
  EXPECT_EQ(Joined(v_.ValidateEnvelope(t, "therapy.schema.json")), "");
  EXPECT_FALSE(t["warnings"].empty());
  for (const auto& e : t["data"]["exercises"]) EXPECT_EQ(e["origin"], "template");
}

TEST_F(ServiceTest, BridgeReplyWithoutTextIsAnError) {
  StubServer stub;
  stub.server().Post("/generate", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"output": "x"})", "application/json");
  });
  stub.Start();
  HttpGeneratorBackend backend(stub.url(), 2000);
  EXPECT_THROW(backend.Generate("p", 0.7, 40, 32), BridgeError);
  EXPECT_THROW(BridgeUrl::Parse("localhost:9000"), ConfigError);
  BridgeUrl u = BridgeUrl::Parse("http://h:1/models/v1//");
  EXPECT_EQ(u.origin, "http://h:1");
  EXPECT_EQ(u.prefix, "/models/v1");
}

// The CLI and the HTTP service produce the same documents.
TEST_F(ServiceTest, CliAndHttpAgree) {
  testing::TempDir dir;
  auto cli_an = testing::RunCli({"analyze", testing::FixturePath("hello_good_morning.json")});
  ASSERT_EQ(cli_an.exit_code, 0) << cli_an.err;
  json from_cli = json::parse(cli_an.out);

  LiveServer live;
  json from_http = Body(live.Client().Post("/api/speech-analyze", FixtureBody(),
                                           "application/json"));
  json c = from_cli["data"], h = from_http["data"];
  // Only the source tag differs: one came from a file, one from a request.
  EXPECT_EQ(c["source"], "file");
  c.erase("source");
  h.erase("source");
  EXPECT_EQ(c, h);
  EXPECT_EQ(from_cli["warnings"], from_http["warnings"]);

  std::string path = dir.File("a.json");
  std::ofstream(path) << cli_an.out;
  auto cli_th = testing::RunCli({"therapy", path});
  ASSERT_EQ(cli_th.exit_code, 0) << cli_th.err;
  json th = Body(live.Client().Post(
      "/api/generate-therapy",
      json{{"analysis_id", h["analysis_id"]}}.dump(), "application/json"));
  EXPECT_EQ(json::parse(cli_th.out)["data"], th["data"]);

  auto cli_fb = testing::RunCli({"feedback", path});
  ASSERT_EQ(cli_fb.exit_code, 0) << cli_fb.err;
  json fb = Body(live.Client().Post("/api/feedback",
                                    json{{"analysis_id", h["analysis_id"]}}.dump(),
                                    "application/json"));
  EXPECT_EQ(json::parse(cli_fb.out)["data"], fb["data"]);
}

}  // namespace
}  // namespace spikevox
