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

// spikevox: command-line front end.
//
//   spikevox analyze FILE [--patient ID]
//   spikevox simulate --target r_sound=0.6 [--phonemes 20]
//   spikevox therapy ANALYSIS [--difficulty easy] [--count N]
//   spikevox feedback ANALYSIS [--exercises THERAPY] [--performance FILE]
//   spikevox serve [--host H] [--port P]
//   spikevox calibrate
//   spikevox export --store PATH
//
// Global flags: --config, --seed, --out, --store, --asset-dir.
// Exit status: 0 success, 1 usage or input error, 2 internal error.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spikevox/engine.h"
#include "spikevox/service.h"
#include "spikevox/synthetic.h"

using nlohmann::json;
using namespace spikevox;

namespace {

struct Globals {
  std::string config;
  std::optional<uint64_t> seed;
  std::string out;
  std::optional<std::string> store;
  std::string asset_dir;
};

ServiceConfig MakeConfig(const Globals& g) {
  ServiceConfig cfg = g.config.empty() ? ServiceConfig() : ServiceConfig::Load(g.config);
  if (g.seed) cfg.seed = *g.seed;
  if (g.store) cfg.store_path = *g.store;
  if (!g.asset_dir.empty()) {
    cfg.asset_dir = g.asset_dir;
    cfg.categories_config.clear();
    cfg.therapy_config.clear();
    cfg.feedback_config.clear();
  }
  cfg.ResolvePaths();
  return cfg;
}

void Emit(const Globals& g, const json& doc) {
  std::string text = doc.dump(2) + "\n";
  if (g.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream os(g.out, std::ios::binary | std::ios::trunc);
  if (!os || !(os << text)) throw StoreIoError("cannot write " + g.out);
}

json ReadJsonFile(const std::string& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded()) throw SchemaError(path + " is not valid JSON");
  return doc;
}

// Accepts either an envelope or a bare document.
json Unwrap(const json& doc) {
  if (doc.is_object() && doc.contains("version") && doc.contains("data")) {
    return doc["data"];
  }
  return doc;
}

int Serve(const ServiceConfig& cfg, const std::string& host, int port) {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  Engine engine(cfg);
  ApiServer server(&engine);
  int bound = server.Bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 2;
  }
  std::cout << "port " << bound << "\n"
            << "ready http://" << host << ":" << bound << "\n"
            << std::flush;
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    server.Stop();
  });
  bool ok = server.ListenAfterBind();
  // Wake the waiter if the server stopped on its own.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SpikeVox speech-therapy engine"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "service configuration JSON")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "global seed");
  app.add_option("--out", g.out, "write the output document here");
  app.add_option("--store", g.store, "session store file (default: in memory)");
  app.add_option("--asset-dir", g.asset_dir, "asset directory");

  std::string input, patient;
  auto* analyze = app.add_subcommand("analyze", "analyze a recognizer JSON file");
  analyze->add_option("file", input)->required()->check(CLI::ExistingFile);
  analyze->add_option("--patient", patient, "patient id");

  std::vector<std::string> targets;
  int phonemes = 20;
  auto* simulate = app.add_subcommand("simulate", "emit a synthetic recognizer document");
  simulate->add_option("--target", targets, "category=deficit, repeatable");
  simulate->add_option("--phonemes", phonemes, "minimum phoneme count")
      ->check(CLI::PositiveNumber);

  std::string difficulty;
  std::optional<int> count;
  auto* therapy = app.add_subcommand("therapy", "select exercises for an analysis");
  therapy->add_option("analysis", input)->required()->check(CLI::ExistingFile);
  therapy->add_option("--difficulty", difficulty)
      ->check(CLI::IsMember({"easy", "medium", "hard"}));
  therapy->add_option("--count", count)->check(CLI::PositiveNumber);

  std::string exercises_file, performance_file;
  auto* feedback = app.add_subcommand("feedback", "feedback bundle for an analysis");
  feedback->add_option("analysis", input)->required()->check(CLI::ExistingFile);
  feedback->add_option("--exercises", exercises_file, "therapy output to register")
      ->check(CLI::ExistingFile);
  feedback->add_option("--performance", performance_file, "performance JSON")
      ->check(CLI::ExistingFile);

  std::string host;
  std::optional<int> port;
  auto* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--host", host);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));

  auto* calibrate = app.add_subcommand("calibrate", "build the reference pattern bank");
  auto* exporter = app.add_subcommand("export", "dump the session store");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    ServiceConfig cfg = MakeConfig(g);
    if (*serve) {
      return Serve(cfg, host.empty() ? cfg.host : host, port ? *port : cfg.port);
    }
    if (*calibrate) {
      AnalysisConfig ac = AnalysisConfig::Load(cfg.categories_config);
      Emit(g, GenerateReferenceBank(ac, cfg.seed).ToJson());
      return 0;
    }
    if (*simulate) {
      ServiceConfig mem = cfg;
      mem.store_path.clear();
      Engine engine(mem);
      SyntheticSpec spec;
      spec.phoneme_count = phonemes;
      spec.seed = cfg.seed;
      for (const auto& t : targets) {
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
          throw ValidationError("--target expects category=deficit, got '" + t + "'");
        }
        double d;
        try {
          d = std::stod(t.substr(eq + 1));
        } catch (const std::exception&) {
          throw ValidationError("bad deficit in '" + t + "'");
        }
        spec.targets.emplace_back(CategoryFromKey(t.substr(0, eq)), d);
      }
      Emit(g, RecognizerToJson(
                  Synthesize(spec, engine.lexicon(), engine.analysis_config())));
      return 0;
    }
    if (*exporter) {
      if (cfg.store_path.empty()) throw ValidationError("export needs --store");
      if (!FileExists(cfg.store_path)) {
        throw ValidationError("no store at " + cfg.store_path);
      }
      SessionStore store({cfg.store_path, 0, 0.70, {}});
      Emit(g, store.Export());
      return 0;
    }

    Engine engine(cfg);
    Warnings warnings;
    json data;
    if (*analyze) {
      RecognizerOutput out = RecognizerFromJson(Unwrap(ReadJsonFile(input)));
      data = engine.Analyze(out, patient, &warnings);
    } else if (*therapy) {
      json analysis = Unwrap(ReadJsonFile(input));
      engine.ImportAnalysis(analysis);
      json req = {{"analysis_id", analysis.at("analysis_id")}};
      if (!difficulty.empty()) req["difficulty"] = difficulty;
      if (count) req["count"] = *count;
      data = engine.GenerateTherapy(req, &warnings);
    } else if (*feedback) {
      json analysis = Unwrap(ReadJsonFile(input));
      engine.ImportAnalysis(analysis);
      std::string id = analysis.at("analysis_id").get<std::string>();
      if (!exercises_file.empty()) {
        json ex = Unwrap(ReadJsonFile(exercises_file));
        engine.ImportExercises(id, ex.is_object() ? ex.at("exercises") : ex);
      }
      json req = {{"analysis_id", id}};
      if (!performance_file.empty()) {
        json perf = Unwrap(ReadJsonFile(performance_file));
        req["performance"] =
            perf.is_object() && perf.contains("performance") ? perf["performance"] : perf;
      }
      data = engine.Feedback(req, &warnings);
    }
    Emit(g, MakeEnvelope(data, warnings));
    return 0;
  } catch (const Error& e) {
    std::cout << MakeErrorEnvelope(e.code(), e.what()).dump(2) << "\n";
    std::cerr << "spikevox: " << e.what() << "\n";
    bool input_error = dynamic_cast<const SchemaError*>(&e) ||
                       dynamic_cast<const ValidationError*>(&e) ||
                       dynamic_cast<const NotFoundError*>(&e) ||
                       dynamic_cast<const UnprocessableError*>(&e) ||
                       dynamic_cast<const ConfigError*>(&e);
    return input_error ? 1 : 2;
  } catch (const nlohmann::json::exception& e) {
    std::cout << MakeErrorEnvelope("schema_error", e.what()).dump(2) << "\n";
    std::cerr << "spikevox: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << MakeErrorEnvelope("internal", e.what()).dump(2) << "\n";
    std::cerr << "spikevox: " << e.what() << "\n";
    return 2;
  }
}
