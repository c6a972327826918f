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

#include "spikevox/spiking.h"

#include <cmath>
#include <fstream>

#include "spikevox/common.h"

namespace spikevox {

using nlohmann::json;

std::array<double, kNumCategories> CategoryCurrents(
    const std::vector<PhonemeIssue>& issues,
    const std::vector<std::string>& symbols, const AnalysisConfig& config) {
  std::array<double, kNumCategories> current{};
  for (const auto& issue : issues) {
    size_t pos = static_cast<size_t>(issue.phoneme.position);
    for (const auto& cfg : config.categories) {
      if (pos < symbols.size() && InCategoryContext(cfg, symbols, pos)) {
        current[Index(cfg.category)] += issue.deficit;
      }
    }
  }
  return current;
}

Matrix EncodeStimulus(const std::vector<PhonemeIssue>& issues,
                      const std::vector<std::string>& symbols,
                      const AnalysisConfig& config) {
  auto current = CategoryCurrents(issues, symbols, config);
  Matrix m(kNumNeurons, config.lif.steps);
  for (const auto& cfg : config.categories) {
    double v = current[Index(cfg.category)];
    for (int n = cfg.neurons.first; n <= cfg.neurons.last; ++n) {
      for (int t = 0; t < m.cols; ++t) m(n - 1, t) = v;
    }
  }
  return m;
}

std::pair<SpikeTrace, MembraneTrace> SimulateLif(const Matrix& currents,
                                                 const LifParams& params) {
  params.Validate();
  if (currents.cols != params.steps) {
    throw ValidationError("current matrix has " +
                          std::to_string(currents.cols) + " steps, expected " +
                          std::to_string(params.steps));
  }
  SpikeTrace spikes(currents.rows, currents.cols);
  MembraneTrace potentials(currents.rows, currents.cols);
  for (int n = 0; n < currents.rows; ++n) {
    double u = 0.0;
    for (int t = 0; t < currents.cols; ++t) {
      double i = currents(n, t);
      if (!std::isfinite(i)) {
        throw ValidationError("non-finite current at neuron " +
                              std::to_string(n + 1) + ", step " +
                              std::to_string(t));
      }
      u = params.decay * u + i;
      potentials(n, t) = u;
      if (u >= params.threshold) {
        spikes.at(n, t) = 1;
        u = params.reset;
      }
    }
  }
  return {std::move(spikes), std::move(potentials)};
}

double SpikeDensity(const SpikeTrace& trace, NeuronRange range) {
  if (range.size() < 1) throw ValidationError("empty neuron range");
  if (range.first < 1 || range.last > trace.neurons) {
    throw ValidationError("neuron range outside trace");
  }
  if (trace.steps < 1) throw ValidationError("empty spike trace");
  uint64_t count = 0;
  for (int n = range.first - 1; n < range.last; ++n) {
    for (int t = 0; t < trace.steps; ++t) count += trace.at(n, t);
  }
  return static_cast<double>(count) /
         (static_cast<double>(trace.steps) * range.size());
}

double CosineSimilarity(const double* a, const double* b, int n) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (int i = 0; i < n; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  // Rounding can push |c| a hair past one.
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return c;
}

double PatternMatchScore(const MembraneTrace& trace, NeuronRange range,
                         const Matrix& reference) {
  if (range.size() < 1 || range.first < 1 || range.last > trace.rows) {
    throw ValidationError("neuron range outside membrane trace");
  }
  if (reference.rows != range.size() || reference.cols != trace.cols) {
    throw ValidationError("reference pattern shape mismatch");
  }
  double sum = 0.0;
  for (int k = 0; k < range.size(); ++k) {
    sum += CosineSimilarity(trace.row(range.first - 1 + k), reference.row(k),
                            trace.cols);
  }
  return 1.0 - sum / range.size();
}

double PatternMatchScore(const MembraneTrace& trace,
                         const ReferencePatternBank& bank,
                         const CategoryConfig& category) {
  return PatternMatchScore(trace, category.neurons,
                           bank.patterns[Index(category.category)]);
}

ReferencePatternBank GenerateReferenceBank(const AnalysisConfig& config,
                                           uint64_t seed) {
  ReferencePatternBank bank;
  bank.seed = seed;
  bank.params = config.lif;
  for (const auto& cfg : config.categories) {
    Matrix currents(kNumNeurons, config.lif.steps);
    for (int n = cfg.neurons.first; n <= cfg.neurons.last; ++n) {
      for (int t = 0; t < currents.cols; ++t) currents(n - 1, t) = 1.0;
    }
    auto [spikes, potentials] = SimulateLif(currents, config.lif);
    Matrix pattern(cfg.neurons.size(), config.lif.steps);
    for (int k = 0; k < pattern.rows; ++k) {
      for (int t = 0; t < pattern.cols; ++t) {
        pattern(k, t) = potentials(cfg.neurons.first - 1 + k, t);
      }
    }
    bank.patterns[Index(cfg.category)] = std::move(pattern);
  }
  return bank;
}

json ReferencePatternBank::ToJson() const {
  json pats = json::object();
  for (int c = 0; c < kNumCategories; ++c) {
    const Matrix& m = patterns[c];
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
      rows.push_back(std::vector<double>(m.row(r), m.row(r) + m.cols));
    }
    pats[CategoryKey(static_cast<Category>(c))] = std::move(rows);
  }
  return {{"format", "spikevox-reference-bank"},
          {"version", 1},
          {"seed", seed},
          {"params",
           {{"decay", params.decay},
            {"threshold", params.threshold},
            {"reset", params.reset},
            {"steps", params.steps}}},
          {"patterns", pats}};
}

ReferencePatternBank ReferencePatternBank::FromJson(const json& doc) {
  ReferencePatternBank bank;
  try {
    if (doc.value("format", std::string()) != "spikevox-reference-bank" ||
        doc.value("version", 0) != 1) {
      throw ConfigError("not a version 1 reference bank");
    }
    bank.seed = doc.at("seed").get<uint64_t>();
    const json& p = doc.at("params");
    bank.params.decay = p.at("decay").get<double>();
    bank.params.threshold = p.at("threshold").get<double>();
    bank.params.reset = p.at("reset").get<double>();
    bank.params.steps = p.at("steps").get<int>();
    bank.params.Validate();
    for (int c = 0; c < kNumCategories; ++c) {
      const json& rows = doc.at("patterns").at(CategoryKey(static_cast<Category>(c)));
      Matrix m(static_cast<int>(rows.size()), bank.params.steps);
      for (int r = 0; r < m.rows; ++r) {
        const json& row = rows.at(r);
        if (static_cast<int>(row.size()) != m.cols) {
          throw ConfigError("reference bank row length mismatch");
        }
        for (int t = 0; t < m.cols; ++t) m(r, t) = row.at(t).get<double>();
      }
      bank.patterns[c] = std::move(m);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("reference bank: ") + e.what());
  }
  return bank;
}

ReferencePatternBank ReferencePatternBank::Load(const std::string& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded()) throw ConfigError(path + " is not valid JSON");
  return FromJson(doc);
}

void ReferencePatternBank::Save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot write " + path);
  os << ToJson().dump() << "\n";
  if (!os) throw ConfigError("write failed: " + path);
}

}  // namespace spikevox
