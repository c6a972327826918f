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

#ifndef SPIKEVOX_SPIKING_H_
#define SPIKEVOX_SPIKING_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "spikevox/category.h"
#include "spikevox/recognizer.h"

namespace spikevox {

// Dense row-major matrix: rows are neurons, columns are time steps.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double v = 0.0)
      : rows(r), cols(c), data(static_cast<size_t>(r) * c, v) {}
  double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const {
    return data[static_cast<size_t>(r) * cols + c];
  }
  const double* row(int r) const { return data.data() + static_cast<size_t>(r) * cols; }
  bool operator==(const Matrix&) const = default;
};

struct SpikeTrace {
  int neurons = 0;
  int steps = 0;
  std::vector<uint8_t> spikes;

  SpikeTrace() = default;
  SpikeTrace(int n, int t)
      : neurons(n), steps(t), spikes(static_cast<size_t>(n) * t, 0) {}
  uint8_t& at(int n, int t) { return spikes[static_cast<size_t>(n) * steps + t]; }
  uint8_t at(int n, int t) const {
    return spikes[static_cast<size_t>(n) * steps + t];
  }
  bool operator==(const SpikeTrace&) const = default;
};

using MembraneTrace = Matrix;

struct ReferencePatternBank {
  uint64_t seed = 0;
  LifParams params;
  // Indexed by category; |N_i| rows x steps.
  std::array<Matrix, kNumCategories> patterns;

  nlohmann::json ToJson() const;
  static ReferencePatternBank FromJson(const nlohmann::json& doc);
  static ReferencePatternBank Load(const std::string& path);
  void Save(const std::string& path) const;
};

// Per-category current for each flagged issue that falls in the category's
// phoneme set (in context); currents of several issues add up.
std::array<double, kNumCategories> CategoryCurrents(
    const std::vector<PhonemeIssue>& issues,
    const std::vector<std::string>& symbols, const AnalysisConfig& config);

// 384 x steps constant-in-time input matrix.
Matrix EncodeStimulus(const std::vector<PhonemeIssue>& issues,
                      const std::vector<std::string>& symbols,
                      const AnalysisConfig& config);

// Discrete LIF: U = decay*U + I; spike iff U >= threshold, then U = reset.
// The recorded potential is the pre-reset value. Throws ValidationError
// on non-finite input.
std::pair<SpikeTrace, MembraneTrace> SimulateLif(const Matrix& currents,
                                                 const LifParams& params);

// Fraction of firing cells in the 1-based inclusive neuron range.
double SpikeDensity(const SpikeTrace& trace, NeuronRange range);

// Cosine of two equal-length vectors; 0 when either is all-zero.
double CosineSimilarity(const double* a, const double* b, int n);

// 1 - mean row cosine between membrane rows in `range` and `reference`.
double PatternMatchScore(const MembraneTrace& trace, NeuronRange range,
                         const Matrix& reference);
double PatternMatchScore(const MembraneTrace& trace,
                         const ReferencePatternBank& bank,
                         const CategoryConfig& category);

// Self-calibrated bank: deficit 1.0 on each category alone.
ReferencePatternBank GenerateReferenceBank(const AnalysisConfig& config,
                                           uint64_t seed);

}  // namespace spikevox

#endif  // SPIKEVOX_SPIKING_H_
