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


#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "spikevox/category.h"
#include "spikevox/engine.h"
#include "spikevox/spiking.h"
#include "support/oracles.h"
#include "support/util.h"

namespace spikevox {
namespace {

const AnalysisConfig& Table() {
  static const AnalysisConfig cfg =
      AnalysisConfig::Load(JoinPath(DefaultAssetDir(), "config/categories.json"));
  return cfg;
}

PhonemeIssue Issue(const std::string& symbol, int position, double deficit) {
  PhonemeIssue issue;
  issue.phoneme.symbol = symbol;
  issue.phoneme.position = position;
  issue.phoneme.confidence = 1.0 - deficit;
  issue.deficit = deficit;
  return issue;
}

SpikeTrace FromRows(const std::vector<std::vector<int>>& rows) {
  SpikeTrace t(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t n = 0; n < rows.size(); ++n) {
    for (size_t s = 0; s < rows[n].size(); ++s) {
      t.at(static_cast<int>(n), static_cast<int>(s)) = static_cast<uint8_t>(rows[n][s]);
    }
  }
  return t;
}

TEST(CategoryMap, DefaultTableIsValid) {
  const AnalysisConfig& cfg = Table();
  EXPECT_NO_THROW(cfg.Validate());
  int next = 1;
  for (const auto& c : cfg.categories) {
    EXPECT_EQ(c.neurons.first, next);
    EXPECT_EQ(c.neurons.size(), 64);
    next = c.neurons.last + 1;
  }
  EXPECT_EQ(next, kNumNeurons + 1);
  EXPECT_DOUBLE_EQ(cfg.lif.decay, 0.9);
  EXPECT_DOUBLE_EQ(cfg.lif.threshold, 1.0);
  EXPECT_DOUBLE_EQ(cfg.lif.reset, 0.0);
  EXPECT_EQ(cfg.lif.steps, 32);
}

TEST(EncodeStimulus, RIssueDrivesFirstBlock) {
  std::vector<std::string> seq = {"R"};
  Matrix m = EncodeStimulus({Issue("R", 0, 0.5)}, seq, Table());
  ASSERT_EQ(m.rows, 384);
  ASSERT_EQ(m.cols, 32);
  for (int n = 0; n < 384; ++n) {
    for (int t = 0; t < 32; ++t) {
      ASSERT_EQ(m(n, t), n < 64 ? 0.5 : 0.0) << n << "," << t;
    }
  }
}

TEST(EncodeStimulus, SAndThIssues) {
  std::vector<std::string> seq = {"S", "TH"};
  Matrix m = EncodeStimulus({Issue("S", 0, 0.3), Issue("TH", 1, 0.6)}, seq, Table());
  for (int n = 1; n <= 384; ++n) {
    double want = (n >= 65 && n <= 128) ? 0.3 : (n >= 129 && n <= 192) ? 0.6 : 0.0;
    for (int t = 0; t < 32; ++t) ASSERT_EQ(m(n - 1, t), want) << n;
  }
}

TEST(EncodeStimulus, NoIssuesIsSilent) {
  Matrix m = EncodeStimulus({}, {"AH", "R"}, Table());
  for (double v : m.data) ASSERT_EQ(v, 0.0);
}

TEST(SimulateLif, HandArithmeticStep) {
  LifParams p;
  p.steps = 3;
  Matrix cur(1, 3);
  cur(0, 0) = 0.8;
  cur(0, 1) = 0.3;
  auto [spikes, pot] = SimulateLif(cur, p);
  EXPECT_EQ(spikes.at(0, 0), 0);
  EXPECT_DOUBLE_EQ(pot(0, 0), 0.8);
  EXPECT_EQ(spikes.at(0, 1), 1);
  EXPECT_NEAR(pot(0, 1), 1.02, 1e-12);
  // Reset to zero after the spike; no input keeps it there.
  EXPECT_EQ(spikes.at(0, 2), 0);
  EXPECT_EQ(pot(0, 2), 0.0);
}

TEST(SimulateLif, Quiescence) {
  Matrix cur(384, 32);
  auto [spikes, pot] = SimulateLif(cur, Table().lif);
  for (uint8_t s : spikes.spikes) ASSERT_EQ(s, 0);
  for (double u : pot.data) ASSERT_EQ(u, 0.0);
}

TEST(SimulateLif, ThresholdEqualityFiresAtFirstStep) {
  for (double decay : {0.1, 0.5, 0.9, 1.0}) {
    LifParams p;
    p.decay = decay;
    p.threshold = 0.7;
    p.steps = 4;
    Matrix cur(1, 4, 0.7);
    auto [spikes, pot] = SimulateLif(cur, p);
    EXPECT_EQ(spikes.at(0, 0), 1) << decay;
    EXPECT_EQ(pot(0, 0), 0.7);
  }
}

TEST(SimulateLif, NonFiniteCurrentRejected) {
  LifParams p;
  p.steps = 2;
  Matrix cur(1, 2);
  cur(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(SimulateLif(cur, p), ValidationError);
  cur(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SimulateLif(cur, p), ValidationError);
}

TEST(SimulateLif, ShapeAndParamsChecked) {
  LifParams p;
  Matrix cur(2, 5);
  EXPECT_THROW(SimulateLif(cur, p), ValidationError);
  LifParams bad;
  bad.decay = 0.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = LifParams{};
  bad.steps = 0;
  EXPECT_THROW(bad.Validate(), ConfigError);
  bad = LifParams{};
  bad.reset = 1.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

TEST(SimulateLif, MatchesScalarOracle) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> cur(0.0, 1.5);
  std::uniform_real_distribution<double> dec(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    LifParams p;
    p.decay = dec(gen);
    p.threshold = 0.5 + cur(gen);
    p.steps = 16;
    Matrix m(4, 16);
    for (double& v : m.data) v = cur(gen);
    auto [spikes, pot] = SimulateLif(m, p);
    for (int n = 0; n < 4; ++n) {
      std::vector<double> row(m.row(n), m.row(n) + 16);
      auto want = testing::LifOracle(row, p.decay, p.threshold, p.reset);
      for (int t = 0; t < 16; ++t) {
        ASSERT_EQ(spikes.at(n, t), want.spikes[t]);
        ASSERT_EQ(pot(n, t), want.potential[t]);
      }
    }
  }
}

TEST(SimulateLif, IntegratorLimitGivesPrefixSums) {
  LifParams p;
  p.decay = 1.0;
  p.threshold = std::numeric_limits<double>::infinity();
  p.steps = 20;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> cur(0.0, 1.0);
  Matrix m(3, 20);
  for (double& v : m.data) v = cur(gen);
  auto [spikes, pot] = SimulateLif(m, p);
  for (int n = 0; n < 3; ++n) {
    double sum = 0.0;
    for (int t = 0; t < 20; ++t) {
      sum += m(n, t);
      ASSERT_EQ(pot(n, t), sum);
      ASSERT_EQ(spikes.at(n, t), 0);
    }
  }
}

TEST(SimulateLif, MonotoneStimulusNeverLowersDensity) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> cur(0.0, 1.2);
  std::uniform_real_distribution<double> bump(0.0, 0.5);
  LifParams p;
  p.steps = 32;
  for (int trial = 0; trial < 100; ++trial) {
    // Constant current per neuron, as the encoder produces.
    Matrix lo(8, 32), hi(8, 32);
    for (int n = 0; n < 8; ++n) {
      double a = cur(gen);
      double b = a + bump(gen);
      for (int t = 0; t < 32; ++t) {
        lo(n, t) = a;
        hi(n, t) = b;
      }
    }
    double d_lo = SpikeDensity(SimulateLif(lo, p).first, {1, 8});
    double d_hi = SpikeDensity(SimulateLif(hi, p).first, {1, 8});
    ASSERT_LE(d_lo, d_hi);
  }
}

TEST(SimulateLif, Deterministic) {
  std::vector<std::string> seq = {"HH", "EH", "L"};
  Matrix m = EncodeStimulus({Issue("HH", 0, 0.295), Issue("EH", 1, 0.583),
                             Issue("L", 2, 0.262)},
                            seq, Table());
  auto a = SimulateLif(m, Table().lif);
  auto b = SimulateLif(m, Table().lif);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
}

TEST(SpikeDensity, HandCountedExample) {
  SpikeTrace t = FromRows({{1, 0, 1}, {0, 1, 0}});
  EXPECT_EQ(SpikeDensity(t, {1, 2}), 0.5);
  EXPECT_EQ(SpikeDensity(t, {1, 1}), 2.0 / 3.0);
  EXPECT_EQ(SpikeDensity(t, {2, 2}), 1.0 / 3.0);
}

TEST(SpikeDensity, AllZeroAndAllOne) {
  EXPECT_EQ(SpikeDensity(FromRows({{0, 0}, {0, 0}}), {1, 2}), 0.0);
  EXPECT_EQ(SpikeDensity(FromRows({{1, 1}, {1, 1}}), {1, 2}), 1.0);
}

TEST(SpikeDensity, RejectsBadRanges) {
  SpikeTrace t = FromRows({{1, 0}});
  EXPECT_THROW(SpikeDensity(t, {2, 1}), ValidationError);
  EXPECT_THROW(SpikeDensity(t, {1, 2}), ValidationError);
  EXPECT_THROW(SpikeDensity(t, {0, 1}), ValidationError);
}

TEST(SpikeDensity, MatchesPopcountOracle) {
  std::mt19937_64 gen(13);
  std::uniform_int_distribution<int> dim(1, 16);
  std::bernoulli_distribution bit(0.4);
  for (int trial = 0; trial < 1000; ++trial) {
    int rows = std::uniform_int_distribution<int>(1, 8)(gen);
    int cols = dim(gen);
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
    for (auto& r : m) {
      for (int& v : r) v = bit(gen);
    }
    double got = SpikeDensity(FromRows(m), {1, rows});
    ASSERT_EQ(got, testing::DensityOracle(m));
    ASSERT_GE(got, 0.0);
    ASSERT_LE(got, 1.0);
  }
}

Matrix RowsToMatrix(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    for (size_t c = 0; c < rows[r].size(); ++c) m(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
  }
  return m;
}

TEST(PatternMatch, IdenticalAndOrthogonalAnchors) {
  auto ref = RowsToMatrix({{1, 2, 0}, {0.5, 0.5, 0.5}});
  EXPECT_NEAR(PatternMatchScore(ref, {1, 2}, ref), 0.0, 1e-12);
  auto ortho = RowsToMatrix({{0, 0, 3}, {0, 0, 0}});
  // Row 2 is a zero vector: similarity 0 by convention.
  EXPECT_NEAR(PatternMatchScore(ortho, {1, 2}, ref), 1.0, 1e-12);
  auto ortho2 = RowsToMatrix({{0, 0, 3}, {1, -1, 0}});
  EXPECT_NEAR(PatternMatchScore(ortho2, {1, 2}, ref), 1.0, 1e-12);
}

TEST(PatternMatch, SimilaritiesOneAndHalf) {
  // Row 1 identical; row 2 at 60 degrees (cosine 0.5).
  auto ref = RowsToMatrix({{1, 0}, {1, 0}});
  auto trace = RowsToMatrix({{2, 0}, {0.5, std::sqrt(3.0) / 2}});
  EXPECT_NEAR(PatternMatchScore(trace, {1, 2}, ref), 0.25, 1e-12);
}

TEST(PatternMatch, ShapeMismatchRejected) {
  auto ref = RowsToMatrix({{1, 0}});
  auto trace = RowsToMatrix({{1, 0, 0}, {1, 0, 0}});
  EXPECT_THROW(PatternMatchScore(trace, {1, 1}, ref), ValidationError);
  EXPECT_THROW(PatternMatchScore(trace, {1, 2}, ref), ValidationError);
  EXPECT_THROW(PatternMatchScore(trace, {2, 3}, ref), ValidationError);
}

TEST(PatternMatch, BoundedAndMatchesOracleOnNonNegativeTraces) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> val(0.0, 2.0);
  std::bernoulli_distribution zero(0.1);
  for (int trial = 0; trial < 500; ++trial) {
    int rows = std::uniform_int_distribution<int>(1, 8)(gen);
    int cols = std::uniform_int_distribution<int>(1, 16)(gen);
    std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
    std::vector<std::vector<double>> b = a;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        a[r][c] = zero(gen) ? 0.0 : val(gen);
        b[r][c] = zero(gen) ? 0.0 : val(gen);
      }
    }
    double m = PatternMatchScore(RowsToMatrix(a), {1, rows}, RowsToMatrix(b));
    ASSERT_GE(m, 0.0);
    ASSERT_LE(m, 1.0);
    ASSERT_NEAR(m, testing::PatternMatchOracle(a, b), 1e-12);
  }
}

TEST(ReferenceBank, CanonicalPatternsRoundTrip) {
  ReferencePatternBank bank = GenerateReferenceBank(Table(), 42);
  EXPECT_EQ(bank.seed, 42u);
  for (const auto& c : Table().categories) {
    const Matrix& m = bank.patterns[Index(c.category)];
    ASSERT_EQ(m.rows, 64);
    ASSERT_EQ(m.cols, 32);
    // Unit drive: every neuron fires at every step, pre-reset value 1.
    for (double v : m.data) ASSERT_EQ(v, 1.0);
  }
  ReferencePatternBank back = ReferencePatternBank::FromJson(bank.ToJson());
  EXPECT_EQ(back.seed, bank.seed);
  for (int c = 0; c < kNumCategories; ++c) EXPECT_EQ(back.patterns[c], bank.patterns[c]);

  testing::TempDir dir;
  bank.Save(dir.File("bank.json"));
  ReferencePatternBank loaded = ReferencePatternBank::Load(dir.File("bank.json"));
  for (int c = 0; c < kNumCategories; ++c) EXPECT_EQ(loaded.patterns[c], bank.patterns[c]);
}

TEST(ReferenceBank, RejectsForeignDocuments) {
  EXPECT_THROW(ReferencePatternBank::FromJson({{"format", "x"}}), ConfigError);
  nlohmann::json doc = GenerateReferenceBank(Table(), 1).ToJson();
  doc["patterns"]["r_sound"][0].erase(0);
  EXPECT_THROW(ReferencePatternBank::FromJson(doc), ConfigError);
}

}  // namespace
}  // namespace spikevox
