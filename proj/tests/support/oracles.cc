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


#include "support/oracles.h"

#include <cmath>

namespace spikevox::testing {

double DensityOracle(const std::vector<std::vector<int>>& spikes) {
  long ones = 0;
  long cells = 0;
  for (const auto& row : spikes) {
    for (int s : row) {
      if (s == 1) ++ones;
      ++cells;
    }
  }
  return static_cast<double>(ones) / static_cast<double>(cells);
}

double PatternMatchOracle(const std::vector<std::vector<double>>& trace,
                          const std::vector<std::vector<double>>& reference) {
  double total = 0.0;
  for (size_t n = 0; n < trace.size(); ++n) {
    double dot = 0.0, aa = 0.0, bb = 0.0;
    for (size_t t = 0; t < trace[n].size(); ++t) {
      dot += trace[n][t] * reference[n][t];
      aa += trace[n][t] * trace[n][t];
      bb += reference[n][t] * reference[n][t];
    }
    if (aa > 0.0 && bb > 0.0) total += dot / (std::sqrt(aa) * std::sqrt(bb));
  }
  return 1.0 - total / static_cast<double>(trace.size());
}

double ConfidenceOracle(double alpha, double beta, double gamma,
                        double mean_deficit, double density, double match) {
  return alpha * mean_deficit + beta * density + gamma * match;
}

size_t ArgmaxOracle(const std::vector<std::pair<double, std::string>>& items) {
  for (size_t i = 0; i < items.size(); ++i) {
    bool best = true;
    for (size_t j = 0; j < items.size() && best; ++j) {
      if (i == j) continue;
      if (items[j].first > items[i].first) best = false;
      if (items[j].first == items[i].first && items[j].second < items[i].second) {
        best = false;
      }
    }
    if (best) return i;
  }
  return items.size();
}

std::string SeverityOracle(int issue_count) {
  if (issue_count > 10) return "severe";
  if (issue_count > 5) return "moderate";
  return "mild";
}

LifRun LifOracle(const std::vector<double>& currents, double decay,
                 double threshold, double reset) {
  LifRun run;
  double u = 0.0;
  for (double i : currents) {
    u = decay * u + i;
    run.potential.push_back(u);
    if (u >= threshold) {
      run.spikes.push_back(1);
      u = reset;
    } else {
      run.spikes.push_back(0);
    }
  }
  return run;
}

double AlignmentOracle(double complexity, double mu, double delta) {
  double d = 1.0 - std::fabs(complexity - mu) / delta;
  return d < 0.0 ? 0.0 : d;
}

}  // namespace spikevox::testing
