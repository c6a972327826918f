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

#include "spikevox/synthetic.h"

#include <algorithm>

#include "spikevox/common.h"
#include "spikevox/random.h"

namespace spikevox {

RecognizerOutput Synthesize(const SyntheticSpec& spec, const Lexicon& lexicon,
                            const AnalysisConfig& config) {
  if (spec.phoneme_count < 1) throw ValidationError("phoneme count must be >= 1");
  for (const auto& [c, d] : spec.targets) {
    if (!(d > 0.0 && d <= 1.0)) {
      throw ValidationError(std::string("deficit for ") + CategoryKey(c) +
                            " must be in (0,1]");
    }
  }
  const auto& words = lexicon.Words();
  if (words.empty()) throw ConfigError("lexicon is empty");

  Rng rng(spec.seed, {"simulate"});
  std::vector<std::string> chosen, seq;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 10000) {
      throw ValidationError("could not place every targeted category");
    }
    chosen.clear();
    seq.clear();
    while (static_cast<int>(seq.size()) < spec.phoneme_count) {
      const std::string& w = words[rng.Below(words.size())];
      const auto* ph = lexicon.Lookup(w);
      chosen.push_back(w);
      seq.insert(seq.end(), ph->begin(), ph->end());
    }
    bool ok = std::all_of(spec.targets.begin(), spec.targets.end(),
                          [&](const auto& t) {
                            return CountInContext(config.at(t.first), seq) > 0;
                          });
    if (ok) break;
  }

  RecognizerOutput out;
  out.source = RecognizerSource::kSynthetic;
  for (size_t i = 0; i < chosen.size(); ++i) {
    out.transcript += (i ? " " : "") + chosen[i];
  }
  for (size_t i = 0; i < seq.size(); ++i) {
    PhonemeScore p;
    p.symbol = seq[i];
    p.position = static_cast<int>(i);
    p.confidence = Round3(rng.Uniform(0.75, 1.0));
    double deficit = 0.0;
    for (const auto& [c, d] : spec.targets) {
      if (InCategoryContext(config.at(c), seq, i)) deficit = std::max(deficit, d);
    }
    if (deficit > 0.0) p.confidence = Round3(1.0 - deficit);
    out.phonemes.push_back(std::move(p));
  }
  return out;
}

}  // namespace spikevox
