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

#include "spikevox/therapy.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spikevox/random.h"

namespace spikevox {

using nlohmann::json;

namespace {

bool IsWordToken(const std::string& w) {
  if (w.empty()) return false;
  bool letter = false;
  for (char c : w) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      letter = true;
    } else if (c != '\'') {
      return false;
    }
  }
  return letter;
}

template <size_t N>
std::array<double, N> ReadArray(const json& j) {
  std::array<double, N> out{};
  if (!j.is_array() || j.size() != N) {
    throw ConfigError("expected array of " + std::to_string(N) + " numbers");
  }
  for (size_t i = 0; i < N; ++i) out[i] = j.at(i).get<double>();
  return out;
}

}  // namespace

TherapyConfig TherapyConfig::FromJson(const json& doc) {
  TherapyConfig cfg;
  try {
    TherapyWeights& w = cfg.weights;
    if (doc.contains("omega")) w.omega = ReadArray<3>(doc.at("omega"));
    w.eta = doc.value("eta", w.eta);
    if (doc.contains("lambda_relevance")) {
      for (auto& [key, v] : doc.at("lambda_relevance").items()) {
        w.lambda_rel[Index(CategoryFromKey(key))] = v.get<double>();
      }
    }
    if (doc.contains("alpha_complexity")) {
      w.alpha_cx = ReadArray<4>(doc.at("alpha_complexity"));
    }
    if (doc.contains("gamma_personalization")) {
      w.gamma_pers = ReadArray<2>(doc.at("gamma_personalization"));
    }
    w.kappa = doc.value("kappa", w.kappa);
    cfg.candidate_count = doc.value("candidate_count", cfg.candidate_count);
    cfg.max_tokens = doc.value("max_tokens", cfg.max_tokens);
    if (doc.contains("difficulties")) {
      for (auto& [key, v] : doc.at("difficulties").items()) {
        DifficultyParams& d = cfg.difficulties[Index(DifficultyFromKey(key))];
        d.mu = v.at("mu").get<double>();
        d.delta = v.at("delta").get<double>();
        d.temperature = v.at("temperature").get<double>();
      }
    }
    if (doc.contains("quality")) {
      const json& q = doc.at("quality");
      QualityRules& r = cfg.quality;
      r.min_targets = q.value("min_targets", r.min_targets);
      r.min_words = q.value("min_words", r.min_words);
      r.max_words = q.value("max_words", r.max_words);
      r.max_words_easy = q.value("max_words_easy", r.max_words_easy);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("therapy config: ") + e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("therapy config: ") + e.what());
  }
  cfg.Validate();
  return cfg;
}

TherapyConfig TherapyConfig::Load(const std::string& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded()) throw ConfigError(path + " is not valid JSON");
  return FromJson(doc);
}

void TherapyConfig::Validate() const {
  const TherapyWeights& w = weights;
  if (std::fabs(w.omega[0] + w.omega[1] + w.omega[2] - 1.0) > 1e-9) {
    throw ConfigError("omega must sum to 1");
  }
  auto non_negative = [](auto begin, auto end) {
    return std::all_of(begin, end, [](double v) { return v >= 0.0; });
  };
  if (!non_negative(w.omega.begin(), w.omega.end()) || w.eta < 0 ||
      !non_negative(w.lambda_rel.begin(), w.lambda_rel.end()) ||
      !non_negative(w.alpha_cx.begin(), w.alpha_cx.end()) ||
      !non_negative(w.gamma_pers.begin(), w.gamma_pers.end())) {
    throw ConfigError("therapy weights must be non-negative");
  }
  if (w.kappa < 1) throw ConfigError("kappa must be positive");
  for (const auto& d : difficulties) {
    if (d.mu < 0 || d.mu > 1 || !(d.delta > 0) || !(d.temperature > 0)) {
      throw ConfigError("bad difficulty parameters");
    }
  }
  if (candidate_count < 1) throw ConfigError("candidate_count must be >= 1");
  if (quality.min_words > quality.max_words) {
    throw ConfigError("quality word bounds inverted");
  }
}

PromptTable PromptTable::FromJson(const json& doc) {
  PromptTable t;
  try {
    for (Category c : kAllCategories) {
      t.prefix_[Index(c)] = doc.at("prefix").at(CategoryKey(c)).get<std::string>();
      t.instruction_[Index(c)] =
          doc.at("instruction").at(CategoryKey(c)).get<std::string>();
    }
    for (Difficulty d : kAllDifficulties) {
      t.modifier_[Index(d)] =
          doc.at("modifier").at(DifficultyKey(d)).get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("prompt table: ") + e.what());
  }
  return t;
}

PromptTable PromptTable::Load(const std::string& path) {
  json doc = json::parse(ReadFile(path), nullptr, false);
  if (doc.is_discarded()) throw ConfigError(path + " is not valid JSON");
  return FromJson(doc);
}

std::string PromptTable::Build(Category c, Difficulty d) const {
  return prefix_[Index(c)] + " " + modifier_[Index(d)] + " " +
         instruction_[Index(c)];
}

TemplateCorpus TemplateCorpus::FromText(std::string_view text) {
  TemplateCorpus corpus;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw ConfigError("templates line " + std::to_string(line_no) +
                        ": expected three tab-separated fields");
    }
    try {
      Category c = CategoryFromKey(line.substr(0, t1));
      Difficulty d = DifficultyFromKey(line.substr(t1 + 1, t2 - t1 - 1));
      corpus.sentences_[Index(c)][Index(d)].push_back(Trim(line.substr(t2 + 1)));
    } catch (const ValidationError& e) {
      throw ConfigError("templates line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return corpus;
}

TemplateCorpus TemplateCorpus::Load(const std::string& path) {
  return FromText(ReadFile(path));
}

const char* OriginKey(Origin o) {
  return o == Origin::kGenerated ? "generated" : "template";
}

json ExerciseToJson(const Exercise& e) {
  return {{"exercise_id", e.exercise_id},
          {"sentence", e.sentence},
          {"category", CategoryKey(e.category)},
          {"difficulty", DifficultyKey(e.difficulty)},
          {"target_phonemes", e.target_phonemes},
          {"score",
           {{"relevance", e.score.relevance},
            {"difficulty", e.score.difficulty},
            {"personalization", e.score.personalization},
            {"total", e.score.total}}},
          {"origin", OriginKey(e.origin)},
          {"description", e.description},
          {"prompt", e.prompt}};
}

Exercise ExerciseFromJson(const json& doc) {
  Exercise e;
  try {
    e.exercise_id = doc.at("exercise_id").get<std::string>();
    e.sentence = doc.at("sentence").get<std::string>();
    e.category = CategoryFromKey(doc.at("category").get<std::string>());
    e.difficulty = DifficultyFromKey(doc.at("difficulty").get<std::string>());
    e.target_phonemes = doc.at("target_phonemes").get<std::vector<std::string>>();
    const json& s = doc.at("score");
    e.score = {s.at("relevance").get<double>(), s.at("difficulty").get<double>(),
               s.at("personalization").get<double>(),
               s.at("total").get<double>()};
    e.origin = doc.at("origin").get<std::string>() == "generated"
                   ? Origin::kGenerated
                   : Origin::kTemplate;
    e.description = doc.value("description", std::string());
    e.prompt = doc.value("prompt", std::string());
  } catch (const json::exception& ex) {
    throw SchemaError(std::string("exercise document: ") + ex.what());
  }
  return e;
}

double ContextFactor(const std::vector<std::string>& seq, size_t i) {
  int n = 0;
  if (i > 0 && IsConsonant(seq[i - 1])) ++n;
  if (i + 1 < seq.size() && IsConsonant(seq[i + 1])) ++n;
  return 0.5 * n;
}

double Relevance(const std::vector<std::string>& phonemes,
                 const CategoryConfig& category, double lambda, double eta) {
  if (phonemes.empty()) return 0.0;
  double sum = 0.0;
  for (size_t i = 0; i < phonemes.size(); ++i) {
    if (InCategoryContext(category, phonemes, i)) {
      sum += 1.0 + eta * ContextFactor(phonemes, i);
    }
  }
  double r = lambda * sum / static_cast<double>(phonemes.size());
  return std::clamp(r, 0.0, 1.0);
}

double SentenceComplexity(const G2pResult& g2p,
                          const std::array<double, 4>& alpha) {
  size_t n = g2p.words.size();
  if (n == 0) return 0.0;
  double len = std::min(static_cast<double>(n) / 20.0, 1.0);
  std::set<std::string> vocab(g2p.words.begin(), g2p.words.end());
  double ratio = static_cast<double>(vocab.size()) / static_cast<double>(n);

  int clusters = 0;
  std::vector<double> syllables;
  for (const auto& word : g2p.word_phonemes) {
    int run = 0, vowels = 0;
    for (const auto& p : word) {
      if (IsConsonant(p)) {
        if (++run == 2) ++clusters;
      } else {
        run = 0;
        ++vowels;
      }
    }
    syllables.push_back(std::max(vowels, 1));
  }
  double cc = std::min(static_cast<double>(clusters) / static_cast<double>(n), 1.0);
  double mean = std::accumulate(syllables.begin(), syllables.end(), 0.0) /
                static_cast<double>(n);
  double var = 0.0;
  for (double s : syllables) var += (s - mean) * (s - mean);
  double sr = std::min(var / static_cast<double>(n), 1.0);
  return alpha[0] * len + alpha[1] * ratio + alpha[2] * cc + alpha[3] * sr;
}

double DifficultyAlignment(double complexity, const DifficultyParams& d) {
  return std::max(0.0, 1.0 - std::fabs(complexity - d.mu) / d.delta);
}

double MaxSimilarity(const PhonemeBag& bag,
                     const std::vector<PhonemeBag>& history) {
  double best = 0.0;
  for (const auto& h : history) best = std::max(best, BagCosine(bag, h));
  return best;
}

double Personalization(const PhonemeBag& sentence, const HistoryView& history,
                       const std::array<double, 2>& gamma) {
  double ok = MaxSimilarity(sentence, history.successes);
  double bad = MaxSimilarity(sentence, history.failures);
  return gamma[0] * ok * (1.0 - gamma[1] * bad);
}

double TotalScore(const ScoreBreakdown& s, const std::array<double, 3>& omega) {
  return omega[0] * s.relevance + omega[1] * s.difficulty +
         omega[2] * s.personalization;
}

size_t SelectBest(const std::vector<Candidate>& candidates) {
  if (candidates.empty()) {
    throw CorpusExhaustedError("no candidate sentence passed the quality filter");
  }
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    const Candidate& a = candidates[i];
    const Candidate& b = candidates[best];
    if (a.score.total > b.score.total ||
        (a.score.total == b.score.total && a.sentence < b.sentence)) {
      best = i;
    }
  }
  return best;
}

TherapyEngine::TherapyEngine(const TherapyConfig& config,
                             const AnalysisConfig& analysis,
                             const Lexicon& lexicon, const PromptTable& prompts,
                             const TemplateCorpus& corpus,
                             GeneratorBackend* generator)
    : config_(config),
      analysis_(analysis),
      lexicon_(lexicon),
      prompts_(prompts),
      corpus_(corpus),
      generator_(generator) {}

bool TherapyEngine::PassesQuality(const std::string& sentence, Category c,
                                  Difficulty d,
                                  const std::set<std::string>& selected) const {
  if (selected.count(sentence)) return false;
  auto words = TokenizeWords(sentence);
  int n = static_cast<int>(words.size());
  const QualityRules& q = config_.quality;
  int max_words = d == Difficulty::kEasy ? std::min(q.max_words, q.max_words_easy)
                                         : q.max_words;
  if (n < q.min_words || n > max_words) return false;
  for (const auto& w : words) {
    if (!IsWordToken(w) || !lexicon_.Contains(w)) return false;
  }
  G2pResult g2p = GraphemesToPhonemes(lexicon_, sentence);
  return CountInContext(analysis_.at(c), g2p.phonemes) >= q.min_targets;
}

std::vector<std::string> TherapyEngine::QualityFilter(
    const std::vector<std::string>& sentences, Category c, Difficulty d,
    const std::set<std::string>& selected) const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& s : sentences) {
    if (seen.count(s)) continue;
    if (PassesQuality(s, c, d, selected)) {
      out.push_back(s);
      seen.insert(s);
    }
  }
  return out;
}

std::vector<std::string> TherapyEngine::TemplateCandidates(
    Category c, Difficulty d, int count, uint64_t seed,
    const std::set<std::string>& selected) const {
  std::vector<std::string> out;
  if (count <= 0) return out;
  std::vector<std::string> pool = corpus_.Sentences(c, d);
  Rng rng(seed, {CategoryKey(c), DifficultyKey(d)});
  std::set<std::string> taken;
  // Lazy Fisher-Yates: stop as soon as enough survivors are drawn.
  for (size_t i = 0; i < pool.size() && static_cast<int>(out.size()) < count;
       ++i) {
    size_t j = i + static_cast<size_t>(rng.Below(pool.size() - i));
    std::swap(pool[i], pool[j]);
    if (!taken.count(pool[i]) && PassesQuality(pool[i], c, d, selected)) {
      taken.insert(pool[i]);
      out.push_back(pool[i]);
    }
  }
  return out;
}

std::vector<Candidate> TherapyEngine::GenerateCandidates(
    Category c, Difficulty d, int count, uint64_t seed,
    const std::set<std::string>& selected,
    std::vector<std::string>* warnings) const {
  std::vector<Candidate> out;
  if (count <= 0) return out;
  std::set<std::string> taken = selected;
  if (generator_ != nullptr) {
    std::string prompt = prompts_.Build(c, d);
    int rejected = 0;
    try {
      for (int i = 0; i < count; ++i) {
        std::string text = Trim(generator_->Generate(
            prompt, config_.at(d).temperature, config_.weights.kappa,
            config_.max_tokens));
        if (PassesQuality(text, c, d, taken)) {
          taken.insert(text);
          out.push_back({text, Origin::kGenerated, {}});
        } else {
          ++rejected;
        }
      }
    } catch (const BridgeError& e) {
      if (warnings) {
        warnings->push_back(std::string("generator bridge unavailable (") +
                            e.what() + "); using templates");
      }
    }
    if (rejected > 0 && warnings) {
      warnings->push_back(std::string(CategoryKey(c)) + ": " +
                          std::to_string(rejected) +
                          " generated sentence(s) rejected by the quality "
                          "filter; padded from templates");
    }
  }
  int missing = count - static_cast<int>(out.size());
  for (auto& s : TemplateCandidates(c, d, missing, seed, taken)) {
    out.push_back({std::move(s), Origin::kTemplate, {}});
  }
  return out;
}

ScoreBreakdown TherapyEngine::Score(const std::string& sentence, Category c,
                                    Difficulty d,
                                    const HistoryView& history) const {
  const TherapyWeights& w = config_.weights;
  G2pResult g2p = GraphemesToPhonemes(lexicon_, sentence);
  ScoreBreakdown s;
  s.relevance =
      Relevance(g2p.phonemes, analysis_.at(c), w.lambda_rel[Index(c)], w.eta);
  s.difficulty =
      DifficultyAlignment(SentenceComplexity(g2p, w.alpha_cx), config_.at(d));
  s.personalization = Personalization(BagOf(g2p.phonemes), history, w.gamma_pers);
  s.total = TotalScore(s, w.omega);
  return s;
}

std::vector<std::string> TherapyEngine::TargetsIn(const std::string& sentence,
                                                  Category c) const {
  G2pResult g2p = GraphemesToPhonemes(lexicon_, sentence);
  const CategoryConfig& cfg = analysis_.at(c);
  std::array<bool, kNumPhonemes> seen{};
  for (size_t i = 0; i < g2p.phonemes.size(); ++i) {
    if (InCategoryContext(cfg, g2p.phonemes, i)) {
      seen[PhonemeIndex(g2p.phonemes[i])] = true;
    }
  }
  std::vector<std::string> out;
  for (int i = 0; i < kNumPhonemes; ++i) {
    if (seen[i]) out.emplace_back(PhonemeInventory()[i]);
  }
  return out;
}

Exercise TherapyEngine::Select(Category c, Difficulty d,
                               const HistoryView& history, uint64_t seed,
                               const std::set<std::string>& selected,
                               std::vector<std::string>* warnings) const {
  auto candidates = GenerateCandidates(c, d, config_.candidate_count, seed,
                                       selected, warnings);
  for (auto& cand : candidates) cand.score = Score(cand.sentence, c, d, history);
  const Candidate& best = candidates[SelectBest(candidates)];
  Exercise e;
  e.sentence = best.sentence;
  e.category = c;
  e.difficulty = d;
  e.target_phonemes = TargetsIn(best.sentence, c);
  e.score = best.score;
  e.origin = best.origin;
  e.prompt = prompts_.Build(c, d);
  e.description = prompts_.Instruction(c) +
                  " Read the sentence aloud slowly, then at normal speed.";
  return e;
}

}  // namespace spikevox
