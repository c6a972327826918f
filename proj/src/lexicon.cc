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

#include "spikevox/lexicon.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "spikevox/common.h"
#include "spikevox/phoneme.h"

namespace spikevox {

namespace {

struct Rule {
  std::string_view graphemes;
  std::vector<std::string> phonemes;
};

// Longest match wins; within one length the first listed rule wins.
const std::vector<Rule>& MultiLetterRules() {
  static const std::vector<Rule> rules = {
      {"TCH", {"CH"}},     {"CH", {"CH"}},      {"SH", {"SH"}},
      {"TH", {"TH"}},      {"PH", {"F"}},       {"WH", {"W"}},
      {"CK", {"K"}},       {"NG", {"NG"}},      {"QU", {"K", "W"}},
      {"EE", {"IY"}},      {"EA", {"IY"}},      {"OO", {"UW"}},
      {"OU", {"AW"}},      {"OI", {"OY"}},      {"OY", {"OY"}},
      {"AI", {"EY"}},      {"AY", {"EY"}},      {"AR", {"AA", "R"}},
      {"ER", {"ER"}},      {"IR", {"ER"}},      {"UR", {"ER"}},
      {"OR", {"AO", "R"}},
  };
  return rules;
}

bool IsVowelLetter(char c) {
  return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U';
}

void SingleLetter(const std::string& w, size_t i,
                  std::vector<std::string>* out) {
  char c = w[i];
  char next = i + 1 < w.size() ? w[i + 1] : '\0';
  switch (c) {
    case 'A': out->push_back("AE"); break;
    case 'B': out->push_back("B"); break;
    case 'C':
      out->push_back(next == 'E' || next == 'I' || next == 'Y' ? "S" : "K");
      break;
    case 'D': out->push_back("D"); break;
    case 'E':
      // Silent final E.
      if (!(i + 1 == w.size() && i >= 2)) out->push_back("EH");
      break;
    case 'F': out->push_back("F"); break;
    case 'G': out->push_back("G"); break;
    case 'H': out->push_back("HH"); break;
    case 'I': out->push_back("IH"); break;
    case 'J': out->push_back("JH"); break;
    case 'K': out->push_back("K"); break;
    case 'L': out->push_back("L"); break;
    case 'M': out->push_back("M"); break;
    case 'N': out->push_back("N"); break;
    case 'O': out->push_back("AA"); break;
    case 'P': out->push_back("P"); break;
    case 'Q': out->push_back("K"); break;
    case 'R': out->push_back("R"); break;
    case 'S': out->push_back("S"); break;
    case 'T': out->push_back("T"); break;
    case 'U': out->push_back("AH"); break;
    case 'V': out->push_back("V"); break;
    case 'W': out->push_back("W"); break;
    case 'X':
      out->push_back("K");
      out->push_back("S");
      break;
    case 'Y':
      if (i == 0 && IsVowelLetter(next)) {
        out->push_back("Y");
      } else if (i + 1 == w.size()) {
        out->push_back("IY");
      } else {
        out->push_back("IH");
      }
      break;
    case 'Z': out->push_back("Z"); break;
    default: break;
  }
}

bool IsTerminalPunct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' ||
         c == ':';
}

}  // namespace

Lexicon Lexicon::Load(const std::string& path) {
  return FromText(ReadFile(path));
}

Lexicon Lexicon::FromText(std::string_view text) {
  Lexicon lex;
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitWhitespace(line);
    if (fields.size() < 2) {
      throw ConfigError("lexicon line " + std::to_string(line_no) +
                        ": expected WORD PHONEME...");
    }
    std::vector<std::string> phones(fields.begin() + 1, fields.end());
    for (const auto& p : phones) {
      if (!IsPhoneme(p)) {
        throw ConfigError("lexicon line " + std::to_string(line_no) +
                          ": unknown phoneme " + p);
      }
    }
    lex.Add(ToUpper(fields[0]), std::move(phones));
  }
  std::sort(lex.words_.begin(), lex.words_.end());
  return lex;
}

void Lexicon::Add(const std::string& word, std::vector<std::string> phonemes) {
  auto [it, inserted] = table_.emplace(word, std::move(phonemes));
  if (inserted) {
    auto pos = std::lower_bound(words_.begin(), words_.end(), word);
    words_.insert(pos, word);
  }
}

const std::vector<std::string>* Lexicon::Lookup(const std::string& word) const {
  auto it = table_.find(word);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<std::string> LetterRules(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      w.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  std::vector<std::string> out;
  size_t i = 0;
  while (i < w.size()) {
    // Doubled consonant letters sound once.
    if (i > 0 && w[i] == w[i - 1] && !IsVowelLetter(w[i])) {
      ++i;
      continue;
    }
    const Rule* best = nullptr;
    for (const auto& r : MultiLetterRules()) {
      if (w.compare(i, r.graphemes.size(), r.graphemes) == 0 &&
          (best == nullptr || r.graphemes.size() > best->graphemes.size())) {
        best = &r;
      }
    }
    if (best != nullptr) {
      out.insert(out.end(), best->phonemes.begin(), best->phonemes.end());
      i += best->graphemes.size();
    } else {
      SingleLetter(w, i, &out);
      ++i;
    }
  }
  return out;
}

std::vector<std::string> TokenizeWords(std::string_view text) {
  std::string spaced(text);
  std::replace(spaced.begin(), spaced.end(), '-', ' ');
  std::vector<std::string> out;
  for (auto& tok : SplitWhitespace(spaced)) {
    size_t b = 0, e = tok.size();
    while (b < e && IsTerminalPunct(tok[b])) ++b;
    while (e > b && IsTerminalPunct(tok[e - 1])) --e;
    if (e > b) out.push_back(ToUpper(tok.substr(b, e - b)));
  }
  return out;
}

G2pResult GraphemesToPhonemes(const Lexicon& lexicon, std::string_view text) {
  G2pResult result;
  for (const auto& tok : TokenizeWords(text)) {
    std::vector<std::string> phones;
    std::string clean;
    for (char c : tok) {
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '\'') {
        clean.push_back(c);
      } else {
        result.warning = true;
      }
    }
    if (const auto* hit = lexicon.Lookup(clean)) {
      phones = *hit;
    } else {
      if (clean.find_first_not_of('\'') == std::string::npos) continue;
      phones = LetterRules(clean);
      result.fallback = true;
    }
    result.words.push_back(clean);
    result.phonemes.insert(result.phonemes.end(), phones.begin(), phones.end());
    result.word_phonemes.push_back(std::move(phones));
  }
  return result;
}

}  // namespace spikevox
