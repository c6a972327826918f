#!/usr/bin/env python3
# Copyright (c) 2026 The SpikeVox Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rebuilds assets/lexicon/lexicon.txt.

Inputs:
  --cmudict   cmudict.dict from the CMU Pronouncing Dictionary (the
              `cmudict` PyPI package ships it under cmudict/data/).
  --wordlist  English words ordered by frequency, one per line (we used the
              wordfreq "small_en" list).
  --extra     text files whose words must also be covered (the template
              corpus, fixtures).

The first pronunciation of each word is kept and stress digits are removed.
"""

import argparse
import re
import sys

WORD = re.compile(r"^[a-z]+('[a-z]+)?$")


def load_cmudict(path):
    entries = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            word, *phones = line.split()
            if "(" in word:
                continue
            entries[word] = [re.sub(r"\d", "", p) for p in phones]
    return entries


def words_in(path):
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.startswith("#"):
                continue
            text = line.split("\t")[-1]
            for token in re.split(r"[\s\-]+", text):
                token = token.strip(".,!?;:\"").lower()
                if token:
                    out.append(token)
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cmudict", required=True)
    parser.add_argument("--wordlist", required=True)
    parser.add_argument("--extra", nargs="*", default=[])
    parser.add_argument("--size", type=int, default=5000)
    parser.add_argument("--out", required=True)
    args = parser.parse_args()

    cmu = load_cmudict(args.cmudict)
    chosen = []
    seen = set()
    with open(args.wordlist, encoding="utf-8") as f:
        for line in f:
            w = line.strip().lower()
            if len(chosen) >= args.size:
                break
            if WORD.match(w) and w in cmu and w not in seen:
                chosen.append(w)
                seen.add(w)

    missing = []
    for path in args.extra:
        for w in words_in(path):
            if w in seen:
                continue
            if w not in cmu:
                missing.append(w)
                continue
            chosen.append(w)
            seen.add(w)
    if missing:
        print("not in cmudict: " + " ".join(sorted(set(missing))),
              file=sys.stderr)
        return 1

    with open(args.out, "w", encoding="utf-8") as f:
        f.write("# Pronunciation lexicon: WORD PHONEME...\n")
        f.write("# Derived from the CMU Pronouncing Dictionary "
                "(see LICENSE.cmudict); stress markers removed.\n")
        for w in sorted(chosen):
            f.write(w.upper() + " " + " ".join(cmu[w]) + "\n")
    print(f"wrote {len(chosen)} entries to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
