// Copyright 2026 The kouzen Authors
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
//
// Lexicon-based code-switching: replace whole tokens of the
// high-resource side with their low-resource translations, so that
// augmentation text comes to resemble the low-resource orthography.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kouzen/corpus.h"

namespace kouzen {

struct CodeSwitchLexicon {
  std::string name;
  // Keys are case-folded; values keep their case.
  std::unordered_map<std::string, std::string> entries;
};

// TSV `hrl<TAB>lrl` per line, `#` comment lines allowed. Duplicate keys
// (after case folding) are an error naming the token and both lines.
CodeSwitchLexicon ParseLexicon(std::string_view text, std::string name = "");
CodeSwitchLexicon LoadLexicon(const std::string& path);

struct CodeSwitchStats {
  uint64_t tokens_seen = 0;
  uint64_t matched = 0;
  uint64_t replaced = 0;
};

struct CodeSwitchOptions {
  double rate = 1.0;  // per-match replacement probability, in [0,1]
  uint64_t seed = 0;
  // Detach trailing punctuation before matching and reattach it after.
  bool strip_punct = false;
  int jobs = 1;
};

// Per token: if the case-folded form is a lexicon key, replace with
// probability `rate`; an initial capital is restored on the
// replacement. Seeding is per sentence (seed mixed with the sentence
// index), so serial and parallel runs agree. Token counts are
// preserved. Throws DomainError when rate is outside [0,1].
std::vector<Sentence> ApplyCodeSwitch(const CodeSwitchLexicon& lexicon,
                                      const std::vector<Sentence>& sentences,
                                      const CodeSwitchOptions& options,
                                      CodeSwitchStats* stats = nullptr);

}  // namespace kouzen
