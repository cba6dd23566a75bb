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

#include "kouzen/codeswitch.h"

#include <map>

#include "kouzen/error.h"
#include "kouzen/parallel.h"
#include "kouzen/rng.h"
#include "kouzen/text.h"

namespace kouzen {

CodeSwitchLexicon ParseLexicon(std::string_view text, std::string name) {
  CodeSwitchLexicon lexicon;
  lexicon.name = std::move(name);
  std::map<std::string, size_t> first_line;
  const std::vector<std::string> lines = SplitLines(Nfc(text));
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw ParseError("line " + std::to_string(i + 1) +
                       ": expected `hrl<TAB>lrl`: \"" + line + "\"");
    }
    const std::string key = FoldCase(line.substr(0, tab));
    const std::string value = line.substr(tab + 1);
    auto [it, inserted] = first_line.emplace(key, i + 1);
    if (!inserted) {
      throw DataError("duplicate key \"" + key + "\" at lines " +
                      std::to_string(it->second) + " and " +
                      std::to_string(i + 1));
    }
    lexicon.entries.emplace(key, value);
  }
  return lexicon;
}

CodeSwitchLexicon LoadLexicon(const std::string& path) {
  return ParseLexicon(ReadFile(path), path);
}

namespace {

// Splits a token into (core, trailing punctuation run).
std::pair<std::string, std::string> DetachTrailingPunct(
    const std::string& token) {
  const std::u32string cps = DecodeUtf8(token);
  size_t core_len = cps.size();
  while (core_len > 0 && IsPunct(cps[core_len - 1])) --core_len;
  if (core_len == cps.size()) return {token, ""};
  return {EncodeUtf8(std::u32string_view(cps).substr(0, core_len)),
          EncodeUtf8(std::u32string_view(cps).substr(core_len))};
}

}  // namespace

std::vector<Sentence> ApplyCodeSwitch(const CodeSwitchLexicon& lexicon,
                                      const std::vector<Sentence>& sentences,
                                      const CodeSwitchOptions& options,
                                      CodeSwitchStats* stats) {
  if (options.rate < 0.0 || options.rate > 1.0) {
    throw DomainError("rate must lie in [0,1], got " +
                      std::to_string(options.rate));
  }
  std::vector<Sentence> out(sentences.size());
  std::vector<CodeSwitchStats> per_line(sentences.size());
  ParallelFor(sentences.size(), options.jobs, [&](size_t i) {
    SplitMix64 rng(MixSeed(options.seed, i));
    CodeSwitchStats& st = per_line[i];
    Sentence result;
    result.tokens.reserve(sentences[i].tokens.size());
    for (const std::string& token : sentences[i].tokens) {
      ++st.tokens_seen;
      std::string core = token;
      std::string punct;
      if (options.strip_punct) {
        std::tie(core, punct) = DetachTrailingPunct(token);
      }
      auto it = core.empty() ? lexicon.entries.end()
                             : lexicon.entries.find(FoldCase(core));
      if (it == lexicon.entries.end()) {
        result.tokens.push_back(token);
        continue;
      }
      ++st.matched;
      // The draw happens only for matched tokens, so the replaced set
      // is a deterministic subset of the matched set for any rate.
      if (rng.NextDouble() < options.rate) {
        ++st.replaced;
        result.tokens.push_back(MatchInitialCapital(core, it->second) + punct);
      } else {
        result.tokens.push_back(token);
      }
    }
    result.text = JoinTokens(result.tokens);
    out[i] = std::move(result);
  });
  if (stats) {
    for (const CodeSwitchStats& st : per_line) {
      stats->tokens_seen += st.tokens_seen;
      stats->matched += st.matched;
      stats->replaced += st.replaced;
    }
  }
  return out;
}

}  // namespace kouzen
