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
// Ordered, context-sensitive string rewriting, used both for
// orthographic conversion between related languages and for
// grapheme-to-phoneme conversion.
//
// Rule-file format (UTF-8, line-oriented):
//
//   # comment
//   ::V:: = a e i o u            class definition (members may be
//                                multi-character)
//   ou -> w / _ ::V::            rule with a right context
//   é -> e                       unconditional rule
//   h -> 0 / # _                 `0` is the empty replacement; `#` in a
//                                context is a token-boundary anchor
//
// Fields are separated by single spaces around `->`, `/` and `_`.
// Patterns and contexts may concatenate literals and `::NAME::`
// references. File order is rule priority.
//
// Application semantics: one left-to-right scan over the input. At each
// position the engine fires the rule whose pattern makes the longest
// match with satisfied contexts; among equal lengths the lowest file
// index wins. The cursor then advances past the matched span, so
// replacement output is never rescanned (no cascading within a call).
// Contexts are checked against the original input, and unmatched
// characters copy through unchanged.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kouzen/corpus.h"

namespace kouzen {

struct CharClass {
  std::string name;
  std::vector<std::u32string> members;  // sorted by length, longest first
};

struct RuleElem {
  bool is_class = false;
  std::u32string literal;  // when !is_class
  size_t class_index = 0;  // when is_class
};

// A context is either the token-boundary anchor `#` or a concatenation
// of literals and class references. An absent context always matches.
struct ContextExpr {
  bool boundary = false;
  std::vector<RuleElem> elems;
};

struct RewriteRule {
  std::vector<RuleElem> pattern;  // non-empty
  std::u32string replacement;    // may be empty
  std::optional<ContextExpr> left;
  std::optional<ContextExpr> right;
  int index = 0;  // file order, unique
  int line = 0;   // 1-based source line, for diagnostics
};

struct RewriteRuleSet {
  std::vector<CharClass> classes;
  std::vector<RewriteRule> rules;
  std::string source_lang;    // direction label, informational
  std::string target_script;  // e.g. "hat" or "ipa"
};

struct RewriteStats {
  uint64_t rules_fired = 0;
  uint64_t chars_replaced = 0;  // input codepoints consumed by rules
  uint64_t chars_passed = 0;    // input codepoints copied through
  uint64_t tokens = 0;

  void Add(const RewriteStats& other) {
    rules_fired += other.rules_fired;
    chars_replaced += other.chars_replaced;
    chars_passed += other.chars_passed;
    tokens += other.tokens;
  }
};

// Parses rule-file text. Class definitions are collected first, so they
// may appear anywhere; rule priority is rule order only. Throws
// ParseError (malformed line, with line number and offending text) or
// DataError (undefined class reference, duplicate class name).
RewriteRuleSet ParseRuleFile(std::string_view text,
                             std::string source_lang = "",
                             std::string target_script = "");

RewriteRuleSet LoadRuleFile(const std::string& path,
                            std::string source_lang = "",
                            std::string target_script = "");

// Raw engine application; case-sensitive, `#` matches string edges and
// positions adjacent to whitespace. Total on valid rule sets.
std::string ApplyRules(const RewriteRuleSet& rules, std::string_view input,
                       RewriteStats* stats = nullptr);

// Token-level application with the casing convention: the token is
// lowercased before matching and an initial capital is restored on the
// output. Rule files are written in lowercase.
std::string ApplyToken(const RewriteRuleSet& rules, std::string_view token,
                       RewriteStats* stats = nullptr);

// Grapheme-to-phoneme conversion: lowercases like ApplyToken but does
// not restore capitals (IPA has none). Requires target_script "ipa"
// when the rule set declares one; throws DomainError otherwise.
std::string G2p(const RewriteRuleSet& rules, std::string_view word,
                RewriteStats* stats = nullptr);

// Per-token transliteration of whole corpora; alignment and order are
// preserved and the output provenance is `transformed`. Tokens whose
// rewrite comes out empty are dropped from the sentence.
MonoCorpus Transliterate(const RewriteRuleSet& rules, const MonoCorpus& corpus,
                         RewriteStats* stats = nullptr, int jobs = 1);

enum class Side { kSource, kTarget };

ParallelCorpus Transliterate(const RewriteRuleSet& rules,
                             const ParallelCorpus& corpus, Side side,
                             RewriteStats* stats = nullptr, int jobs = 1);

// One sentence: ApplyToken per token, empty results dropped.
Sentence TransliterateSentence(const RewriteRuleSet& rules,
                               const Sentence& sentence,
                               RewriteStats* stats = nullptr);

}  // namespace kouzen
