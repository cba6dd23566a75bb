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
// Bracketed constituency trees plus label-matched child rewriting:
// reordering, literal-token insertion, omission, and an optional leaf
// lexicon. Parsing of raw sentences into trees is out of scope; trees
// arrive pre-parsed, one per line in PTB-style bracket notation.
//
// Syntax rule file (UTF-8, line-oriented, `#` full-line comments):
//
//   NP: D=d N=n => n d
//   VP#imp: V=v *=rest => "té" v rest
//
// The child pattern must match the node's entire child sequence; the
// trailing wildcard `*=var` binds zero or more remaining children. A
// label written with `#feat` matches exactly; a bare label matches any
// feature variant. Template variables splice the bound child (or the
// wildcard's children), quoted literals insert a fresh leaf labeled
// `INS`. One rule (the first that matches, by file order) fires per
// node in a single top-down pass; children are then recursed into, and
// leaf tokens pass through the lexicon last.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kouzen/corpus.h"

namespace kouzen {

struct ParseTree {
  std::string label;
  std::vector<ParseTree> children;  // internal node when non-empty
  std::string terminal;             // leaf token otherwise

  bool IsLeaf() const { return children.empty(); }
};

// Throws ParseError with a character offset on unbalanced brackets, and
// DataError on structurally empty or mixed nodes.
ParseTree ParseBracketed(std::string_view text);

// One tree per line; blank lines are skipped.
std::vector<ParseTree> LoadTreebank(const std::string& path);

// Canonical single-space bracket rendering.
std::string Render(const ParseTree& tree);

// Leaf tokens, left to right.
std::vector<std::string> TreeYield(const ParseTree& tree);

struct SyntaxPatternElem {
  std::string symbol;  // label, optionally LABEL#feat; "*" for wildcard
  std::string var;
  bool wildcard = false;
};

struct SyntaxTemplateElem {
  bool is_literal = false;
  std::string text;  // variable name, or the literal token
};

struct SyntaxRule {
  std::string parent;
  std::vector<SyntaxPatternElem> pattern;
  std::vector<SyntaxTemplateElem> output;
  int index = 0;
  int line = 0;
};

struct SyntaxRuleSet {
  std::vector<SyntaxRule> rules;
  std::map<std::string, std::string> lexicon;  // exact token -> token
};

SyntaxRuleSet ParseSyntaxRules(std::string_view text);
SyntaxRuleSet LoadSyntaxRules(const std::string& path);

// `hrl<TAB>lrl` per line, merged into an existing rule set.
void LoadSyntaxLexicon(const std::string& path, SyntaxRuleSet* rules);

ParseTree ApplyTreeRules(const SyntaxRuleSet& rules, const ParseTree& tree);

// Transform every tree, flatten to yields, keep order.
MonoCorpus TransformTreebank(const SyntaxRuleSet& rules,
                             const std::vector<ParseTree>& trees,
                             const std::string& lang);

}  // namespace kouzen
