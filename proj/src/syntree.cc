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

#include "kouzen/syntree.h"

#include <algorithm>
#include <set>

#include "kouzen/error.h"
#include "kouzen/text.h"

namespace kouzen {

namespace {

// Label used for leaves inserted by quoted template literals.
constexpr const char* kInsertedLabel = "INS";

struct BracketParser {
  std::string_view text;
  size_t pos = 0;

  void SkipSpace() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r')) {
      ++pos;
    }
  }

  [[noreturn]] void Fail(const std::string& why, size_t at) const {
    throw ParseError(why + " at offset " + std::to_string(at));
  }

  std::string Atom() {
    const size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\n' &&
           text[pos] != '\r') {
      ++pos;
    }
    if (pos == start) Fail("expected symbol", start);
    return std::string(text.substr(start, pos - start));
  }

  ParseTree Node() {
    SkipSpace();
    if (pos >= text.size() || text[pos] != '(') Fail("expected '('", pos);
    const size_t open = pos++;
    SkipSpace();
    ParseTree node;
    node.label = Atom();
    std::vector<std::string> terminals;
    while (true) {
      SkipSpace();
      if (pos >= text.size()) Fail("unbalanced brackets", open);
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == '(') {
        node.children.push_back(Node());
      } else {
        terminals.push_back(Atom());
      }
    }
    if (!terminals.empty() && !node.children.empty()) {
      throw DataError("node " + node.label +
                      " mixes terminals and children at offset " +
                      std::to_string(open));
    }
    if (terminals.size() > 1) {
      throw DataError("node " + node.label +
                      " has multiple terminals at offset " +
                      std::to_string(open));
    }
    if (terminals.empty() && node.children.empty()) {
      throw DataError("empty node " + node.label + " at offset " +
                      std::to_string(open));
    }
    if (!terminals.empty()) node.terminal = terminals.front();
    return node;
  }
};

std::string_view BaseLabel(std::string_view label) {
  const size_t hash = label.find('#');
  return hash == std::string_view::npos ? label : label.substr(0, hash);
}

// A rule symbol with an explicit feature matches exactly; a bare symbol
// matches any feature variant of the same base label.
bool LabelMatches(std::string_view rule_symbol, std::string_view node_label) {
  if (rule_symbol.find('#') != std::string_view::npos) {
    return rule_symbol == node_label;
  }
  return rule_symbol == BaseLabel(node_label);
}

struct Binding {
  const SyntaxPatternElem* elem = nullptr;
  std::vector<const ParseTree*> nodes;  // one node, or the wildcard's span
};

bool MatchChildren(const SyntaxRule& rule, const std::vector<ParseTree>& kids,
                   std::vector<Binding>* bindings) {
  const auto& pattern = rule.pattern;
  const bool has_wildcard = !pattern.empty() && pattern.back().wildcard;
  const size_t fixed = pattern.size() - (has_wildcard ? 1 : 0);
  if (has_wildcard ? kids.size() < fixed : kids.size() != fixed) return false;
  for (size_t i = 0; i < fixed; ++i) {
    if (!LabelMatches(pattern[i].symbol, kids[i].label)) return false;
  }
  bindings->clear();
  for (size_t i = 0; i < fixed; ++i) {
    bindings->push_back(Binding{&pattern[i], {&kids[i]}});
  }
  if (has_wildcard) {
    Binding rest{&pattern.back(), {}};
    for (size_t i = fixed; i < kids.size(); ++i) rest.nodes.push_back(&kids[i]);
    bindings->push_back(std::move(rest));
  }
  return true;
}

void Transform(const SyntaxRuleSet& rules, ParseTree* node) {
  if (node->IsLeaf()) {
    auto it = rules.lexicon.find(node->terminal);
    if (it != rules.lexicon.end()) node->terminal = it->second;
    return;
  }
  std::vector<Binding> bindings;
  for (const SyntaxRule& rule : rules.rules) {
    if (!LabelMatches(rule.parent, node->label)) continue;
    if (!MatchChildren(rule, node->children, &bindings)) continue;
    std::vector<ParseTree> rebuilt;
    for (const SyntaxTemplateElem& elem : rule.output) {
      if (elem.is_literal) {
        ParseTree leaf;
        leaf.label = kInsertedLabel;
        leaf.terminal = elem.text;
        rebuilt.push_back(std::move(leaf));
        continue;
      }
      for (const Binding& b : bindings) {
        if (b.elem->var != elem.text) continue;
        for (const ParseTree* bound : b.nodes) rebuilt.push_back(*bound);
        break;
      }
    }
    node->children = std::move(rebuilt);
    break;  // one rule per node per pass
  }
  for (ParseTree& child : node->children) Transform(rules, &child);
}

}  // namespace

ParseTree ParseBracketed(std::string_view text) {
  BracketParser parser{Nfc(text)};
  ParseTree root = parser.Node();
  parser.SkipSpace();
  if (parser.pos != parser.text.size()) {
    throw ParseError("trailing content after tree at offset " +
                     std::to_string(parser.pos));
  }
  return root;
}

std::vector<ParseTree> LoadTreebank(const std::string& path) {
  std::vector<ParseTree> trees;
  const std::vector<std::string> lines = SplitLines(ReadFile(path));
  for (size_t i = 0; i < lines.size(); ++i) {
    bool blank = true;
    for (char c : lines[i]) {
      if (c != ' ' && c != '\t') blank = false;
    }
    if (blank) continue;
    try {
      trees.push_back(ParseBracketed(lines[i]));
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(i + 1) + " of " + path + ": " +
                       e.what());
    }
  }
  return trees;
}

std::string Render(const ParseTree& tree) {
  std::string out = "(" + tree.label;
  if (tree.IsLeaf()) {
    out += " " + tree.terminal;
  } else {
    for (const ParseTree& child : tree.children) out += " " + Render(child);
  }
  out += ")";
  return out;
}

std::vector<std::string> TreeYield(const ParseTree& tree) {
  std::vector<std::string> yield;
  if (tree.IsLeaf()) {
    yield.push_back(tree.terminal);
    return yield;
  }
  for (const ParseTree& child : tree.children) {
    std::vector<std::string> sub = TreeYield(child);
    yield.insert(yield.end(), sub.begin(), sub.end());
  }
  return yield;
}

SyntaxRuleSet ParseSyntaxRules(std::string_view text) {
  SyntaxRuleSet set;
  const std::vector<std::string> lines = SplitLines(Nfc(text));
  int index = 0;
  for (size_t lineno = 1; lineno <= lines.size(); ++lineno) {
    const std::string& line = lines[lineno - 1];
    std::string stripped;
    for (char c : line) {
      if (!stripped.empty() || (c != ' ' && c != '\t')) stripped += c;
    }
    while (!stripped.empty() && (stripped.back() == ' ' || stripped.back() == '\t')) {
      stripped.pop_back();
    }
    if (stripped.empty() || stripped[0] == '#') continue;

    auto fail = [&](const std::string& why) -> void {
      throw ParseError("line " + std::to_string(lineno) + ": " + why + ": \"" +
                       line + "\"");
    };

    const size_t colon = stripped.find(": ");
    const size_t arrow = stripped.find(" => ");
    if (colon == std::string::npos || arrow == std::string::npos ||
        arrow < colon) {
      fail("expected `PARENT: CHILD=var ... => template`");
    }
    SyntaxRule rule;
    rule.index = index++;
    rule.line = static_cast<int>(lineno);
    rule.parent = stripped.substr(0, colon);
    if (rule.parent.empty()) fail("empty parent label");

    std::set<std::string> bound;
    for (const std::string& item :
         SplitWhitespace(stripped.substr(colon + 2, arrow - colon - 2))) {
      const size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
        fail("child pattern entries take the form LABEL=var");
      }
      SyntaxPatternElem elem;
      elem.symbol = item.substr(0, eq);
      elem.var = item.substr(eq + 1);
      elem.wildcard = elem.symbol == "*";
      if (!bound.insert(elem.var).second) fail("duplicate variable " + elem.var);
      if (!rule.pattern.empty() && rule.pattern.back().wildcard) {
        fail("wildcard must be the last pattern entry");
      }
      rule.pattern.push_back(std::move(elem));
    }
    if (rule.pattern.empty()) fail("empty child pattern");

    std::set<std::string> used;
    for (const std::string& item : SplitWhitespace(stripped.substr(arrow + 4))) {
      SyntaxTemplateElem elem;
      if (item.size() >= 2 && item.front() == '"' && item.back() == '"') {
        elem.is_literal = true;
        elem.text = item.substr(1, item.size() - 2);
        if (elem.text.empty()) fail("empty literal insertion");
      } else {
        elem.text = item;
        if (bound.find(item) == bound.end()) {
          fail("template variable " + item + " is not bound");
        }
        if (!used.insert(item).second) {
          fail("template uses variable " + item + " twice");
        }
      }
      rule.output.push_back(std::move(elem));
    }
    set.rules.push_back(std::move(rule));
  }
  return set;
}

SyntaxRuleSet LoadSyntaxRules(const std::string& path) {
  return ParseSyntaxRules(ReadFile(path));
}

void LoadSyntaxLexicon(const std::string& path, SyntaxRuleSet* rules) {
  const std::vector<std::string> lines = SplitLines(Nfc(ReadFile(path)));
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw ParseError("line " + std::to_string(i + 1) + " of " + path +
                       ": expected `token<TAB>token`");
    }
    rules->lexicon[line.substr(0, tab)] = line.substr(tab + 1);
  }
}

ParseTree ApplyTreeRules(const SyntaxRuleSet& rules, const ParseTree& tree) {
  ParseTree out = tree;
  Transform(rules, &out);
  return out;
}

MonoCorpus TransformTreebank(const SyntaxRuleSet& rules,
                             const std::vector<ParseTree>& trees,
                             const std::string& lang) {
  MonoCorpus corpus;
  corpus.lang = lang;
  corpus.sentences.reserve(trees.size());
  for (const ParseTree& tree : trees) {
    Sentence s;
    s.tokens = TreeYield(ApplyTreeRules(rules, tree));
    s.text = JoinTokens(s.tokens);
    corpus.sentences.push_back(std::move(s));
  }
  return corpus;
}

}  // namespace kouzen
