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

#include "kouzen/translit.h"

#include <algorithm>
#include <unordered_map>

#include "kouzen/error.h"
#include "kouzen/parallel.h"
#include "kouzen/text.h"

namespace kouzen {

namespace {

std::vector<std::string> SplitSingleSpaces(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ' ') {
      if (!current.empty()) fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) fields.push_back(current);
  return fields;
}

class RuleParser {
 public:
  explicit RuleParser(std::string_view text) : lines_(SplitLines(Nfc(text))) {}

  RewriteRuleSet Parse(std::string source_lang, std::string target_script) {
    RewriteRuleSet set;
    set.source_lang = std::move(source_lang);
    set.target_script = std::move(target_script);

    // Classes first, so rules may reference a class defined below them.
    for (size_t i = 0; i < lines_.size(); ++i) {
      const std::string& line = lines_[i];
      if (IsBlankOrComment(line)) continue;
      if (line.rfind("::", 0) == 0) ParseClassLine(line, i + 1, &set);
    }
    for (const CharClass& cls : set.classes) {
      class_index_[cls.name] = &cls - set.classes.data();
    }

    int index = 0;
    for (size_t i = 0; i < lines_.size(); ++i) {
      const std::string& line = lines_[i];
      if (IsBlankOrComment(line) || line.rfind("::", 0) == 0) continue;
      set.rules.push_back(ParseRuleLine(line, i + 1, index++, set));
    }
    return set;
  }

 private:
  static bool IsBlankOrComment(const std::string& line) {
    for (char c : line) {
      if (c == ' ' || c == '\t') continue;
      return c == '#';
    }
    return true;
  }

  [[noreturn]] static void Malformed(const std::string& line, size_t lineno,
                                     const std::string& why) {
    throw ParseError("line " + std::to_string(lineno) + ": " + why + ": \"" +
                     line + "\"");
  }

  void ParseClassLine(const std::string& line, size_t lineno,
                      RewriteRuleSet* set) {
    const std::vector<std::string> fields = SplitSingleSpaces(line);
    if (fields.size() < 3 || fields[1] != "=") {
      Malformed(line, lineno, "malformed class definition");
    }
    const std::string& head = fields[0];
    if (head.size() < 5 || head.substr(0, 2) != "::" ||
        head.substr(head.size() - 2) != "::") {
      Malformed(line, lineno, "malformed class name");
    }
    CharClass cls;
    cls.name = head.substr(2, head.size() - 4);
    if (cls.name.empty() || cls.name.find(':') != std::string::npos) {
      Malformed(line, lineno, "malformed class name");
    }
    for (const CharClass& existing : set->classes) {
      if (existing.name == cls.name) {
        throw DataError("line " + std::to_string(lineno) +
                        ": duplicate class ::" + cls.name + "::");
      }
    }
    for (size_t i = 2; i < fields.size(); ++i) {
      cls.members.push_back(DecodeUtf8(fields[i]));
    }
    std::stable_sort(cls.members.begin(), cls.members.end(),
                     [](const std::u32string& a, const std::u32string& b) {
                       return a.size() > b.size();
                     });
    set->classes.push_back(std::move(cls));
  }

  std::vector<RuleElem> ParseElems(const std::string& field,
                                   const std::string& line, size_t lineno) {
    std::vector<RuleElem> elems;
    size_t pos = 0;
    std::u32string literal;
    auto flush = [&] {
      if (!literal.empty()) {
        elems.push_back(RuleElem{false, literal, 0});
        literal.clear();
      }
    };
    while (pos < field.size()) {
      if (field.compare(pos, 2, "::") == 0) {
        const size_t close = field.find("::", pos + 2);
        if (close == std::string::npos) {
          Malformed(line, lineno, "unterminated class reference");
        }
        const std::string name = field.substr(pos + 2, close - pos - 2);
        auto it = class_index_.find(name);
        if (it == class_index_.end()) {
          throw DataError("line " + std::to_string(lineno) +
                          ": undefined class ::" + name + "::");
        }
        flush();
        elems.push_back(RuleElem{true, {}, it->second});
        pos = close + 2;
      } else {
        // Consume one UTF-8 sequence into the literal run.
        size_t next = pos + 1;
        while (next < field.size() &&
               (static_cast<unsigned char>(field[next]) & 0xC0) == 0x80) {
          ++next;
        }
        literal += DecodeUtf8(std::string_view(field).substr(pos, next - pos));
        pos = next;
      }
    }
    flush();
    return elems;
  }

  ContextExpr ParseContext(const std::string& field, const std::string& line,
                           size_t lineno) {
    ContextExpr ctx;
    if (field == "#") {
      ctx.boundary = true;
      return ctx;
    }
    ctx.elems = ParseElems(field, line, lineno);
    if (ctx.elems.empty()) Malformed(line, lineno, "empty context");
    return ctx;
  }

  RewriteRule ParseRuleLine(const std::string& line, size_t lineno, int index,
                            const RewriteRuleSet& set) {
    const std::vector<std::string> fields = SplitSingleSpaces(line);
    // Shape: PATTERN -> REPLACEMENT [/ [LEFT] _ [RIGHT]]
    if (fields.size() < 3 || fields[1] != "->") {
      Malformed(line, lineno, "expected `PATTERN -> REPLACEMENT`");
    }
    RewriteRule rule;
    rule.index = index;
    rule.line = static_cast<int>(lineno);
    rule.pattern = ParseElems(fields[0], line, lineno);
    if (rule.pattern.empty()) Malformed(line, lineno, "empty pattern");
    for (const RuleElem& e : rule.pattern) {
      if (e.is_class && set.classes[e.class_index].members.empty()) {
        Malformed(line, lineno, "class with no members in pattern");
      }
    }
    rule.replacement = fields[2] == "0" ? std::u32string() : DecodeUtf8(fields[2]);

    if (fields.size() > 3) {
      if (fields[3] != "/") Malformed(line, lineno, "expected `/` before context");
      std::vector<std::string> ctx(fields.begin() + 4, fields.end());
      auto slot = std::find(ctx.begin(), ctx.end(), "_");
      if (slot == ctx.end()) Malformed(line, lineno, "context lacks `_`");
      const size_t left_count = static_cast<size_t>(slot - ctx.begin());
      const size_t right_count = ctx.size() - left_count - 1;
      if (left_count > 1 || right_count > 1) {
        Malformed(line, lineno, "context takes at most one expression per side");
      }
      if (left_count == 1) rule.left = ParseContext(ctx[0], line, lineno);
      if (right_count == 1)
        rule.right = ParseContext(ctx[left_count + 1], line, lineno);
    }
    return rule;
  }

  std::vector<std::string> lines_;
  std::unordered_map<std::string, size_t> class_index_;
};

// Collects every end position an element sequence can reach from `pos`,
// trying class members longest-first. The candidate set is tiny (class
// member lengths), so plain recursion is fine.
void ForwardEnds(const std::u32string& text, size_t pos,
                 const std::vector<RuleElem>& elems, size_t elem_idx,
                 const std::vector<CharClass>& classes,
                 std::vector<size_t>* ends) {
  if (elem_idx == elems.size()) {
    ends->push_back(pos);
    return;
  }
  const RuleElem& e = elems[elem_idx];
  if (!e.is_class) {
    if (text.compare(pos, e.literal.size(), e.literal) == 0) {
      ForwardEnds(text, pos + e.literal.size(), elems, elem_idx + 1, classes,
                  ends);
    }
    return;
  }
  for (const std::u32string& m : classes[e.class_index].members) {
    if (text.compare(pos, m.size(), m) == 0) {
      ForwardEnds(text, pos + m.size(), elems, elem_idx + 1, classes, ends);
    }
  }
}

// True when some expansion of `elems` matches ending exactly at `end`.
bool MatchesBackward(const std::u32string& text, size_t end,
                     const std::vector<RuleElem>& elems, size_t elem_count,
                     const std::vector<CharClass>& classes) {
  if (elem_count == 0) return true;
  const RuleElem& e = elems[elem_count - 1];
  if (!e.is_class) {
    const size_t n = e.literal.size();
    if (end < n || text.compare(end - n, n, e.literal) != 0) return false;
    return MatchesBackward(text, end - n, elems, elem_count - 1, classes);
  }
  for (const std::u32string& m : classes[e.class_index].members) {
    const size_t n = m.size();
    if (end >= n && text.compare(end - n, n, m) == 0 &&
        MatchesBackward(text, end - n, elems, elem_count - 1, classes)) {
      return true;
    }
  }
  return false;
}

bool LeftContextOk(const RewriteRuleSet& set, const RewriteRule& rule,
                   const std::u32string& text, size_t pos) {
  if (!rule.left) return true;
  if (rule.left->boundary) return pos == 0 || IsSpace(text[pos - 1]);
  return MatchesBackward(text, pos, rule.left->elems, rule.left->elems.size(),
                         set.classes);
}

bool RightContextOk(const RewriteRuleSet& set, const RewriteRule& rule,
                    const std::u32string& text, size_t end) {
  if (!rule.right) return true;
  if (rule.right->boundary) return end == text.size() || IsSpace(text[end]);
  std::vector<size_t> ends;
  ForwardEnds(text, end, rule.right->elems, 0, set.classes, &ends);
  return !ends.empty();
}

// Longest pattern match for one rule at one position with both contexts
// satisfied; 0 when the rule does not apply here.
size_t RuleMatchLength(const RewriteRuleSet& set, const RewriteRule& rule,
                       const std::u32string& text, size_t pos) {
  if (!LeftContextOk(set, rule, text, pos)) return 0;
  std::vector<size_t> ends;
  ForwardEnds(text, pos, rule.pattern, 0, set.classes, &ends);
  std::sort(ends.begin(), ends.end(), std::greater<size_t>());
  for (size_t end : ends) {
    if (end == pos) continue;  // empty matches never fire
    if (RightContextOk(set, rule, text, end)) return end - pos;
  }
  return 0;
}

std::u32string ApplyToCodepoints(const RewriteRuleSet& set,
                                 const std::u32string& text,
                                 RewriteStats* stats) {
  std::u32string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    size_t best_len = 0;
    const RewriteRule* best = nullptr;
    for (const RewriteRule& rule : set.rules) {
      const size_t len = RuleMatchLength(set, rule, text, pos);
      if (len > best_len) {  // ties keep the lowest index (scan order)
        best_len = len;
        best = &rule;
      }
    }
    if (best == nullptr) {
      out.push_back(text[pos]);
      ++pos;
      if (stats) ++stats->chars_passed;
      continue;
    }
    out += best->replacement;
    pos += best_len;
    if (stats) {
      ++stats->rules_fired;
      stats->chars_replaced += best_len;
    }
  }
  return out;
}

}  // namespace

RewriteRuleSet ParseRuleFile(std::string_view text, std::string source_lang,
                             std::string target_script) {
  return RuleParser(text).Parse(std::move(source_lang),
                                std::move(target_script));
}

RewriteRuleSet LoadRuleFile(const std::string& path, std::string source_lang,
                            std::string target_script) {
  return ParseRuleFile(ReadFile(path), std::move(source_lang),
                       std::move(target_script));
}

std::string ApplyRules(const RewriteRuleSet& rules, std::string_view input,
                       RewriteStats* stats) {
  const std::u32string text = DecodeUtf8(Nfc(input));
  return EncodeUtf8(ApplyToCodepoints(rules, text, stats));
}

std::string ApplyToken(const RewriteRuleSet& rules, std::string_view token,
                       RewriteStats* stats) {
  if (stats) ++stats->tokens;
  std::u32string folded = DecodeUtf8(Nfc(token));
  const bool capitalized = !folded.empty() && IsUpper(folded.front());
  for (char32_t& c : folded) c = ToLower(c);
  std::u32string out = ApplyToCodepoints(rules, folded, stats);
  if (capitalized && !out.empty()) out.front() = ToUpper(out.front());
  return EncodeUtf8(out);
}

std::string G2p(const RewriteRuleSet& rules, std::string_view word,
                RewriteStats* stats) {
  if (!rules.target_script.empty() && rules.target_script != "ipa") {
    throw DomainError("g2p requires a rule set targeting ipa, got " +
                      rules.target_script);
  }
  if (stats) ++stats->tokens;
  std::u32string folded = DecodeUtf8(Nfc(word));
  for (char32_t& c : folded) c = ToLower(c);
  return EncodeUtf8(ApplyToCodepoints(rules, folded, stats));
}

Sentence TransliterateSentence(const RewriteRuleSet& rules,
                               const Sentence& sentence, RewriteStats* stats) {
  Sentence out;
  for (const std::string& token : sentence.tokens) {
    std::string rewritten = ApplyToken(rules, token, stats);
    if (rewritten.empty()) continue;  // rule set deleted the whole token
    out.tokens.push_back(std::move(rewritten));
  }
  out.text = JoinTokens(out.tokens);
  return out;
}

MonoCorpus Transliterate(const RewriteRuleSet& rules, const MonoCorpus& corpus,
                         RewriteStats* stats, int jobs) {
  MonoCorpus out;
  out.lang = corpus.lang;
  out.sentences.resize(corpus.sentences.size());
  std::vector<RewriteStats> per_line(corpus.sentences.size());
  ParallelFor(corpus.sentences.size(), jobs, [&](size_t i) {
    out.sentences[i] =
        TransliterateSentence(rules, corpus.sentences[i], &per_line[i]);
  });
  if (stats) {
    for (const RewriteStats& s : per_line) stats->Add(s);
  }
  return out;
}

ParallelCorpus Transliterate(const RewriteRuleSet& rules,
                             const ParallelCorpus& corpus, Side side,
                             RewriteStats* stats, int jobs) {
  ParallelCorpus out = corpus;
  out.provenance = Provenance::kTransformed;
  std::vector<RewriteStats> per_line(corpus.pairs.size());
  ParallelFor(corpus.pairs.size(), jobs, [&](size_t i) {
    Sentence& slot =
        side == Side::kSource ? out.pairs[i].first : out.pairs[i].second;
    slot = TransliterateSentence(rules, slot, &per_line[i]);
  });
  if (stats) {
    for (const RewriteStats& s : per_line) stats->Add(s);
  }
  return out;
}

}  // namespace kouzen
