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

#include "kouzen/manifest.h"

#include <algorithm>
#include <map>
#include <set>

#include "kouzen/error.h"
#include "kouzen/text.h"

namespace kouzen {

namespace {

struct TomlValue {
  enum class Type { kString, kInt, kBool, kArray };
  Type type = Type::kString;
  std::string str;
  int64_t integer = 0;
  bool boolean = false;
  std::vector<TomlValue> array;
};

struct TomlDoc {
  // Scalar keys by dotted path ("schedule.starts").
  std::map<std::string, TomlValue> values;
  // [[name]] occurrences in file order: (name, local key -> value).
  std::vector<std::pair<std::string, std::map<std::string, TomlValue>>> lists;
};

[[noreturn]] void Fail(size_t lineno, const std::string& why) {
  throw ParseError("manifest line " + std::to_string(lineno) + ": " + why);
}

std::string Strip(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

// Removes a trailing comment that is not inside a string literal.
std::string StripComment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

TomlValue ParseScalar(const std::string& text, size_t lineno) {
  TomlValue v;
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    v.type = TomlValue::Type::kString;
    v.str = text.substr(1, text.size() - 2);
    return v;
  }
  if (text == "true" || text == "false") {
    v.type = TomlValue::Type::kBool;
    v.boolean = text == "true";
    return v;
  }
  if (!text.empty() &&
      (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-')) {
    v.type = TomlValue::Type::kInt;
    try {
      v.integer = std::stoll(text);
    } catch (const std::exception&) {
      Fail(lineno, "bad integer: " + text);
    }
    return v;
  }
  Fail(lineno, "unsupported value: " + text);
}

TomlValue ParseValue(const std::string& text, size_t lineno) {
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') Fail(lineno, "unterminated array");
    TomlValue v;
    v.type = TomlValue::Type::kArray;
    std::string body = text.substr(1, text.size() - 2);
    std::string item;
    bool in_string = false;
    for (char c : body) {
      if (c == '"') in_string = !in_string;
      if (c == ',' && !in_string) {
        if (!Strip(item).empty()) v.array.push_back(ParseScalar(Strip(item), lineno));
        item.clear();
      } else {
        item += c;
      }
    }
    if (!Strip(item).empty()) v.array.push_back(ParseScalar(Strip(item), lineno));
    return v;
  }
  return ParseScalar(text, lineno);
}

TomlDoc ParseToml(std::string_view text) {
  TomlDoc doc;
  std::string section;
  std::map<std::string, TomlValue>* list_target = nullptr;
  const std::vector<std::string> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t lineno = i + 1;
    const std::string line = Strip(StripComment(lines[i]));
    if (line.empty()) continue;
    if (line.size() >= 4 && line.substr(0, 2) == "[[") {
      if (line.substr(line.size() - 2) != "]]") Fail(lineno, "bad [[header]]");
      doc.lists.emplace_back(Strip(line.substr(2, line.size() - 4)),
                             std::map<std::string, TomlValue>{});
      list_target = &doc.lists.back().second;
      section.clear();
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') Fail(lineno, "bad [header]");
      section = Strip(line.substr(1, line.size() - 2));
      if (section.empty()) Fail(lineno, "empty section name");
      list_target = nullptr;
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) Fail(lineno, "expected key = value");
    const std::string key = Strip(line.substr(0, eq));
    if (key.empty()) Fail(lineno, "empty key");
    TomlValue value = ParseValue(Strip(line.substr(eq + 1)), lineno);
    if (list_target != nullptr) {
      (*list_target)[key] = std::move(value);
    } else {
      const std::string path = section.empty() ? key : section + "." + key;
      if (doc.values.count(path)) Fail(lineno, "duplicate key " + path);
      doc.values[path] = std::move(value);
    }
  }
  return doc;
}

std::string GetString(const std::map<std::string, TomlValue>& values,
                      const std::string& key, const std::string& fallback = "") {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  if (it->second.type != TomlValue::Type::kString) {
    throw DataError("manifest key " + key + " must be a string");
  }
  return it->second.str;
}

std::vector<uint64_t> GetIntArray(const std::map<std::string, TomlValue>& values,
                                  const std::string& key) {
  auto it = values.find(key);
  if (it == values.end()) return {};
  if (it->second.type != TomlValue::Type::kArray) {
    throw DataError("manifest key " + key + " must be an array");
  }
  std::vector<uint64_t> out;
  for (const TomlValue& v : it->second.array) {
    if (v.type != TomlValue::Type::kInt || v.integer < 0) {
      throw DataError("manifest key " + key + " must hold non-negative integers");
    }
    out.push_back(static_cast<uint64_t>(v.integer));
  }
  return out;
}

}  // namespace

PipelineManifest ParseManifest(std::string_view text) {
  const TomlDoc doc = ParseToml(text);
  PipelineManifest m;

  auto version = doc.values.find("manifest_version");
  if (version == doc.values.end() ||
      version->second.type != TomlValue::Type::kInt) {
    throw DataError("manifest_version is required");
  }
  m.version = static_cast<int>(version->second.integer);
  if (m.version != 1) {
    throw DataError("unsupported manifest_version " +
                    std::to_string(m.version));
  }
  if (auto it = doc.values.find("seed"); it != doc.values.end()) {
    m.seed = static_cast<uint64_t>(it->second.integer);
  }
  if (auto it = doc.values.find("shuffle"); it != doc.values.end()) {
    m.shuffle = it->second.boolean;
  }

  // Collect [corpora.NAME] and [translators.NAME] sections.
  std::set<std::string> corpus_names, translator_names;
  for (const auto& [path, value] : doc.values) {
    if (path.rfind("corpora.", 0) == 0) {
      const size_t dot = path.find('.', 8);
      if (dot == std::string::npos) throw DataError("bad corpora key " + path);
      corpus_names.insert(path.substr(8, dot - 8));
    } else if (path.rfind("translators.", 0) == 0) {
      const size_t dot = path.find('.', 12);
      if (dot == std::string::npos) {
        throw DataError("bad translators key " + path);
      }
      translator_names.insert(path.substr(12, dot - 12));
    }
  }
  for (const std::string& name : corpus_names) {
    const std::string p = "corpora." + name + ".";
    CorpusSpec spec;
    spec.name = name;
    spec.kind = GetString(doc.values, p + "kind", "bitext");
    spec.source = GetString(doc.values, p + "source");
    spec.target = GetString(doc.values, p + "target");
    spec.path = GetString(doc.values, p + "path");
    spec.source_lang = GetString(doc.values, p + "source_lang");
    spec.target_lang = GetString(doc.values, p + "target_lang");
    spec.lang = GetString(doc.values, p + "lang");
    m.corpora.push_back(std::move(spec));
  }
  for (const std::string& name : translator_names) {
    const std::string p = "translators." + name + ".";
    TranslatorSpec spec;
    spec.name = name;
    spec.kind = GetString(doc.values, p + "kind", "identity");
    spec.from = GetString(doc.values, p + "from");
    spec.to = GetString(doc.values, p + "to");
    spec.translit_rules = GetString(doc.values, p + "translit_rules");
    spec.syntax_rules = GetString(doc.values, p + "syntax_rules");
    spec.command = GetString(doc.values, p + "command");
    spec.url = GetString(doc.values, p + "url");
    m.translators.push_back(std::move(spec));
  }

  if (doc.values.count("schedule.authentic")) {
    ScheduleSpec s;
    s.authentic = GetString(doc.values, "schedule.authentic");
    s.starts = GetIntArray(doc.values, "schedule.starts");
    s.increments = GetIntArray(doc.values, "schedule.increments");
    s.synth_mono_source = GetString(doc.values, "schedule.synth_mono_source");
    s.synth_mono_translator =
        GetString(doc.values, "schedule.synth_mono_translator");
    s.synth_mix1_source = GetString(doc.values, "schedule.synth_mix1_source");
    s.synth_mix1_translator =
        GetString(doc.values, "schedule.synth_mix1_translator");
    s.synth_mix2_source = GetString(doc.values, "schedule.synth_mix2_source");
    s.synth_mix2_first = GetString(doc.values, "schedule.synth_mix2_first");
    s.synth_mix2_second = GetString(doc.values, "schedule.synth_mix2_second");
    m.schedule = std::move(s);
  }

  for (const auto& [name, values] : doc.lists) {
    if (name != "multisource") {
      throw DataError("unknown manifest list [[" + name + "]]");
    }
    MultisourceSpec spec;
    spec.name = GetString(values, "name");
    auto parts = values.find("parts");
    if (parts != values.end()) {
      for (const TomlValue& v : parts->second.array) spec.parts.push_back(v.str);
    }
    if (auto it = values.find("tag_sources"); it != values.end()) {
      spec.tag_sources = it->second.boolean;
    }
    m.multisource.push_back(std::move(spec));
  }
  return m;
}

PipelineManifest LoadManifest(const std::string& path) {
  return ParseManifest(ReadFile(path));
}

void ValidateManifest(const PipelineManifest& m) {
  std::set<std::string> corpora, translators;
  for (const CorpusSpec& c : m.corpora) {
    corpora.insert(c.name);
    if (c.kind == "bitext") {
      if (c.source.empty() || c.target.empty()) {
        throw DataError("corpus " + c.name + " needs source and target paths");
      }
    } else if (c.kind == "tsv") {
      if (c.path.empty()) throw DataError("corpus " + c.name + " needs a path");
    } else if (c.kind == "mono") {
      if (c.path.empty() || c.lang.empty()) {
        throw DataError("corpus " + c.name + " needs path and lang");
      }
    } else {
      throw DataError("corpus " + c.name + " has unknown kind " + c.kind);
    }
  }
  for (const TranslatorSpec& t : m.translators) {
    translators.insert(t.name);
    if (t.kind == "rules") {
      if (t.translit_rules.empty() && t.syntax_rules.empty()) {
        throw DataError("translator " + t.name + " needs rule files");
      }
    } else if (t.kind == "command") {
      if (t.command.empty()) {
        throw DataError("translator " + t.name + " needs a command");
      }
    } else if (t.kind == "http") {
      if (t.url.empty()) throw DataError("translator " + t.name + " needs a url");
    } else if (t.kind != "identity") {
      throw DataError("translator " + t.name + " has unknown kind " + t.kind);
    }
  }

  auto check_corpus = [&](const std::string& name, const std::string& where) {
    if (!name.empty() && !corpora.count(name)) {
      throw DataError(where + " references undeclared corpus " + name);
    }
  };
  auto check_translator = [&](const std::string& name,
                              const std::string& where) {
    if (!name.empty() && !translators.count(name)) {
      throw DataError(where + " references undeclared translator " + name);
    }
  };

  if (m.schedule) {
    const ScheduleSpec& s = *m.schedule;
    if (s.authentic.empty()) throw DataError("schedule needs an authentic corpus");
    check_corpus(s.authentic, "schedule");
    check_corpus(s.synth_mono_source, "schedule");
    check_corpus(s.synth_mix1_source, "schedule");
    check_corpus(s.synth_mix2_source, "schedule");
    check_translator(s.synth_mono_translator, "schedule");
    check_translator(s.synth_mix1_translator, "schedule");
    check_translator(s.synth_mix2_first, "schedule");
    check_translator(s.synth_mix2_second, "schedule");
    if (s.starts.empty()) throw DataError("schedule.starts must be non-empty");
    if (!std::is_sorted(s.starts.begin(), s.starts.end()) ||
        !std::is_sorted(s.increments.begin(), s.increments.end())) {
      throw DataError("schedule sizes must be non-decreasing");
    }
  }
  for (const MultisourceSpec& ms : m.multisource) {
    if (ms.name.empty()) throw DataError("multisource recipe needs a name");
    if (ms.parts.size() < 2) {
      throw DataError("multisource " + ms.name + " needs at least two parts");
    }
    for (const std::string& part : ms.parts) {
      check_corpus(part, "multisource " + ms.name);
    }
  }
}

}  // namespace kouzen
