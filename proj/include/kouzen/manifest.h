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
// Declarative build manifest for the data pipeline. TOML-style syntax,
// restricted to what the schema needs: `[section]` and `[[list]]`
// headers, `key = value` with strings, integers, booleans and flat
// arrays, and `#` comments.
//
//   manifest_version = 1
//   seed = 42
//   shuffle = true
//
//   [corpora.authentic]
//   kind = "bitext"            # bitext | tsv | mono
//   source = "hat.txt"         # bitext: two parallel files
//   target = "eng.txt"
//   source_lang = "hat"
//   target_lang = "eng"
//
//   [corpora.mono_eng]
//   kind = "mono"
//   path = "eng_mono.txt"
//   lang = "eng"
//
//   [translators.bt]
//   kind = "identity"          # identity | rules | command | http
//   from = "eng"
//   to = "hat"
//   # rules kind: translit_rules = "...", syntax_rules = "..." (input
//   #   lines must be bracketed trees when syntax_rules is given)
//   # command kind: command = "line-in/line-out shell command"
//   # http kind: url = "http://host:port/path"
//
//   [schedule]
//   authentic = "authentic"
//   starts = [5000, 25000, 189000]
//   increments = [5000, 25000, 200000]
//   synth_mono_source = "mono_eng"
//   synth_mono_translator = "bt"
//   synth_mix1_source = "hrl"
//   synth_mix1_translator = "hrl2lrl"
//   synth_mix2_source = "mono_eng"
//   synth_mix2_first = "tgt2hrl"
//   synth_mix2_second = "hrl2lrl"
//
//   [[multisource]]
//   name = "hat_fra"
//   parts = ["authentic", "hrl"]
//   tag_sources = true

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kouzen {

struct CorpusSpec {
  std::string name;
  std::string kind;  // bitext | tsv | mono
  std::string source, target, path;
  std::string source_lang, target_lang, lang;
};

struct TranslatorSpec {
  std::string name;
  std::string kind;  // identity | rules | command | http
  std::string from, to;
  std::string translit_rules, syntax_rules;
  std::string command;
  std::string url;
};

struct ScheduleSpec {
  std::string authentic;
  std::vector<uint64_t> starts;
  std::vector<uint64_t> increments;
  std::string synth_mono_source, synth_mono_translator;
  std::string synth_mix1_source, synth_mix1_translator;
  std::string synth_mix2_source, synth_mix2_first, synth_mix2_second;
};

struct MultisourceSpec {
  std::string name;
  std::vector<std::string> parts;
  bool tag_sources = true;
};

struct PipelineManifest {
  int version = 1;
  uint64_t seed = 0;
  bool shuffle = true;
  std::vector<CorpusSpec> corpora;
  std::vector<TranslatorSpec> translators;
  std::optional<ScheduleSpec> schedule;
  std::vector<MultisourceSpec> multisource;
};

// Throws ParseError on syntax problems and DataError on schema
// violations (unknown keys, missing fields, bad version).
PipelineManifest ParseManifest(std::string_view text);
PipelineManifest LoadManifest(const std::string& path);

// Cross-reference checks: every schedule/multisource reference names a
// declared corpus or translator, kinds carry their required fields, and
// schedule sizes are non-decreasing.
void ValidateManifest(const PipelineManifest& manifest);

}  // namespace kouzen
