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
// Synthetic bitext construction behind a pluggable translator
// interface, augmentation schedules, and multi-source assembly. Actual
// neural translation is external; the built-in translators are
// deterministic stand-ins (identity, rule engines, subprocess, HTTP).

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "kouzen/corpus.h"
#include "kouzen/manifest.h"

namespace kouzen {

// Batch translator contract: output has exactly one sentence per input
// sentence, in input order. Violations surface as ProtocolError.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::vector<Sentence> Translate(const std::vector<Sentence>& batch,
                                          const std::string& from,
                                          const std::string& to) = 0;
  virtual std::string Name() const = 0;
};

std::unique_ptr<Translator> MakeIdentityTranslator();

// Rewrite-engine translator. When syntax rules are present, each input
// line must be a bracketed tree; it is transformed and flattened before
// the per-token orthographic rules run.
std::unique_ptr<Translator> MakeRuleEngineTranslator(
    const std::string& name, const std::string& translit_rules_path,
    const std::string& syntax_rules_path);

// Line-in/line-out subprocess, run through /bin/sh.
std::unique_ptr<Translator> MakeCommandTranslator(const std::string& name,
                                                  const std::string& command);

// POST {"from":...,"to":...,"lines":[...]} -> {"lines":[...]}.
std::unique_ptr<Translator> MakeHttpTranslator(const std::string& name,
                                               const std::string& url);

std::unique_ptr<Translator> MakeTranslator(const TranslatorSpec& spec);

struct Lineage {
  std::string source_corpus;
  std::vector<std::string> translators;
};

struct SynthBitext {
  ParallelCorpus corpus;
  Lineage lineage;
};

// Back-translation: pairs (t(mono_i), mono_i), provenance synth_mono.
SynthBitext BuildSynthMono(const MonoCorpus& mono, Translator& translator,
                           const std::string& lrl_lang,
                           const std::string& source_name = "");

// HRL side of an HRL-TGT bitext translated to the LRL: pairs
// (t(hrl_i), tgt_i), provenance synth_mix1.
SynthBitext BuildSynthMix1(const ParallelCorpus& hrl_tgt,
                           Translator& translator, const std::string& lrl_lang,
                           const std::string& source_name = "");

// TGT mono pivoted through the HRL: pairs (t2(t1(mono_i)), mono_i),
// provenance synth_mix2.
SynthBitext BuildSynthMix2(const MonoCorpus& mono, Translator& tgt_to_hrl,
                           const std::string& hrl_lang, Translator& hrl_to_lrl,
                           const std::string& lrl_lang,
                           const std::string& source_name = "");

struct Dataset {
  std::string name;
  ParallelCorpus corpus;
  nlohmann::json metadata;
};

// The cumulative augmentation schedule: per authentic start size, one
// authentic-only stage, then one stage per increment of synth_mono,
// then (holding synth_mono at its maximum) per increment of synth_mix1,
// then likewise synth_mix2 — 1 + 3*increments stages per start. Slices
// are nested via SampleSlice, so each stage strictly contains the
// previous one in its track. Throws CapacityError naming the stage when
// a corpus cannot supply the requested size.
std::vector<Dataset> BuildSchedule(const ParallelCorpus& authentic,
                                   const SynthBitext& synth_mono,
                                   const SynthBitext& synth_mix1,
                                   const SynthBitext& synth_mix2,
                                   const std::vector<uint64_t>& starts,
                                   const std::vector<uint64_t>& increments,
                                   uint64_t seed);

// Concatenation of bitexts sharing a target language, in declared
// order. With tag_sources, every source sentence is prefixed with a
// reserved `<lang>` token naming its source language.
ParallelCorpus AssembleMultisource(
    const std::vector<const ParallelCorpus*>& parts,
    const std::vector<std::string>& part_names, bool tag_sources);

// Writes `name.src`, `name.tgt` and `name.meta.json` under out_dir,
// optionally shuffling pair order with a per-dataset seed derived from
// (seed, name).
void WriteDataset(const std::string& out_dir, const Dataset& dataset,
                  bool shuffle, uint64_t seed);

// Executes a full manifest: loads referenced corpora (paths resolved
// against base_dir), builds translators and synthetic bitexts, emits
// schedule datasets and multisource assemblies under out_dir, and
// returns a JSON summary of everything written.
nlohmann::json RunPipelineBuild(const PipelineManifest& manifest,
                                const std::string& base_dir,
                                const std::string& out_dir);

}  // namespace kouzen
