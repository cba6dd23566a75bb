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
// Data model and I/O for monolingual corpora and parallel bitexts.
//
// File formats:
//   * plain text: UTF-8, one sentence per line, LF line endings;
//     a bitext is two parallel files with equal line counts.
//   * TSV bitext: `source<TAB>target` per line, no header.
// Every line is normalized on load (NFC, whitespace runs collapsed to
// single spaces, control characters stripped, case preserved).

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kouzen {

struct Sentence {
  std::string text;  // NFC, no leading/trailing/duplicate whitespace
  std::vector<std::string> tokens;  // whitespace tokenization of `text`

  bool empty() const { return text.empty(); }
  bool operator==(const Sentence& other) const { return text == other.text; }
};

enum class Provenance {
  kAuthentic,
  kSynthMono,
  kSynthMix1,
  kSynthMix2,
  kTransformed,
};

const char* ProvenanceName(Provenance p);
Provenance ProvenanceFromName(std::string_view name);

struct ParallelCorpus {
  std::string source_lang;
  std::string target_lang;
  std::vector<std::pair<Sentence, Sentence>> pairs;
  Provenance provenance = Provenance::kAuthentic;

  size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

struct MonoCorpus {
  std::string lang;
  std::vector<Sentence> sentences;

  size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
};

// NFC + whitespace cleanup; case is preserved. Idempotent. Throws
// DataError on invalid UTF-8, naming the byte offset.
Sentence Normalize(std::string_view raw);

// Two parallel files, line i of each forms pair i. Throws DataError on
// line-count mismatch (reporting both counts) or an empty segment
// (naming the 1-based line number). Provenance is authentic.
ParallelCorpus LoadBitext(const std::string& path_src,
                          const std::string& path_tgt,
                          const std::string& src_lang,
                          const std::string& tgt_lang);

// `source<TAB>target` per line.
ParallelCorpus LoadBitextTsv(const std::string& path,
                             const std::string& src_lang,
                             const std::string& tgt_lang);

void SaveBitext(const ParallelCorpus& corpus, const std::string& path_src,
                const std::string& path_tgt);
void SaveBitextTsv(const ParallelCorpus& corpus, const std::string& path);

MonoCorpus LoadMono(const std::string& path, const std::string& lang);
void SaveMono(const MonoCorpus& corpus, const std::string& path);

// Deterministic sample of exactly n pairs, without replacement, in
// shuffled order. Implemented as a seeded Fisher-Yates shuffle followed
// by a prefix take, so slices nest: the sample of n1 is a prefix of the
// sample of n2 whenever n1 <= n2 under the same seed. Throws
// CapacityError when n exceeds the corpus size.
ParallelCorpus SampleSlice(const ParallelCorpus& corpus, size_t n,
                           uint64_t seed);

// Intersects two bitexts that share a target language: for each pair in
// `a` whose target side occurs in `b`, emits (a.source, b.source) using
// the first matching pair of `b`. Duplicate targets are not
// deduplicated. Result languages are (a.source_lang, b.source_lang).
ParallelCorpus JoinOnTarget(const ParallelCorpus& a, const ParallelCorpus& b);

// Invariant check used by the pipeline after dataset assembly: both
// sides of every pair non-empty and already in normalized form. Throws
// DataError naming the first offending pair.
void ValidateCorpus(const ParallelCorpus& corpus);

}  // namespace kouzen
