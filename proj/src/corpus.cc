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

#include "kouzen/corpus.h"

#include <unordered_map>

#include "kouzen/error.h"
#include "kouzen/rng.h"
#include "kouzen/text.h"

namespace kouzen {

const char* ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kAuthentic:
      return "authentic";
    case Provenance::kSynthMono:
      return "synth_mono";
    case Provenance::kSynthMix1:
      return "synth_mix1";
    case Provenance::kSynthMix2:
      return "synth_mix2";
    case Provenance::kTransformed:
      return "transformed";
  }
  return "unknown";
}

Provenance ProvenanceFromName(std::string_view name) {
  if (name == "authentic") return Provenance::kAuthentic;
  if (name == "synth_mono") return Provenance::kSynthMono;
  if (name == "synth_mix1") return Provenance::kSynthMix1;
  if (name == "synth_mix2") return Provenance::kSynthMix2;
  if (name == "transformed") return Provenance::kTransformed;
  throw DataError("unknown provenance tag: " + std::string(name));
}

Sentence Normalize(std::string_view raw) {
  const std::string composed = Nfc(raw);
  const std::u32string cps = DecodeUtf8(composed);

  Sentence out;
  std::u32string text;
  std::u32string token;
  bool pending_space = false;
  for (char32_t c : cps) {
    if (IsSpace(c)) {
      if (!token.empty()) {
        out.tokens.push_back(EncodeUtf8(token));
        token.clear();
        pending_space = true;
      }
      continue;
    }
    if (IsControl(c)) continue;
    if (pending_space) {
      text.push_back(U' ');
      pending_space = false;
    }
    text.push_back(c);
    token.push_back(c);
  }
  if (!token.empty()) out.tokens.push_back(EncodeUtf8(token));
  out.text = EncodeUtf8(text);
  return out;
}

namespace {

std::vector<Sentence> NormalizeLines(const std::vector<std::string>& lines) {
  std::vector<Sentence> out;
  out.reserve(lines.size());
  for (const std::string& line : lines) out.push_back(Normalize(line));
  return out;
}

}  // namespace

ParallelCorpus LoadBitext(const std::string& path_src,
                          const std::string& path_tgt,
                          const std::string& src_lang,
                          const std::string& tgt_lang) {
  const std::vector<std::string> src_lines = SplitLines(ReadFile(path_src));
  const std::vector<std::string> tgt_lines = SplitLines(ReadFile(path_tgt));
  if (src_lines.size() != tgt_lines.size()) {
    throw DataError("bitext line-count mismatch: " + path_src + " has " +
                    std::to_string(src_lines.size()) + " lines, " + path_tgt +
                    " has " + std::to_string(tgt_lines.size()));
  }
  ParallelCorpus corpus;
  corpus.source_lang = src_lang;
  corpus.target_lang = tgt_lang;
  corpus.pairs.reserve(src_lines.size());
  for (size_t i = 0; i < src_lines.size(); ++i) {
    Sentence src = Normalize(src_lines[i]);
    Sentence tgt = Normalize(tgt_lines[i]);
    if (src.empty() || tgt.empty()) {
      throw DataError("empty segment at line " + std::to_string(i + 1));
    }
    corpus.pairs.emplace_back(std::move(src), std::move(tgt));
  }
  return corpus;
}

ParallelCorpus LoadBitextTsv(const std::string& path,
                             const std::string& src_lang,
                             const std::string& tgt_lang) {
  const std::vector<std::string> lines = SplitLines(ReadFile(path));
  ParallelCorpus corpus;
  corpus.source_lang = src_lang;
  corpus.target_lang = tgt_lang;
  corpus.pairs.reserve(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    const size_t tab = lines[i].find('\t');
    if (tab == std::string::npos) {
      throw DataError("missing tab separator at line " + std::to_string(i + 1) +
                      " of " + path);
    }
    Sentence src = Normalize(std::string_view(lines[i]).substr(0, tab));
    Sentence tgt = Normalize(std::string_view(lines[i]).substr(tab + 1));
    if (src.empty() || tgt.empty()) {
      throw DataError("empty segment at line " + std::to_string(i + 1));
    }
    corpus.pairs.emplace_back(std::move(src), std::move(tgt));
  }
  return corpus;
}

void SaveBitext(const ParallelCorpus& corpus, const std::string& path_src,
                const std::string& path_tgt) {
  std::string src, tgt;
  for (const auto& [s, t] : corpus.pairs) {
    src += s.text;
    src += '\n';
    tgt += t.text;
    tgt += '\n';
  }
  WriteFile(path_src, src);
  WriteFile(path_tgt, tgt);
}

void SaveBitextTsv(const ParallelCorpus& corpus, const std::string& path) {
  std::string out;
  for (const auto& [s, t] : corpus.pairs) {
    out += s.text;
    out += '\t';
    out += t.text;
    out += '\n';
  }
  WriteFile(path, out);
}

MonoCorpus LoadMono(const std::string& path, const std::string& lang) {
  const std::vector<std::string> lines = SplitLines(ReadFile(path));
  MonoCorpus corpus;
  corpus.lang = lang;
  corpus.sentences = NormalizeLines(lines);
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    if (corpus.sentences[i].empty()) {
      throw DataError("empty segment at line " + std::to_string(i + 1));
    }
  }
  return corpus;
}

void SaveMono(const MonoCorpus& corpus, const std::string& path) {
  std::string out;
  for (const Sentence& s : corpus.sentences) {
    out += s.text;
    out += '\n';
  }
  WriteFile(path, out);
}

ParallelCorpus SampleSlice(const ParallelCorpus& corpus, size_t n,
                           uint64_t seed) {
  if (n > corpus.size()) {
    throw CapacityError("sample of " + std::to_string(n) +
                        " pairs requested from a corpus of " +
                        std::to_string(corpus.size()));
  }
  const std::vector<size_t> order = ShuffledIndices(corpus.size(), seed);
  ParallelCorpus out;
  out.source_lang = corpus.source_lang;
  out.target_lang = corpus.target_lang;
  out.provenance = corpus.provenance;
  out.pairs.reserve(n);
  for (size_t i = 0; i < n; ++i) out.pairs.push_back(corpus.pairs[order[i]]);
  return out;
}

ParallelCorpus JoinOnTarget(const ParallelCorpus& a, const ParallelCorpus& b) {
  if (a.target_lang != b.target_lang) {
    throw DataError("join requires matching target languages, got " +
                    a.target_lang + " and " + b.target_lang);
  }
  std::unordered_map<std::string_view, size_t> first_in_b;
  for (size_t i = 0; i < b.pairs.size(); ++i) {
    first_in_b.emplace(b.pairs[i].second.text, i);  // keeps the first
  }
  ParallelCorpus out;
  out.source_lang = a.source_lang;
  out.target_lang = b.source_lang;
  for (const auto& [src, tgt] : a.pairs) {
    auto it = first_in_b.find(tgt.text);
    if (it == first_in_b.end()) continue;
    out.pairs.emplace_back(src, b.pairs[it->second].first);
  }
  return out;
}

void ValidateCorpus(const ParallelCorpus& corpus) {
  for (size_t i = 0; i < corpus.pairs.size(); ++i) {
    const auto& [src, tgt] = corpus.pairs[i];
    if (src.empty() || tgt.empty()) {
      throw DataError("empty segment in pair " + std::to_string(i + 1));
    }
    if (src.text != Normalize(src.text).text ||
        tgt.text != Normalize(tgt.text).text) {
      throw DataError("unnormalized text in pair " + std::to_string(i + 1));
    }
  }
}

}  // namespace kouzen
