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
// Translation evaluation and significance testing. All metrics are pure
// functions of normalized sentences; every parameter that affects a
// score is recorded in the report so results are reproducible.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "kouzen/corpus.h"

namespace kouzen {

struct EvalPair {
  Sentence hypothesis;
  std::vector<Sentence> references;  // at least one
};

// Line-aligned hypothesis and reference files.
std::vector<EvalPair> LoadEvalPairs(const std::string& hyp_path,
                                    const std::vector<std::string>& ref_paths);

struct MetricReport {
  std::string metric;
  double score = 0.0;
  std::vector<double> sentence_scores;  // filled when requested
  nlohmann::json params;

  nlohmann::json ToJson() const;
};

enum class BleuSmoothing { kNone, kAddK };

// Corpus BLEU in [0,100]: brevity penalty times the geometric mean of
// modified n-gram precisions up to max_n, clipped against the
// references. The brevity penalty uses the per-sentence reference
// length closest to the hypothesis length (ties resolved short). add-k
// smoothing applies to orders above 1.
MetricReport Bleu(const std::vector<EvalPair>& pairs, int max_n = 4,
                  BleuSmoothing smoothing = BleuSmoothing::kNone,
                  double smooth_k = 1.0, bool per_sentence = false);

// Character error rate as a percentage: total Levenshtein distance over
// total reference characters. Characters are Unicode scalar values of
// the normalized text, spaces included. Uses the first reference and
// warns (in the report) when more are present.
MetricReport Cer(const std::vector<EvalPair>& pairs,
                 bool per_sentence = false);

// chrF++ in [0,100]: F_beta over precision/recall averaged across
// character n-gram orders 1..char_n and word n-gram orders 1..word_n.
// Character n-grams are drawn from the normalized text with spaces
// included; with multiple references each sentence scores against its
// best reference. Orders with no n-grams on either side are skipped.
MetricReport ChrfPlusPlus(const std::vector<EvalPair>& pairs, int char_n = 6,
                          int word_n = 2, double beta = 2.0,
                          bool per_sentence = false);

enum class WilcoxonMode { kAuto, kExact, kNormal };

struct WilcoxonResult {
  double statistic = 0.0;   // min(W+, W-), ranks averaged over ties
  double p_value = 1.0;     // two-sided
  size_t n_effective = 0;   // pairs remaining after dropped zeros
  std::string mode;         // "exact" or "normal"

  nlohmann::json ToJson() const;
};

// Two-sided Wilcoxon signed-rank test on paired samples. Zero
// differences are dropped; fewer than 6 remaining pairs is an error
// (all-zero differences report degeneracy). kAuto uses the exact
// distribution for n <= 25 and the tie-corrected normal approximation
// (no continuity correction) above.
WilcoxonResult WilcoxonSignedRank(const std::vector<double>& a,
                                  const std::vector<double>& b,
                                  WilcoxonMode mode = WilcoxonMode::kAuto);

struct BootstrapResult {
  double p_value = 1.0;     // fraction of resamples where A does not
                            // outperform B; ties count half
  double score_a = 0.0;     // corpus BLEU of system A
  double score_b = 0.0;
  double mean_a = 0.0;      // resampled-score summaries
  double mean_b = 0.0;
  double stddev_a = 0.0;
  double stddev_b = 0.0;
  bool indistinguishable = false;
  size_t iterations = 0;
  size_t doc_size = 0;
  size_t documents = 0;
  uint64_t seed = 0;

  nlohmann::json ToJson() const;
};

// Paired bootstrap over document-level BLEU: sentences are grouped into
// consecutive documents of doc_size (0 selects ceil(n/1000), so about
// 1000 documents exist), documents are resampled with replacement, and
// both systems are scored on every resample. Iteration i draws from
// SplitMix64(MixSeed(seed, i)), so runs are deterministic and
// iterations independent. Both systems must share the same references.
BootstrapResult BootstrapBleuSignificance(const std::vector<EvalPair>& a,
                                          const std::vector<EvalPair>& b,
                                          size_t iterations, size_t doc_size,
                                          uint64_t seed);

struct MeanDiffBootstrapResult {
  double p_value = 1.0;  // two-sided
  double mean_diff = 0.0;
  size_t iterations = 0;
  uint64_t seed = 0;

  nlohmann::json ToJson() const;
};

// Plain paired bootstrap on the mean difference of per-item scores,
// for score lists produced outside BLEU.
MeanDiffBootstrapResult MeanDiffBootstrap(const std::vector<double>& a,
                                          const std::vector<double>& b,
                                          size_t iterations, uint64_t seed);

// Building blocks exposed for document-level scoring and tests.

struct BleuStats {
  std::vector<uint64_t> matched;  // clipped n-gram matches, per order
  std::vector<uint64_t> total;    // hypothesis n-gram counts, per order
  uint64_t hyp_len = 0;
  uint64_t ref_len = 0;  // closest reference length

  void Add(const BleuStats& other);
};

BleuStats BleuSentenceStats(const EvalPair& pair, int max_n);
double BleuScoreFromStats(const BleuStats& stats, BleuSmoothing smoothing,
                          double smooth_k);

// Levenshtein distance over codepoints.
size_t Levenshtein(const std::u32string& a, const std::u32string& b);

}  // namespace kouzen
