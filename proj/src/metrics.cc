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

#include "kouzen/metrics.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "kouzen/error.h"
#include "kouzen/rng.h"
#include "kouzen/text.h"

namespace kouzen {

std::vector<EvalPair> LoadEvalPairs(
    const std::string& hyp_path, const std::vector<std::string>& ref_paths) {
  if (ref_paths.empty()) throw DataError("at least one reference file needed");
  const std::vector<std::string> hyp_lines = SplitLines(ReadFile(hyp_path));
  std::vector<EvalPair> pairs(hyp_lines.size());
  for (size_t i = 0; i < hyp_lines.size(); ++i) {
    pairs[i].hypothesis = Normalize(hyp_lines[i]);
  }
  for (const std::string& ref_path : ref_paths) {
    const std::vector<std::string> ref_lines = SplitLines(ReadFile(ref_path));
    if (ref_lines.size() != hyp_lines.size()) {
      throw DataError("reference " + ref_path + " has " +
                      std::to_string(ref_lines.size()) + " lines, hypothesis " +
                      hyp_path + " has " + std::to_string(hyp_lines.size()));
    }
    for (size_t i = 0; i < ref_lines.size(); ++i) {
      pairs[i].references.push_back(Normalize(ref_lines[i]));
    }
  }
  return pairs;
}

nlohmann::json MetricReport::ToJson() const {
  nlohmann::json j;
  j["metric"] = metric;
  j["score"] = score;
  j["params"] = params;
  if (!sentence_scores.empty()) j["sentence_scores"] = sentence_scores;
  return j;
}

// ---------------------------------------------------------------------------
// BLEU

namespace {

// Token n-grams keyed by a join that cannot occur inside tokens.
std::unordered_map<std::string, uint64_t> TokenNgrams(
    const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, uint64_t> grams;
  if (n <= 0 || tokens.size() < static_cast<size_t>(n)) return grams;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += '\x1f';
      key += tokens[i + k];
    }
    ++grams[key];
  }
  return grams;
}

}  // namespace

void BleuStats::Add(const BleuStats& other) {
  if (matched.size() < other.matched.size()) {
    matched.resize(other.matched.size(), 0);
    total.resize(other.total.size(), 0);
  }
  for (size_t i = 0; i < other.matched.size(); ++i) {
    matched[i] += other.matched[i];
    total[i] += other.total[i];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
}

BleuStats BleuSentenceStats(const EvalPair& pair, int max_n) {
  BleuStats stats;
  stats.matched.assign(static_cast<size_t>(max_n), 0);
  stats.total.assign(static_cast<size_t>(max_n), 0);
  const std::vector<std::string>& hyp = pair.hypothesis.tokens;
  stats.hyp_len = hyp.size();

  // Effective reference length: closest to the hypothesis, ties short.
  uint64_t best_ref_len = 0;
  bool first = true;
  for (const Sentence& ref : pair.references) {
    const uint64_t len = ref.tokens.size();
    if (first) {
      best_ref_len = len;
      first = false;
      continue;
    }
    const auto dist = [&](uint64_t r) {
      return r > stats.hyp_len ? r - stats.hyp_len : stats.hyp_len - r;
    };
    if (dist(len) < dist(best_ref_len) ||
        (dist(len) == dist(best_ref_len) && len < best_ref_len)) {
      best_ref_len = len;
    }
  }
  stats.ref_len = best_ref_len;

  for (int n = 1; n <= max_n; ++n) {
    const auto hyp_grams = TokenNgrams(hyp, n);
    std::unordered_map<std::string, uint64_t> clip;
    for (const Sentence& ref : pair.references) {
      for (const auto& [gram, count] : TokenNgrams(ref.tokens, n)) {
        uint64_t& c = clip[gram];
        c = std::max(c, count);
      }
    }
    uint64_t matched = 0, total = 0;
    for (const auto& [gram, count] : hyp_grams) {
      total += count;
      auto it = clip.find(gram);
      if (it != clip.end()) matched += std::min(count, it->second);
    }
    stats.matched[static_cast<size_t>(n - 1)] = matched;
    stats.total[static_cast<size_t>(n - 1)] = total;
  }
  return stats;
}

double BleuScoreFromStats(const BleuStats& stats, BleuSmoothing smoothing,
                          double smooth_k) {
  if (stats.hyp_len == 0) return 0.0;
  const size_t orders = stats.matched.size();
  double log_sum = 0.0;
  for (size_t n = 0; n < orders; ++n) {
    double num = static_cast<double>(stats.matched[n]);
    double den = static_cast<double>(stats.total[n]);
    if (smoothing == BleuSmoothing::kAddK && n > 0) {
      num += smooth_k;
      den += smooth_k;
    }
    if (num <= 0.0 || den <= 0.0) return 0.0;
    log_sum += std::log(num / den);
  }
  double bp = 1.0;
  if (stats.hyp_len < stats.ref_len) {
    bp = std::exp(1.0 - static_cast<double>(stats.ref_len) /
                            static_cast<double>(stats.hyp_len));
  }
  return 100.0 * bp * std::exp(log_sum / static_cast<double>(orders));
}

MetricReport Bleu(const std::vector<EvalPair>& pairs, int max_n,
                  BleuSmoothing smoothing, double smooth_k,
                  bool per_sentence) {
  if (pairs.empty()) throw DataError("empty evaluation set");
  if (max_n < 1) throw DomainError("maxN must be >= 1");
  BleuStats corpus;
  std::vector<double> sentence_scores;
  for (const EvalPair& pair : pairs) {
    if (pair.references.empty()) throw DataError("pair without references");
    BleuStats stats = BleuSentenceStats(pair, max_n);
    if (per_sentence) {
      sentence_scores.push_back(BleuScoreFromStats(stats, smoothing, smooth_k));
    }
    corpus.Add(stats);
  }
  MetricReport report;
  report.metric = "bleu";
  report.score = BleuScoreFromStats(corpus, smoothing, smooth_k);
  report.params = {
      {"max_n", max_n},
      {"smoothing", smoothing == BleuSmoothing::kNone ? "none" : "add-k"},
      {"brevity_penalty", "closest-reference"},
  };
  if (smoothing == BleuSmoothing::kAddK) report.params["k"] = smooth_k;
  report.sentence_scores = std::move(sentence_scores);
  return report;
}

// ---------------------------------------------------------------------------
// CER

size_t Levenshtein(const std::u32string& a, const std::u32string& b) {
  const size_t m = a.size(), n = b.size();
  std::vector<size_t> prev(n + 1), cur(n + 1);
  for (size_t j = 0; j <= n; ++j) prev[j] = j;
  for (size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= n; ++j) {
      const size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

MetricReport Cer(const std::vector<EvalPair>& pairs, bool per_sentence) {
  if (pairs.empty()) throw DataError("empty evaluation set");
  uint64_t total_dist = 0, total_ref = 0;
  bool extra_refs = false;
  std::vector<double> sentence_scores;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const EvalPair& pair = pairs[i];
    if (pair.references.empty()) throw DataError("pair without references");
    if (pair.references.size() > 1) extra_refs = true;
    const std::u32string hyp = DecodeUtf8(pair.hypothesis.text);
    const std::u32string ref = DecodeUtf8(pair.references.front().text);
    if (ref.empty()) {
      throw DataError("empty reference at pair " + std::to_string(i + 1));
    }
    const size_t dist = Levenshtein(hyp, ref);
    total_dist += dist;
    total_ref += ref.size();
    if (per_sentence) {
      sentence_scores.push_back(100.0 * static_cast<double>(dist) /
                                static_cast<double>(ref.size()));
    }
  }
  MetricReport report;
  report.metric = "cer";
  report.score =
      100.0 * static_cast<double>(total_dist) / static_cast<double>(total_ref);
  report.params = {{"unit", "codepoint"}, {"spaces", "included"}};
  if (extra_refs) {
    report.params["warning"] = "multiple references given; first used";
  }
  report.sentence_scores = std::move(sentence_scores);
  return report;
}

// ---------------------------------------------------------------------------
// chrF++

namespace {

struct OrderStats {
  uint64_t matched = 0;
  uint64_t hyp_total = 0;
  uint64_t ref_total = 0;
};

// One slot per character order 1..char_n, then word order 1..word_n.
using ChrfStats = std::vector<OrderStats>;

std::unordered_map<std::string, uint64_t> CharNgrams(const std::u32string& cps,
                                                     int n) {
  std::unordered_map<std::string, uint64_t> grams;
  if (n <= 0 || cps.size() < static_cast<size_t>(n)) return grams;
  for (size_t i = 0; i + n <= cps.size(); ++i) {
    ++grams[EncodeUtf8(
        std::u32string_view(cps).substr(i, static_cast<size_t>(n)))];
  }
  return grams;
}

OrderStats MatchGrams(const std::unordered_map<std::string, uint64_t>& hyp,
                      const std::unordered_map<std::string, uint64_t>& ref) {
  OrderStats st;
  for (const auto& [gram, count] : hyp) st.hyp_total += count;
  for (const auto& [gram, count] : ref) st.ref_total += count;
  for (const auto& [gram, count] : hyp) {
    auto it = ref.find(gram);
    if (it != ref.end()) st.matched += std::min(count, it->second);
  }
  return st;
}

ChrfStats SentenceChrfStats(const Sentence& hyp, const Sentence& ref,
                            int char_n, int word_n) {
  ChrfStats stats;
  const std::u32string hyp_cps = DecodeUtf8(hyp.text);
  const std::u32string ref_cps = DecodeUtf8(ref.text);
  for (int n = 1; n <= char_n; ++n) {
    stats.push_back(MatchGrams(CharNgrams(hyp_cps, n), CharNgrams(ref_cps, n)));
  }
  for (int n = 1; n <= word_n; ++n) {
    stats.push_back(
        MatchGrams(TokenNgrams(hyp.tokens, n), TokenNgrams(ref.tokens, n)));
  }
  return stats;
}

// F_beta over order-averaged precision and recall, in [0,1]. Orders with
// no n-grams on either side are skipped.
double ChrfFromStats(const ChrfStats& stats, double beta) {
  double p_sum = 0.0, r_sum = 0.0;
  size_t live = 0;
  for (const OrderStats& st : stats) {
    if (st.hyp_total == 0 && st.ref_total == 0) continue;
    ++live;
    if (st.hyp_total > 0) {
      p_sum += static_cast<double>(st.matched) /
               static_cast<double>(st.hyp_total);
    }
    if (st.ref_total > 0) {
      r_sum += static_cast<double>(st.matched) /
               static_cast<double>(st.ref_total);
    }
  }
  if (live == 0) return 0.0;
  const double p = p_sum / static_cast<double>(live);
  const double r = r_sum / static_cast<double>(live);
  const double b2 = beta * beta;
  if (p == 0.0 && r == 0.0) return 0.0;
  return (1.0 + b2) * p * r / (b2 * p + r);
}

void AddChrfStats(ChrfStats* into, const ChrfStats& from) {
  if (into->size() < from.size()) into->resize(from.size());
  for (size_t i = 0; i < from.size(); ++i) {
    (*into)[i].matched += from[i].matched;
    (*into)[i].hyp_total += from[i].hyp_total;
    (*into)[i].ref_total += from[i].ref_total;
  }
}

}  // namespace

MetricReport ChrfPlusPlus(const std::vector<EvalPair>& pairs, int char_n,
                          int word_n, double beta, bool per_sentence) {
  if (pairs.empty()) throw DataError("empty evaluation set");
  if (char_n < 1 || word_n < 0) throw DomainError("invalid n-gram orders");
  ChrfStats corpus;
  std::vector<double> sentence_scores;
  for (const EvalPair& pair : pairs) {
    if (pair.references.empty()) throw DataError("pair without references");
    ChrfStats best;
    double best_f = -1.0;
    for (const Sentence& ref : pair.references) {
      ChrfStats stats =
          SentenceChrfStats(pair.hypothesis, ref, char_n, word_n);
      const double f = ChrfFromStats(stats, beta);
      if (f > best_f) {
        best_f = f;
        best = std::move(stats);
      }
    }
    if (per_sentence) sentence_scores.push_back(100.0 * best_f);
    AddChrfStats(&corpus, best);
  }
  MetricReport report;
  report.metric = "chrf++";
  report.score = 100.0 * ChrfFromStats(corpus, beta);
  report.params = {{"char_n", char_n},
                   {"word_n", word_n},
                   {"beta", beta},
                   {"spaces", "included"}};
  report.sentence_scores = std::move(sentence_scores);
  return report;
}

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank

namespace {

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

nlohmann::json WilcoxonResult::ToJson() const {
  return {{"test", "wilcoxon-signed-rank"},
          {"statistic", statistic},
          {"p_value", p_value},
          {"n_effective", n_effective},
          {"mode", mode}};
}

WilcoxonResult WilcoxonSignedRank(const std::vector<double>& a,
                                  const std::vector<double>& b,
                                  WilcoxonMode mode) {
  if (a.size() != b.size()) {
    throw DataError("score lists differ in length: " +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
  std::vector<double> diffs;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  if (diffs.empty()) {
    throw DataError("degenerate sample: all differences are zero");
  }
  const size_t n = diffs.size();
  if (n < 6) {
    throw DataError("need at least 6 non-zero differences, got " +
                    std::to_string(n));
  }

  // Average ranks of |d|, doubled so ties stay integral.
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return std::fabs(diffs[x]) < std::fabs(diffs[y]);
  });
  std::vector<uint64_t> doubled_rank(n, 0);
  std::vector<size_t> tie_sizes;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n &&
           std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) {
      ++j;
    }
    // Positions i+1 .. j (1-based) share the average rank.
    const uint64_t doubled_avg = static_cast<uint64_t>(i + 1 + j);  // 2*avg
    for (size_t k = i; k < j; ++k) doubled_rank[order[k]] = doubled_avg;
    tie_sizes.push_back(j - i);
    i = j;
  }

  uint64_t w_plus2 = 0;
  const uint64_t total2 = static_cast<uint64_t>(n) * (n + 1);
  for (size_t k = 0; k < n; ++k) {
    if (diffs[k] > 0) w_plus2 += doubled_rank[k];
  }
  const uint64_t w_minus2 = total2 - w_plus2;
  const uint64_t w_min2 = std::min(w_plus2, w_minus2);

  WilcoxonResult result;
  result.statistic = static_cast<double>(w_min2) / 2.0;
  result.n_effective = n;

  const bool exact =
      mode == WilcoxonMode::kExact || (mode == WilcoxonMode::kAuto && n <= 25);
  if (exact) {
    // Null distribution of 2*W+ by subset-sum counting over the doubled
    // ranks; 2^n assignments total.
    std::vector<uint64_t> counts(total2 + 1, 0);
    counts[0] = 1;
    for (size_t k = 0; k < n; ++k) {
      const uint64_t r = doubled_rank[k];
      for (size_t s = total2 + 1; s-- > r;) {
        counts[s] += counts[s - r];
      }
    }
    uint64_t tail_lo = 0, tail_hi = 0;
    for (uint64_t s = 0; s <= total2; ++s) {
      if (s <= w_min2) tail_lo += counts[s];
      if (s >= total2 - w_min2) tail_hi += counts[s];
    }
    const double denom = std::pow(2.0, static_cast<double>(n));
    result.p_value = std::min(
        1.0, (static_cast<double>(tail_lo) + static_cast<double>(tail_hi)) /
                 denom);
    result.mode = "exact";
  } else {
    const double nd = static_cast<double>(n);
    const double mean = nd * (nd + 1.0) / 4.0;
    double variance = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0;
    for (size_t t : tie_sizes) {
      const double td = static_cast<double>(t);
      variance -= (td * td * td - td) / 48.0;
    }
    const double w = static_cast<double>(w_min2) / 2.0;
    const double z = (w - mean) / std::sqrt(variance);
    result.p_value = std::min(1.0, 2.0 * NormalCdf(z));
    result.mode = "normal";
  }
  return result;
}

// ---------------------------------------------------------------------------
// Bootstrap

nlohmann::json BootstrapResult::ToJson() const {
  return {{"test", "paired-bootstrap-bleu"},
          {"p_value", p_value},
          {"score_a", score_a},
          {"score_b", score_b},
          {"resampled_mean_a", mean_a},
          {"resampled_mean_b", mean_b},
          {"resampled_stddev_a", stddev_a},
          {"resampled_stddev_b", stddev_b},
          {"indistinguishable", indistinguishable},
          {"iterations", iterations},
          {"doc_size", doc_size},
          {"documents", documents},
          {"seed", seed}};
}

BootstrapResult BootstrapBleuSignificance(const std::vector<EvalPair>& a,
                                          const std::vector<EvalPair>& b,
                                          size_t iterations, size_t doc_size,
                                          uint64_t seed) {
  if (iterations < 1) throw DomainError("iterations must be >= 1");
  if (a.empty() || a.size() != b.size()) {
    throw DataError("systems must score the same non-empty evaluation set");
  }
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].references.size() != b[i].references.size()) {
      throw DataError("reference mismatch at pair " + std::to_string(i + 1));
    }
    for (size_t r = 0; r < a[i].references.size(); ++r) {
      if (!(a[i].references[r] == b[i].references[r])) {
        throw DataError("reference mismatch at pair " + std::to_string(i + 1));
      }
    }
  }

  const size_t n = a.size();
  if (doc_size == 0) doc_size = (n + 999) / 1000;
  if (doc_size < 1) doc_size = 1;
  const size_t docs = (n + doc_size - 1) / doc_size;

  constexpr int kMaxN = 4;
  std::vector<BleuStats> doc_a(docs), doc_b(docs);
  for (size_t i = 0; i < n; ++i) {
    doc_a[i / doc_size].Add(BleuSentenceStats(a[i], kMaxN));
    doc_b[i / doc_size].Add(BleuSentenceStats(b[i], kMaxN));
  }

  BootstrapResult result;
  result.iterations = iterations;
  result.doc_size = doc_size;
  result.documents = docs;
  result.seed = seed;
  {
    BleuStats all_a, all_b;
    for (const BleuStats& st : doc_a) all_a.Add(st);
    for (const BleuStats& st : doc_b) all_b.Add(st);
    result.score_a = BleuScoreFromStats(all_a, BleuSmoothing::kNone, 0);
    result.score_b = BleuScoreFromStats(all_b, BleuSmoothing::kNone, 0);
  }

  size_t b_wins = 0, ties = 0;
  double sum_a = 0, sum_b = 0, sumsq_a = 0, sumsq_b = 0;
  for (size_t it = 0; it < iterations; ++it) {
    SplitMix64 rng(MixSeed(seed, it));
    BleuStats sa, sb;
    for (size_t d = 0; d < docs; ++d) {
      const size_t pick = static_cast<size_t>(rng.Bounded(docs));
      sa.Add(doc_a[pick]);
      sb.Add(doc_b[pick]);
    }
    const double score_a = BleuScoreFromStats(sa, BleuSmoothing::kNone, 0);
    const double score_b = BleuScoreFromStats(sb, BleuSmoothing::kNone, 0);
    if (score_a < score_b) {
      ++b_wins;
    } else if (score_a == score_b) {
      ++ties;
    }
    sum_a += score_a;
    sum_b += score_b;
    sumsq_a += score_a * score_a;
    sumsq_b += score_b * score_b;
  }
  const double iters = static_cast<double>(iterations);
  result.p_value =
      (static_cast<double>(b_wins) + 0.5 * static_cast<double>(ties)) / iters;
  result.mean_a = sum_a / iters;
  result.mean_b = sum_b / iters;
  result.stddev_a = std::sqrt(std::max(0.0, sumsq_a / iters -
                                                result.mean_a * result.mean_a));
  result.stddev_b = std::sqrt(std::max(0.0, sumsq_b / iters -
                                                result.mean_b * result.mean_b));
  result.indistinguishable = result.score_a == result.score_b;
  return result;
}

nlohmann::json MeanDiffBootstrapResult::ToJson() const {
  return {{"test", "paired-bootstrap-mean-difference"},
          {"p_value", p_value},
          {"mean_diff", mean_diff},
          {"iterations", iterations},
          {"seed", seed}};
}

MeanDiffBootstrapResult MeanDiffBootstrap(const std::vector<double>& a,
                                          const std::vector<double>& b,
                                          size_t iterations, uint64_t seed) {
  if (iterations < 1) throw DomainError("iterations must be >= 1");
  if (a.empty() || a.size() != b.size()) {
    throw DataError("score lists must be non-empty and equal length");
  }
  const size_t n = a.size();
  std::vector<double> diffs(n);
  double base = 0;
  for (size_t i = 0; i < n; ++i) {
    diffs[i] = a[i] - b[i];
    base += diffs[i];
  }
  base /= static_cast<double>(n);

  size_t non_positive = 0, non_negative = 0;
  for (size_t it = 0; it < iterations; ++it) {
    SplitMix64 rng(MixSeed(seed, it));
    double sum = 0;
    for (size_t i = 0; i < n; ++i) {
      sum += diffs[static_cast<size_t>(rng.Bounded(n))];
    }
    const double mean = sum / static_cast<double>(n);
    if (mean <= 0) ++non_positive;
    if (mean >= 0) ++non_negative;
  }
  MeanDiffBootstrapResult result;
  result.mean_diff = base;
  result.iterations = iterations;
  result.seed = seed;
  const double iters = static_cast<double>(iterations);
  result.p_value = std::min(
      1.0, 2.0 * std::min(static_cast<double>(non_positive) / iters,
                          static_cast<double>(non_negative) / iters));
  return result;
}

}  // namespace kouzen
