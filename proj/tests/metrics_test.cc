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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "kouzen/error.h"
#include "kouzen/metrics.h"
#include "kouzen/rng.h"
#include "kouzen/text.h"

using namespace kouzen;

namespace {

EvalPair MakePair(const std::string& hyp,
                  const std::vector<std::string>& refs) {
  EvalPair pair;
  pair.hypothesis = Normalize(hyp);
  for (const std::string& ref : refs) pair.references.push_back(Normalize(ref));
  return pair;
}

std::vector<EvalPair> SelfPairs(const std::vector<std::string>& lines) {
  std::vector<EvalPair> pairs;
  for (const std::string& line : lines) pairs.push_back(MakePair(line, {line}));
  return pairs;
}

}  // namespace

// ---------------------------------------------------------------------------
// BLEU

TEST_CASE("bleu is 100 on identical corpora") {
  const auto pairs = SelfPairs({"kay la bèl", "li pa tap panse", "liv"});
  CHECK(Bleu(pairs).score == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("bleu clips repeated unigrams to zero without smoothing") {
  const std::vector<EvalPair> pairs = {
      MakePair("the the the the", {"the cat"})};
  CHECK(Bleu(pairs).score == 0.0);
  // add-k smoothing lifts the higher orders off zero.
  CHECK(Bleu(pairs, 4, BleuSmoothing::kAddK, 1.0).score > 0.0);
}

TEST_CASE("bleu applies the brevity penalty") {
  // Four hypothesis tokens, five reference tokens, every n-gram
  // matches: BLEU = 100 * exp(1 - 5/4).
  const std::vector<EvalPair> pairs = {
      MakePair("li pa tap panse", {"li pa tap panse dèsann"})};
  const double expected = 100.0 * std::exp(1.0 - 5.0 / 4.0);
  CHECK(std::fabs(Bleu(pairs).score - expected) < 1e-6);
}

TEST_CASE("bleu clips against the best reference") {
  const std::vector<EvalPair> pairs = {
      MakePair("the cat", {"a cat", "the dog"})};
  // Unigrams: "the" matches ref2, "cat" matches ref1 -> p1 = 1.
  const MetricReport report = Bleu(pairs, 1);
  CHECK(report.score == doctest::Approx(100.0));
}

TEST_CASE("bleu rejects bad arguments") {
  CHECK_THROWS_AS(Bleu({}), DataError);
  CHECK_THROWS_AS(Bleu(SelfPairs({"a"}), 0), DomainError);
}

// ---------------------------------------------------------------------------
// CER

namespace {

// Definition-following recursive edit distance, memoized per pair.
size_t OracleLevRec(const std::string& a, const std::string& b, size_t i,
                    size_t j, std::vector<int>* memo, size_t cols) {
  if (i == 0) return j;
  if (j == 0) return i;
  int& slot = (*memo)[i * cols + j];
  if (slot >= 0) return static_cast<size_t>(slot);
  const size_t sub =
      OracleLevRec(a, b, i - 1, j - 1, memo, cols) + (a[i - 1] == b[j - 1] ? 0 : 1);
  const size_t del = OracleLevRec(a, b, i - 1, j, memo, cols) + 1;
  const size_t ins = OracleLevRec(a, b, i, j - 1, memo, cols) + 1;
  const size_t best = std::min({sub, del, ins});
  slot = static_cast<int>(best);
  return best;
}

size_t OracleLev(const std::string& a, const std::string& b) {
  std::vector<int> memo((a.size() + 1) * (b.size() + 1), -1);
  return OracleLevRec(a, b, a.size(), b.size(), &memo, b.size() + 1);
}

}  // namespace

TEST_CASE("cer is zero on identical corpora") {
  CHECK(Cer(SelfPairs({"kay la", "li pa tap panse"})).score == 0.0);
}

TEST_CASE("cer counts one substitution over six characters") {
  const std::vector<EvalPair> pairs = {MakePair("kay la", {"kay li"})};
  CHECK(Cer(pairs).score == doctest::Approx(100.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("cer of an empty hypothesis is all deletions") {
  const std::vector<EvalPair> pairs = {MakePair("", {"abc"})};
  CHECK(Cer(pairs).score == doctest::Approx(100.0));
}

TEST_CASE("cer can exceed 100 on long hypotheses") {
  const std::vector<EvalPair> pairs = {MakePair("xxxxxxxx", {"ab"})};
  CHECK(Cer(pairs).score > 100.0);
}

TEST_CASE("cer rejects empty references by pair") {
  std::vector<EvalPair> pairs = {MakePair("a", {"b"})};
  pairs.push_back(MakePair("a", {"b"}));
  pairs[1].references[0] = Sentence{};
  CHECK_THROWS_WITH_AS(Cer(pairs), doctest::Contains("pair 2"), DataError);
}

TEST_CASE("levenshtein matches the recursive oracle on short strings") {
  // Full check over the 3-letter alphabet runs in the acceptance suite;
  // here lengths up to 4.
  std::vector<std::string> strings = {""};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::string> next;
    for (const std::string& s : strings) {
      if (s.size() == static_cast<size_t>(len) - 1) {
        for (char c : {'a', 'b', 'c'}) next.push_back(s + c);
      }
    }
    strings.insert(strings.end(), next.begin(), next.end());
  }
  for (const std::string& a : strings) {
    for (const std::string& b : strings) {
      CHECK(Levenshtein(DecodeUtf8(a), DecodeUtf8(b)) == OracleLev(a, b));
    }
  }
}

// ---------------------------------------------------------------------------
// chrF++

TEST_CASE("chrf is 100 on identical and 0 on disjoint corpora") {
  CHECK(ChrfPlusPlus(SelfPairs({"kay la", "liv"})).score ==
        doctest::Approx(100.0).epsilon(1e-12));
  const std::vector<EvalPair> disjoint = {MakePair("aaa bbb", {"xxx yyy"})};
  CHECK(ChrfPlusPlus(disjoint).score == 0.0);
}

TEST_CASE("chrf matches the hand-enumerated 6-character pair") {
  // hyp "kay la" vs ref "kay li", spaces included, charN=6, wordN=2,
  // beta=2. Char orders 1..6 give P=R of 5/6, 4/5, 3/4, 2/3, 1/2, 0;
  // word orders give 1/2 and 0. Average P = average R = 4.05/8 =
  // 0.50625, and F2 = P when P equals R, so the score is 50.625.
  const std::vector<EvalPair> pairs = {MakePair("kay la", {"kay li"})};
  CHECK(ChrfPlusPlus(pairs).score == doctest::Approx(50.625).epsilon(1e-12));
}

TEST_CASE("chrf skips vacuous orders so short identities stay perfect") {
  CHECK(ChrfPlusPlus(SelfPairs({"ab"})).score ==
        doctest::Approx(100.0).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// Wilcoxon signed-rank

namespace {

// Exact null distribution by direct enumeration of all 2^n sign
// assignments over the average ranks of |d|.
double EnumerationP(const std::vector<double>& a, const std::vector<double>& b,
                    double* statistic_out = nullptr) {
  std::vector<double> diffs;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) diffs.push_back(a[i] - b[i]);
  }
  const size_t n = diffs.size();
  std::vector<double> ranks(n);
  {
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return std::fabs(diffs[x]) < std::fabs(diffs[y]);
    });
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j < n &&
             std::fabs(diffs[order[j]]) == std::fabs(diffs[order[i]])) {
        ++j;
      }
      const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
      for (size_t k = i; k < j; ++k) ranks[order[k]] = avg;
      i = j;
    }
  }
  double w_plus = 0, total = 0;
  for (size_t i = 0; i < n; ++i) {
    total += ranks[i];
    if (diffs[i] > 0) w_plus += ranks[i];
  }
  const double w_min = std::min(w_plus, total - w_plus);
  if (statistic_out) *statistic_out = w_min;
  uint64_t lo = 0, hi = 0;
  const uint64_t assignments = uint64_t{1} << n;
  for (uint64_t mask = 0; mask < assignments; ++mask) {
    double w = 0;
    for (size_t i = 0; i < n; ++i) {
      if (mask & (uint64_t{1} << i)) w += ranks[i];
    }
    if (w <= w_min + 1e-12) ++lo;
    if (w >= total - w_min - 1e-12) ++hi;
  }
  return std::min(1.0, static_cast<double>(lo + hi) /
                           static_cast<double>(assignments));
}

}  // namespace

TEST_CASE("wilcoxon rejects degenerate and mismatched input") {
  const std::vector<double> a = {1, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_WITH_AS(WilcoxonSignedRank(a, a),
                       doctest::Contains("degenerate"), DataError);
  CHECK_THROWS_AS(WilcoxonSignedRank({1, 2}, {1}), DataError);
  CHECK_THROWS_AS(WilcoxonSignedRank({1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}),
                  DataError);
}

TEST_CASE("wilcoxon exact mode matches enumeration on a textbook sample") {
  // Ten paired measurements with ties among the |differences|.
  const std::vector<double> a = {125, 115, 130, 140, 140,
                                 115, 140, 125, 140, 135};
  const std::vector<double> b = {110, 122, 125, 120, 140,
                                 124, 123, 137, 135, 145};
  double oracle_stat = 0;
  const double oracle_p = EnumerationP(a, b, &oracle_stat);
  const WilcoxonResult r = WilcoxonSignedRank(a, b, WilcoxonMode::kExact);
  CHECK(r.mode == "exact");
  CHECK(r.statistic == doctest::Approx(oracle_stat));
  CHECK(r.p_value == doctest::Approx(oracle_p).epsilon(1e-12));
}

TEST_CASE("wilcoxon exact mode matches enumeration on random samples") {
  SplitMix64 rng(321);
  for (int trial = 0; trial < 25; ++trial) {
    const size_t n = 6 + rng.Bounded(7);  // 6..12
    std::vector<double> a(n), b(n);
    for (size_t i = 0; i < n; ++i) {
      a[i] = static_cast<double>(rng.Bounded(12));
      b[i] = static_cast<double>(rng.Bounded(12));
    }
    bool all_zero = true;
    for (size_t i = 0; i < n; ++i) all_zero = all_zero && a[i] == b[i];
    size_t nonzero = 0;
    for (size_t i = 0; i < n; ++i) nonzero += a[i] != b[i];
    if (all_zero || nonzero < 6) continue;
    const double oracle_p = EnumerationP(a, b);
    const WilcoxonResult r = WilcoxonSignedRank(a, b, WilcoxonMode::kExact);
    CHECK(r.p_value == doctest::Approx(oracle_p).epsilon(1e-12));
  }
}

TEST_CASE("strict elementwise dominance is significant at n=20") {
  std::vector<double> a(20), b(20);
  for (size_t i = 0; i < 20; ++i) {
    a[i] = static_cast<double>(i) + 1.5;
    b[i] = static_cast<double>(i);
  }
  const WilcoxonResult r = WilcoxonSignedRank(a, b);
  CHECK(r.mode == "exact");
  CHECK(r.p_value < 0.05);
  // All positive ranks: the exact two-sided p is 2/2^20.
  CHECK(r.p_value == doctest::Approx(2.0 / 1048576.0).epsilon(1e-12));
}

TEST_CASE("wilcoxon auto switches to the normal approximation") {
  std::vector<double> a, b;
  SplitMix64 rng(8);
  for (int i = 0; i < 30; ++i) {
    a.push_back(static_cast<double>(rng.Bounded(100)));
    b.push_back(static_cast<double>(rng.Bounded(100)));
  }
  const WilcoxonResult r = WilcoxonSignedRank(a, b);
  CHECK(r.mode == "normal");
  CHECK(r.p_value >= 0.0);
  CHECK(r.p_value <= 1.0);
}

// ---------------------------------------------------------------------------
// Bootstrap

TEST_CASE("bootstrap flags indistinguishable systems at one half") {
  const auto pairs = SelfPairs({"a b c", "d e f", "g h i", "j k l"});
  const BootstrapResult r = BootstrapBleuSignificance(pairs, pairs, 200, 1, 5);
  CHECK(r.p_value == doctest::Approx(0.5));
  CHECK(r.indistinguishable);
}

TEST_CASE("bootstrap reports strict dominance as zero") {
  std::vector<EvalPair> winner, loser;
  for (int i = 0; i < 8; ++i) {
    const std::string ref = "ref line number " + std::to_string(i);
    winner.push_back(MakePair(ref, {ref}));
    loser.push_back(MakePair("zzz qqq vvv www", {ref}));
  }
  const BootstrapResult r =
      BootstrapBleuSignificance(winner, loser, 500, 2, 81);
  CHECK(r.p_value == 0.0);
  CHECK(r.score_a == doctest::Approx(100.0));
  CHECK(r.score_b == 0.0);
}

TEST_CASE("bootstrap rejects mismatched references") {
  const auto a = SelfPairs({"x y", "z w"});
  const auto b = SelfPairs({"x y", "z q"});
  CHECK_THROWS_AS(BootstrapBleuSignificance(a, b, 10, 1, 0), DataError);
}

namespace {

// Reference resampler following the documented procedure: documents are
// consecutive docSize groups, iteration i draws docs indices from
// SplitMix64(MixSeed(seed, i)), ties count one half.
double ReferenceBootstrapP(const std::vector<EvalPair>& a,
                           const std::vector<EvalPair>& b, size_t iterations,
                           size_t doc_size, uint64_t seed) {
  const size_t docs = (a.size() + doc_size - 1) / doc_size;
  std::vector<BleuStats> stats_a(docs), stats_b(docs);
  for (size_t i = 0; i < a.size(); ++i) {
    stats_a[i / doc_size].Add(BleuSentenceStats(a[i], 4));
    stats_b[i / doc_size].Add(BleuSentenceStats(b[i], 4));
  }
  double wins_b = 0;
  for (size_t it = 0; it < iterations; ++it) {
    SplitMix64 rng(MixSeed(seed, it));
    BleuStats sa, sb;
    for (size_t d = 0; d < docs; ++d) {
      const size_t pick = static_cast<size_t>(rng.Bounded(docs));
      sa.Add(stats_a[pick]);
      sb.Add(stats_b[pick]);
    }
    const double score_a = BleuScoreFromStats(sa, BleuSmoothing::kNone, 0);
    const double score_b = BleuScoreFromStats(sb, BleuSmoothing::kNone, 0);
    if (score_a < score_b) {
      wins_b += 1.0;
    } else if (score_a == score_b) {
      wins_b += 0.5;
    }
  }
  return wins_b / static_cast<double>(iterations);
}

std::vector<EvalPair> ToyBootstrapSet(bool degrade) {
  // Twenty sentences; system B drops the final token of every fourth
  // sentence, so A is moderately but not uniformly better.
  std::vector<EvalPair> pairs;
  SplitMix64 rng(777);
  const std::vector<std::string> vocab = {"kay", "liv", "panse", "manje",
                                          "bèl", "la",  "li",    "nou"};
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> tokens;
    for (int w = 0; w < 6; ++w) tokens.push_back(vocab[rng.Bounded(vocab.size())]);
    const std::string ref = JoinTokens(tokens);
    std::string hyp = ref;
    if (degrade && i % 4 == 0) {
      hyp = JoinTokens(
          std::vector<std::string>(tokens.begin(), tokens.end() - 1));
    }
    pairs.push_back(MakePair(hyp, {ref}));
  }
  return pairs;
}

}  // namespace

TEST_CASE("bootstrap p-value matches the reference resampler and is frozen") {
  const std::vector<EvalPair> a = ToyBootstrapSet(false);
  const std::vector<EvalPair> b = ToyBootstrapSet(true);
  const double reference = ReferenceBootstrapP(a, b, 1000, 2, 42);
  const BootstrapResult r = BootstrapBleuSignificance(a, b, 1000, 2, 42);
  CHECK(r.p_value == doctest::Approx(reference).epsilon(1e-15));
  // Determinism: the same seed reproduces the identical value.
  const BootstrapResult again = BootstrapBleuSignificance(a, b, 1000, 2, 42);
  CHECK(again.p_value == r.p_value);
  MESSAGE("bootstrap golden p = ", r.p_value);
}

TEST_CASE("mean difference bootstrap finds an obvious gap") {
  std::vector<double> a, b;
  for (int i = 0; i < 30; ++i) {
    a.push_back(10.0 + i % 3);
    b.push_back(1.0 + i % 3);
  }
  const MeanDiffBootstrapResult r = MeanDiffBootstrap(a, b, 500, 7);
  CHECK(r.p_value < 0.05);
  CHECK(r.mean_diff == doctest::Approx(9.0));
}
