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

#include <string>

#include "doctest.h"
#include "kouzen/error.h"
#include "kouzen/rng.h"
#include "kouzen/text.h"
#include "kouzen/translit.h"
#include "testutil.h"

using namespace kouzen;
using kouzen::test::DataPath;

TEST_CASE("rule file parses classes and contexts") {
  const RewriteRuleSet set =
      ParseRuleFile("::V:: = a e i o u\nou -> w / _ ::V::\n");
  REQUIRE(set.classes.size() == 1);
  CHECK(set.classes[0].name == "V");
  CHECK(set.classes[0].members.size() == 5);
  REQUIRE(set.rules.size() == 1);
  CHECK(set.rules[0].right.has_value());
  CHECK_FALSE(set.rules[0].left.has_value());
}

TEST_CASE("rule file parses unconditional rules") {
  const RewriteRuleSet set = ParseRuleFile("é -> e\n");
  REQUIRE(set.rules.size() == 1);
  CHECK(set.rules[0].replacement == DecodeUtf8("e"));
}

TEST_CASE("rule file rejects an empty pattern") {
  CHECK_THROWS_WITH_AS(ParseRuleFile("-> x\n"), doctest::Contains("line 1"),
                       ParseError);
}

TEST_CASE("rule file rejects undefined classes") {
  CHECK_THROWS_WITH_AS(ParseRuleFile("ou -> w / _ ::V::\n"),
                       doctest::Contains("::V::"), DataError);
}

TEST_CASE("rule file rejects duplicate class names") {
  CHECK_THROWS_AS(ParseRuleFile("::V:: = a\n::V:: = b\n"), DataError);
}

TEST_CASE("comments and blank lines are ignored") {
  const RewriteRuleSet set = ParseRuleFile("# nothing\n\né -> e\n");
  CHECK(set.rules.size() == 1);
  CHECK(set.rules[0].index == 0);
}

TEST_CASE("empty replacement is written as zero") {
  const RewriteRuleSet set = ParseRuleFile("h -> 0\n");
  CHECK(ApplyRules(set, "hache") == "ace");
}

TEST_CASE("empty rule set is the identity") {
  const RewriteRuleSet set = ParseRuleFile("");
  CHECK(ApplyRules(set, "maison") == "maison");
}

TEST_CASE("leftmost longest with first-rule tie break") {
  // Longest match wins regardless of order.
  const RewriteRuleSet set = ParseRuleFile("ab -> X\na -> Y\n");
  CHECK(ApplyRules(set, "ab") == "X");
  const RewriteRuleSet reversed = ParseRuleFile("a -> Y\nab -> X\n");
  CHECK(ApplyRules(reversed, "ab") == "X");
  // Equal lengths: file order decides.
  const RewriteRuleSet tie = ParseRuleFile("a -> 1\na -> 2\n");
  CHECK(ApplyRules(tie, "a") == "1");
}

TEST_CASE("replacement output is never rescanned") {
  const RewriteRuleSet set = ParseRuleFile("a -> b\nb -> c\n");
  CHECK(ApplyRules(set, "a") == "b");
  CHECK(ApplyRules(set, "ab") == "bc");
}

TEST_CASE("context classes gate application") {
  const RewriteRuleSet set =
      ParseRuleFile("::V:: = a e i o u\nou -> w / _ ::V::\nou -> ou\n");
  CHECK(ApplyRules(set, "oua") == "wa");
  CHECK(ApplyRules(set, "bout") == "bout");
}

TEST_CASE("boundary anchors respect token edges") {
  const RewriteRuleSet set = ParseRuleFile("h -> 0 / # _\ns -> 0 / _ #\n");
  CHECK(ApplyRules(set, "homme") == "omme");
  CHECK(ApplyRules(set, "ahs") == "ah");
  CHECK(ApplyRules(set, "les hommes") == "le omme");
}

TEST_CASE("anchored rules never fire word-internally") {
  const RewriteRuleSet set = ParseRuleFile("a -> X / # _\n");
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::string input;
    const size_t tokens = 1 + rng.Bounded(4);
    for (size_t t = 0; t < tokens; ++t) {
      if (t) input += ' ';
      const size_t len = 1 + rng.Bounded(5);
      for (size_t i = 0; i < len; ++i) {
        input += static_cast<char>('a' + rng.Bounded(3));
      }
    }
    const std::string output = ApplyRules(set, input);
    // Every replaced position must be a token start: check by
    // reconstructing from the token-wise application.
    std::string expected;
    for (const std::string& token : SplitWhitespace(input)) {
      std::string t = token;
      if (t.front() == 'a') t.replace(0, 1, "X");
      if (!expected.empty()) expected += ' ';
      expected += t;
    }
    CHECK(output == expected);
  }
}

TEST_CASE("left context reads the original input") {
  // The left neighbor was rewritten earlier in the scan; contexts match
  // the input, not the output.
  const RewriteRuleSet set = ParseRuleFile("a -> x\nb -> y / a _\n");
  CHECK(ApplyRules(set, "ab") == "xy");
}

TEST_CASE("multi-character class members match as units") {
  const RewriteRuleSet set =
      ParseRuleFile("::N:: = an on\nk -> g / ::N:: _\n");
  CHECK(ApplyRules(set, "ank") == "ang");
  CHECK(ApplyRules(set, "ek") == "ek");
}

TEST_CASE("application is deterministic") {
  const RewriteRuleSet set = LoadRuleFile(DataPath("rules/fra_hat.rules"));
  const std::string once = ApplyRules(set, "elle ne pensait pas descendre");
  for (int i = 0; i < 3; ++i) {
    CHECK(ApplyRules(set, "elle ne pensait pas descendre") == once);
  }
}

TEST_CASE("starter fra-hat rules map unité to inite") {
  const RewriteRuleSet set = LoadRuleFile(DataPath("rules/fra_hat.rules"));
  CHECK(ApplyRules(set, "unité") == "inite");
}

TEST_CASE("token application folds case and restores capitals") {
  const RewriteRuleSet set = ParseRuleFile("é -> e\nu -> i\n");
  CHECK(ApplyToken(set, "Unité") == "Inite");
  CHECK(ApplyToken(set, "unité") == "inite");
}

TEST_CASE("g2p maps the paper pair and keeps haitian stable") {
  const RewriteRuleSet fra =
      LoadRuleFile(DataPath("rules/fra_ipa.rules"), "fra", "ipa");
  CHECK(G2p(fra, "unité") == "ynite");
  const RewriteRuleSet hat =
      LoadRuleFile(DataPath("rules/hat_ipa.rules"), "hat", "ipa");
  CHECK(G2p(hat, "inite") == "inite");
}

TEST_CASE("g2p refuses a non-ipa rule set") {
  const RewriteRuleSet set = ParseRuleFile("a -> b\n", "fra", "hat");
  CHECK_THROWS_AS(G2p(set, "a"), DomainError);
}

TEST_CASE("jamaican starter file has exactly 37 rules") {
  const RewriteRuleSet jam =
      LoadRuleFile(DataPath("rules/jam_ipa.rules"), "jam", "ipa");
  CHECK(jam.rules.size() == 37);
  CHECK(G2p(jam, "wata") == "wata");
  CHECK(G2p(jam, "likkle") == "likklɛ");
}

TEST_CASE("corpus transliteration preserves shape and provenance") {
  const RewriteRuleSet set = LoadRuleFile(DataPath("rules/fra_hat.rules"));
  MonoCorpus corpus;
  corpus.lang = "fra";
  corpus.sentences.push_back(Normalize("elle ne pensait pas"));
  corpus.sentences.push_back(Normalize("unité"));
  RewriteStats stats;
  const MonoCorpus out = Transliterate(set, corpus, &stats);
  REQUIRE(out.size() == 2);
  CHECK(out.sentences[0].text == "ele ne panse pa");
  CHECK(out.sentences[1].text == "inite");
  CHECK(stats.tokens == 5);
  CHECK(stats.rules_fired > 0);

  ParallelCorpus bitext;
  bitext.source_lang = "fra";
  bitext.target_lang = "eng";
  bitext.pairs.emplace_back(Normalize("Unité descendre"),
                            Normalize("unity to descend"));
  const ParallelCorpus tout = Transliterate(set, bitext, Side::kSource);
  CHECK(tout.provenance == Provenance::kTransformed);
  CHECK(tout.pairs[0].first.text == "Inite desann");
  CHECK(tout.pairs[0].second.text == "unity to descend");
}

TEST_CASE("empty corpus and identity rules are no-ops") {
  const RewriteRuleSet empty = ParseRuleFile("");
  MonoCorpus corpus;
  corpus.lang = "fra";
  CHECK(Transliterate(empty, corpus).size() == 0);
  corpus.sentences.push_back(Normalize("le livre est là"));
  const MonoCorpus out = Transliterate(empty, corpus);
  CHECK(out.sentences[0].text == "le livre est là");
}

TEST_CASE("parallel transliteration matches serial") {
  const RewriteRuleSet set = LoadRuleFile(DataPath("rules/fra_hat.rules"));
  MonoCorpus corpus;
  corpus.lang = "fra";
  SplitMix64 rng(5);
  for (int i = 0; i < 64; ++i) {
    std::string line;
    for (int w = 0; w < 5; ++w) {
      if (w) line += ' ';
      for (int c = 0; c < 6; ++c) {
        line += static_cast<char>('a' + rng.Bounded(26));
      }
    }
    corpus.sentences.push_back(Normalize(line));
  }
  const MonoCorpus serial = Transliterate(set, corpus, nullptr, 1);
  const MonoCorpus parallel = Transliterate(set, corpus, nullptr, 4);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial.sentences[i].text == parallel.sentences[i].text);
  }
}

TEST_CASE("random rule sets behave deterministically and never cascade") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    // Random chain pairs a->b, b->c over a 4-letter alphabet.
    const char a = static_cast<char>('a' + rng.Bounded(4));
    char b = static_cast<char>('a' + rng.Bounded(4));
    while (b == a) b = static_cast<char>('a' + rng.Bounded(4));
    char c = static_cast<char>('a' + rng.Bounded(4));
    while (c == b) c = static_cast<char>('a' + rng.Bounded(4));
    const std::string file = std::string(1, a) + " -> " + b + "\n" + b +
                             " -> " + c + "\n";
    const RewriteRuleSet set = ParseRuleFile(file);
    CHECK(ApplyRules(set, std::string(1, a)) == std::string(1, b));
    std::string input;
    for (int i = 0; i < 12; ++i) {
      input += static_cast<char>('a' + rng.Bounded(4));
    }
    const std::string out1 = ApplyRules(set, input);
    CHECK(ApplyRules(set, input) == out1);
  }
}
