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

#include <set>
#include <string>

#include "doctest.h"
#include "kouzen/codeswitch.h"
#include "kouzen/error.h"
#include "kouzen/rng.h"
#include "testutil.h"

using namespace kouzen;
using kouzen::test::DataPath;

TEST_CASE("lexicon parses tsv with comments") {
  const CodeSwitchLexicon lex = ParseLexicon("# cmt\nwater\twata\n");
  REQUIRE(lex.entries.size() == 1);
  CHECK(lex.entries.at("water") == "wata");
}

TEST_CASE("lexicon rejects duplicates naming both lines") {
  CHECK_THROWS_WITH_AS(ParseLexicon("water\twata\nWater\twaata\n"),
                       doctest::Contains("lines 1 and 2"), DataError);
}

TEST_CASE("lexicon rejects malformed lines") {
  CHECK_THROWS_WITH_AS(ParseLexicon("water wata\n"),
                       doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_AS(ParseLexicon("\twata\n"), ParseError);
  CHECK_THROWS_AS(ParseLexicon("water\t\n"), ParseError);
}

TEST_CASE("empty lexicon is valid and applies as identity") {
  const CodeSwitchLexicon lex = ParseLexicon("");
  CodeSwitchOptions opts;
  const std::vector<Sentence> in = {Normalize("the water is cold")};
  const auto out = ApplyCodeSwitch(lex, in, opts);
  CHECK(out[0].text == in[0].text);
}

TEST_CASE("rate one replaces every match") {
  const CodeSwitchLexicon lex = ParseLexicon("water\twata\n");
  CodeSwitchOptions opts;
  opts.rate = 1.0;
  CodeSwitchStats stats;
  const auto out =
      ApplyCodeSwitch(lex, {Normalize("the water is cold")}, opts, &stats);
  CHECK(out[0].text == "the wata is cold");
  CHECK(stats.tokens_seen == 4);
  CHECK(stats.matched == 1);
  CHECK(stats.replaced == 1);
}

TEST_CASE("rate zero is the identity") {
  const CodeSwitchLexicon lex = ParseLexicon("water\twata\n");
  CodeSwitchOptions opts;
  opts.rate = 0.0;
  CodeSwitchStats stats;
  const auto out =
      ApplyCodeSwitch(lex, {Normalize("Water water")}, opts, &stats);
  CHECK(out[0].text == "Water water");
  CHECK(stats.matched == 2);
  CHECK(stats.replaced == 0);
}

TEST_CASE("capitalization is restored on replacements") {
  const CodeSwitchLexicon lex = ParseLexicon("water\twata\n");
  CodeSwitchOptions opts;
  const auto out = ApplyCodeSwitch(lex, {Normalize("Water water")}, opts);
  CHECK(out[0].text == "Wata wata");
}

TEST_CASE("punctuation blocks matching unless stripped") {
  const CodeSwitchLexicon lex = ParseLexicon("water\twata\n");
  CodeSwitchOptions opts;
  const auto kept = ApplyCodeSwitch(lex, {Normalize("the water, now")}, opts);
  CHECK(kept[0].text == "the water, now");
  opts.strip_punct = true;
  const auto stripped =
      ApplyCodeSwitch(lex, {Normalize("the water, now")}, opts);
  CHECK(stripped[0].text == "the wata, now");
}

TEST_CASE("rate outside the unit interval is rejected") {
  const CodeSwitchLexicon lex = ParseLexicon("water\twata\n");
  CodeSwitchOptions opts;
  opts.rate = 1.5;
  CHECK_THROWS_AS(ApplyCodeSwitch(lex, {Normalize("x")}, opts), DomainError);
}

TEST_CASE("token counts survive and non-matches stay byte-identical") {
  const CodeSwitchLexicon lex = LoadLexicon(DataPath("lexicons/jam_eng.tsv"));
  CodeSwitchOptions opts;
  opts.rate = 0.5;
  opts.seed = 9;
  std::vector<Sentence> in;
  SplitMix64 rng(4);
  const std::vector<std::string> vocab = {"the",  "water", "is",  "cold",
                                          "girl", "boy",   "kay", "zzz"};
  for (int i = 0; i < 200; ++i) {
    std::string line;
    for (int w = 0; w < 6; ++w) {
      if (w) line += ' ';
      line += vocab[rng.Bounded(vocab.size())];
    }
    in.push_back(Normalize(line));
  }
  const auto out = ApplyCodeSwitch(lex, in, opts);
  REQUIRE(out.size() == in.size());
  for (size_t i = 0; i < in.size(); ++i) {
    REQUIRE(out[i].tokens.size() == in[i].tokens.size());
    for (size_t t = 0; t < in[i].tokens.size(); ++t) {
      if (lex.entries.count(in[i].tokens[t]) == 0) {
        CHECK(out[i].tokens[t] == in[i].tokens[t]);
      }
    }
  }
}

TEST_CASE("partial rates replace a seeded deterministic subset") {
  const CodeSwitchLexicon lex = ParseLexicon("water\twata\nboy\tbwai\n");
  std::vector<Sentence> in;
  for (int i = 0; i < 50; ++i) in.push_back(Normalize("water boy water"));
  CodeSwitchOptions half;
  half.rate = 0.5;
  half.seed = 11;
  const auto out1 = ApplyCodeSwitch(lex, in, half);
  const auto out2 = ApplyCodeSwitch(lex, in, half);
  CodeSwitchStats full_stats;
  CodeSwitchOptions full;
  full.rate = 1.0;
  full.seed = 11;
  const auto all = ApplyCodeSwitch(lex, in, full, &full_stats);
  size_t replaced = 0;
  for (size_t i = 0; i < in.size(); ++i) {
    CHECK(out1[i].text == out2[i].text);
    for (size_t t = 0; t < in[i].tokens.size(); ++t) {
      const bool changed = out1[i].tokens[t] != in[i].tokens[t];
      if (changed) {
        ++replaced;
        // Anything replaced at rate 0.5 is replaced at rate 1 too.
        CHECK(all[i].tokens[t] != in[i].tokens[t]);
      }
    }
  }
  CHECK(replaced > 0);
  CHECK(replaced < full_stats.replaced);
}

TEST_CASE("parallel application equals serial") {
  const CodeSwitchLexicon lex = LoadLexicon(DataPath("lexicons/jam_eng.tsv"));
  std::vector<Sentence> in;
  for (int i = 0; i < 64; ++i) {
    in.push_back(Normalize("the water and the girl talk together"));
  }
  CodeSwitchOptions serial;
  serial.rate = 0.7;
  serial.seed = 3;
  CodeSwitchOptions parallel = serial;
  parallel.jobs = 4;
  const auto a = ApplyCodeSwitch(lex, in, serial);
  const auto b = ApplyCodeSwitch(lex, in, parallel);
  for (size_t i = 0; i < in.size(); ++i) CHECK(a[i].text == b[i].text);
}
