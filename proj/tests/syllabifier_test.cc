// promdet/tests/syllabifier_test.cc

// Copyright 2026  The promdet Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <vector>

#include "doctest.h"
#include "promdet/syllabifier.h"
#include "test_util.h"

using namespace promdet;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> spans_of(const std::vector<std::string> &phones) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto &s : syllabify_word(phones, PhoneInventory::default_english()).spans)
    out.emplace_back(s.start, s.end);
  return out;
}

using Spans = std::vector<std::pair<std::size_t, std::size_t>>;

}  // namespace

TEST_CASE("strip_stress") {
  CHECK(strip_stress("AH0") == "AH");
  CHECK(strip_stress("EY1") == "EY");
  CHECK(strip_stress("T") == "T");
}

TEST_CASE("maximal onset examples") {
  // a-bout
  CHECK(spans_of({"AH0", "B", "AW1", "T"}) == Spans{{0, 1}, {1, 4}});
  // ex-tra: S T R is a legal onset
  CHECK(spans_of({"EH1", "K", "S", "T", "R", "AH0"}) == Spans{{0, 2}, {2, 6}});
  // at-las: T L is not
  CHECK(spans_of({"AE1", "T", "L", "AH0", "S"}) == Spans{{0, 2}, {2, 5}});
  // com-pu-ter: P Y legal, M P Y not
  CHECK(spans_of({"K", "AH0", "M", "P", "Y", "UW1", "T", "ER0"}) ==
        Spans{{0, 3}, {3, 6}, {6, 8}});
  // adjacent vowels: empty onset
  CHECK(spans_of({"IY", "AA"}) == Spans{{0, 1}, {1, 2}});
  CHECK(spans_of({"AH"}) == Spans{{0, 1}});
}

TEST_CASE("vowel-less word is one degenerate syllable with a warning") {
  std::vector<std::string> warnings;
  set_warning_sink([&](std::string_view m) { warnings.emplace_back(m); });
  const std::vector<std::string> phones = {"S", "T"};
  const auto syl = syllabify_word(phones, PhoneInventory::default_english());
  set_warning_sink(nullptr);
  CHECK(syl.degenerate);
  REQUIRE(syl.spans.size() == 1);
  CHECK(syl.spans[0] == PhoneSpan{0, 2});
  CHECK(warnings.size() == 1);
}

TEST_CASE("empty word is rejected") {
  CHECK_THROWS_AS(syllabify_word(std::vector<std::string>{}, PhoneInventory::default_english()),
                  Error);
}

TEST_CASE("is_legal_onset") {
  const auto &inv = PhoneInventory::default_english();
  const std::vector<std::string> str = {"S", "T", "R"}, tl = {"T", "L"}, t = {"T"};
  CHECK(is_legal_onset(str, inv));
  CHECK_FALSE(is_legal_onset(tl, inv));
  CHECK(is_legal_onset(t, inv));
  CHECK(is_legal_onset(std::span<const std::string>(), inv));
  const std::vector<std::string> with_vowel = {"S", "AH"};
  CHECK_THROWS_AS(is_legal_onset(with_vowel, inv), Error);
}

TEST_CASE("custom inventory") {
  PhoneInventory inv({"a", "i"}, {{"p", "r"}});
  const std::vector<std::string> w = {"a", "p", "r", "i"};
  const auto syl = syllabify_word(w, inv);
  REQUIRE(syl.spans.size() == 2);
  CHECK(syl.spans[1].start == 1);
  CHECK_THROWS_AS(PhoneInventory({"a"}, {{"a"}}), Error);
}

TEST_CASE("inventory from JSON file") {
  const auto path = promdet::testing::tmp_path("inventory.json");
  promdet::testing::spit(path, R"({"vowels":["a","o"],"legal_onsets":[["k","l"]]})");
  const auto inv = PhoneInventory::from_json_file(path);
  CHECK(inv.is_vowel("a"));
  CHECK_FALSE(inv.is_vowel("k"));
  const std::vector<std::string> w = {"o", "k", "l", "a"};
  CHECK(syllabify_word(w, inv).spans[1].start == 1);
}

TEST_CASE("syllabify_record works in utterance coordinates") {
  auto r = promdet::testing::tiny_record();
  r.syllables.reset();
  const auto syl = syllabify_record(r, PhoneInventory::default_english());
  REQUIRE(syl.size() == 2);
  CHECK(syl[0].phone_start == 0);
  CHECK(syl[0].phone_end == 2);
  CHECK(syl[1].phone_start == 2);
  CHECK(syl[1].phone_end == 5);
  CHECK_FALSE(syl[1].stressed.has_value());
  r.syllables = syl;
  CHECK(validate(r).empty());
}

TEST_CASE("word_spans lays out contiguous spans") {
  const auto spans = word_spans({"a", "bc"}, {1, 2}, 3);
  REQUIRE(spans.size() == 2);
  CHECK(spans[1].phone_start == 1);
  CHECK(spans[1].phone_end == 3);
  CHECK_THROWS_AS(word_spans({"a"}, {1}, 2), Error);
  CHECK_THROWS_AS(word_spans({"a", "b"}, {1}), Error);
  CHECK_THROWS_AS(word_spans({"a"}, {0}), Error);
}

TEST_CASE("random words: partition, one vowel each, legal maximal onsets") {
  const auto &inv = PhoneInventory::default_english();
  const std::vector<std::string> alphabet = {"AA", "IY", "UW", "P", "T", "K", "S",
                                             "R", "L", "Y", "W", "M", "N"};
  set_warning_sink([](std::string_view) {});
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::string> w(1 + rng.uniform_index(8));
    for (auto &p : w) p = alphabet[rng.uniform_index(alphabet.size())];
    const auto syl = syllabify_word(std::span<const std::string>(w), inv);
    if (syl.degenerate) continue;
    std::size_t pos = 0;
    for (std::size_t s = 0; s < syl.spans.size(); ++s) {
      const auto &sp = syl.spans[s];
      REQUIRE(sp.start == pos);
      REQUIRE(sp.end > sp.start);
      pos = sp.end;
      std::size_t vowels = 0, nucleus = 0;
      for (std::size_t i = sp.start; i < sp.end; ++i)
        if (inv.is_vowel(w[i])) {
          ++vowels;
          nucleus = i;
        }
      REQUIRE(vowels == 1);
      if (s == 0) continue;
      const std::span<const std::string> all(w);
      REQUIRE(is_legal_onset(all.subspan(sp.start, nucleus - sp.start), inv));
      // No longer onset taken from the previous coda would be legal.
      std::size_t prev_nucleus = sp.start - 1;
      while (!inv.is_vowel(w[prev_nucleus])) --prev_nucleus;
      for (std::size_t lo = prev_nucleus + 1; lo < sp.start; ++lo)
        REQUIRE_FALSE(is_legal_onset(all.subspan(lo, nucleus - lo), inv));
    }
    REQUIRE(pos == w.size());
  }
  set_warning_sink(nullptr);
}
