// promdet/tests/aggregate_test.cc

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

#include <cmath>

#include "doctest.h"
#include "promdet/aggregate.h"
#include "promdet/synth.h"
#include "test_util.h"

using namespace promdet;
using promdet::testing::tiny_record;

TEST_CASE("word means match hand computation") {
  const auto r = tiny_record();
  const auto fm = unit_embeddings(r, Level::kWord, Stream::kEnergy);
  REQUIRE(fm.size() == 2);
  CHECK(fm.set == FeatureSet::kE);
  // Energy is stream 1: entry = 100 + 10 i + 0.5 j. Word 0 covers rows 0,1.
  CHECK(fm.rows(0, 0) == doctest::Approx(105.0));
  CHECK(fm.rows(0, 2) == doctest::Approx(106.0));
  // Word 1 covers rows 2..4, mean row 3.
  CHECK(fm.rows(1, 1) == doctest::Approx(130.5));
  CHECK(fm.labels == std::vector<int>{0, 1});
  CHECK(fm.meta[1].unit_index == 1);
  CHECK(fm.meta[1].labeled);
}

TEST_CASE("single-phone unit returns the row itself") {
  auto r = tiny_record();
  r.words = {{"a", 0, 1, 1}, {"rest", 1, 5, 0}};
  r.syllables.reset();
  const auto fm = unit_embeddings(r, Level::kWord, Stream::kDuration);
  CHECK(fm.rows.row(0) == r.embeddings.duration.row(0));
}

TEST_CASE("unlabeled units are masked") {
  auto r = tiny_record();
  r.words[0].prominent.reset();
  const auto fm = unit_embeddings(r, Level::kWord, Stream::kPitch);
  CHECK_FALSE(fm.meta[0].labeled);
  CHECK(fm.labels[0] == 0);
  const auto kept = fm.labeled_only();
  REQUIRE(kept.size() == 1);
  CHECK(kept.meta[0].unit_index == 1);
}

TEST_CASE("syllable level needs syllable spans") {
  auto r = tiny_record();
  CHECK(unit_embeddings(r, Level::kSyllable, Stream::kEnergy).size() == 2);
  r.syllables.reset();
  CHECK_THROWS_AS(unit_embeddings(r, Level::kSyllable, Stream::kEnergy), Error);
}

TEST_CASE("EDP concatenates in E, D, P order") {
  const std::vector<UtteranceRecord> recs = {tiny_record("a"), tiny_record("b")};
  const auto edp = build_features(recs, Level::kWord, FeatureSet::kEDP);
  const auto e = build_features(recs, Level::kWord, FeatureSet::kE);
  const auto d = build_features(recs, Level::kWord, FeatureSet::kD);
  const auto p = build_features(recs, Level::kWord, FeatureSet::kP);
  REQUIRE(edp.size() == 4);
  REQUIRE(edp.dim() == 9);
  CHECK(edp.set == FeatureSet::kEDP);
  CHECK(edp.rows.leftCols(3) == e.rows);
  CHECK(edp.rows.middleCols(3, 3) == d.rows);
  CHECK(edp.rows.rightCols(3) == p.rows);
  CHECK(edp.meta[2].utt_id == "b");
}

TEST_CASE("concat rejects mismatched inputs") {
  const auto r = tiny_record();
  const auto e = unit_embeddings(r, Level::kWord, Stream::kEnergy);
  auto d = unit_embeddings(r, Level::kWord, Stream::kDuration);
  const auto p = unit_embeddings(r, Level::kWord, Stream::kPitch);
  d.labels[0] = 1;
  CHECK_THROWS_AS(concat_feature_sets(e, d, p), Error);
  CHECK_THROWS_AS(concat_feature_sets(e, d.select({0}), p), Error);
}

TEST_CASE("imported sets are not aggregated") {
  CHECK_THROWS_AS(build_features({tiny_record()}, Level::kWord, FeatureSet::kHB), Error);
}

TEST_CASE("mean aggregation matches brute force on synthetic records") {
  SynthConfig c;
  c.num_utterances = 20;
  c.dim = 6;
  const auto recs = generate(c);
  for (Level level : {Level::kWord, Level::kSyllable}) {
    const auto fm = build_features(recs, level, FeatureSet::kD);
    std::size_t row = 0;
    for (const auto &r : recs) {
      std::vector<std::pair<std::size_t, std::size_t>> spans;
      if (level == Level::kWord)
        for (const auto &w : r.words) spans.emplace_back(w.phone_start, w.phone_end);
      else
        for (const auto &s : *r.syllables) spans.emplace_back(s.phone_start, s.phone_end);
      for (const auto &[a, b] : spans) {
        for (Eigen::Index j = 0; j < 6; ++j) {
          double sum = 0.0;
          for (std::size_t i = a; i < b; ++i) sum += r.embeddings.duration(static_cast<Eigen::Index>(i), j);
          CHECK(std::abs(fm.rows(static_cast<Eigen::Index>(row), j) - sum / (b - a)) <= 1e-12);
        }
        ++row;
      }
    }
    CHECK(row == fm.size());
  }
}

TEST_CASE("external CSV export and import round-trip") {
  const std::vector<UtteranceRecord> recs = {tiny_record("a"), tiny_record("b")};
  auto fm = build_features(recs, Level::kWord, FeatureSet::kP);
  fm.meta[1].labeled = false;
  fm.labels[1] = 0;
  fm.rows(0, 0) = 1.0 / 3.0;
  const auto path = promdet::testing::tmp_path("external.csv");
  export_external_features(fm, path);
  const auto back = import_external_features(path, FeatureSet::kHB, Level::kWord);
  CHECK(back.set == FeatureSet::kHB);
  CHECK(back.rows == fm.rows);
  CHECK(back.labels == fm.labels);
  CHECK_FALSE(back.meta[1].labeled);
  CHECK(back.meta[3].utt_id == "b");
  CHECK(back.meta[3].unit_index == 1);

  std::vector<std::string> warnings;
  set_warning_sink([&](std::string_view m) { warnings.emplace_back(m); });
  const auto none = import_external_features(path, FeatureSet::kW2V, Level::kSyllable);
  set_warning_sink(nullptr);
  CHECK(none.size() == 0);
  CHECK(warnings.size() == 1);
}

TEST_CASE("external CSV errors") {
  const auto path = promdet::testing::tmp_path("bad_external.csv");
  promdet::testing::spit(path, "utt,unit_index,level,label,f0\n");
  CHECK_THROWS_AS(import_external_features(path, FeatureSet::kHB, Level::kWord), Error);
  promdet::testing::spit(path, "utt_id,unit_index,level,label,f0\nu,0,word,2,1.0\n");
  CHECK_THROWS_AS(import_external_features(path, FeatureSet::kHB, Level::kWord), Error);
  promdet::testing::spit(path, "utt_id,unit_index,level,label,f0\nu,0,word,1,abc\n");
  CHECK_THROWS_AS(import_external_features(path, FeatureSet::kHB, Level::kWord), Error);
  CHECK_THROWS_AS(import_external_features(path, FeatureSet::kE, Level::kWord), Error);
}
