// promdet/tests/synth_test.cc

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
#include "promdet/distances.h"
#include "promdet/eval.h"
#include "promdet/synth.h"
#include "test_util.h"

using namespace promdet;

namespace {

SynthConfig small(std::size_t n, std::size_t dim) {
  SynthConfig c;
  c.num_utterances = n;
  c.dim = dim;
  return c;
}

double kmeans_accuracy(const std::vector<UtteranceRecord> &recs, FeatureSet set) {
  EvalData data;
  data.records = recs;
  RunSpec spec;
  spec.set = set;
  spec.classifier = Classifier::kKMeans;
  return run(spec, data).accuracy;
}

}  // namespace

TEST_CASE("generated records validate and cover both modes") {
  const auto recs = generate(small(30, 8));
  REQUIRE(recs.size() == 60);
  for (const auto &r : recs) {
    CHECK(validate(r).empty());
    CHECK(r.embeddings.energy.cols() == 8);
  }
  CHECK(recs[0].mode == Mode::kSpeechText);
  CHECK(recs[1].mode == Mode::kTextOnly);
  // Both modes describe the same utterance.
  CHECK(recs[0].utt_id == recs[1].utt_id);
  CHECK(recs[0].phonemes == recs[1].phonemes);
  CHECK(recs[0].words == recs[1].words);
}

TEST_CASE("syllable labels follow their word") {
  for (const auto &r : generate(small(10, 4))) {
    for (const auto &s : *r.syllables)
      for (const auto &w : r.words)
        if (s.phone_start >= w.phone_start && s.phone_end <= w.phone_end)
          CHECK(s.stressed == w.prominent);
  }
}

TEST_CASE("same seed, same file; other seed, other data") {
  const auto a = promdet::testing::tmp_path("synth_a.jsonl");
  const auto b = promdet::testing::tmp_path("synth_b.jsonl");
  auto c = small(5, 6);
  save(generate(c), a);
  save(generate(c), b);
  CHECK(promdet::testing::slurp(a) == promdet::testing::slurp(b));
  c.seed += 1;
  save(generate(c), b);
  CHECK(promdet::testing::slurp(a) != promdet::testing::slurp(b));
}

TEST_CASE("per-utterance sub-seeds do not depend on the utterance count") {
  const auto few = generate(small(3, 4));
  const auto many = generate(small(9, 4));
  for (std::size_t i = 0; i < few.size(); ++i) CHECK(few[i] == many[i]);
}

TEST_CASE("empirical centroid gap matches gap times scale") {
  auto c = small(400, 64);
  c.gap_duration = 4.0;
  c.modes = {Mode::kSpeechText, Mode::kTextOnly};
  const auto recs = generate(c);
  for (Mode mode : c.modes) {
    std::vector<UtteranceRecord> sel;
    for (const auto &r : recs)
      if (r.mode == mode) sel.push_back(r);
    const auto fm = build_features(sel, Level::kWord, FeatureSet::kD);
    REQUIRE(fm.size() >= 2000);
    const double gap = (group_centroid(fm, 1) - group_centroid(fm, 0)).norm();
    const double want = 4.0 * (mode == Mode::kSpeechText ? c.scale_speech_text : c.scale_text_only);
    CHECK(std::abs(gap - want) <= 0.05 * want);
  }
}

TEST_CASE("energy-only separation: energy clusters perfectly, pitch is chance") {
  auto c = small(80, 32);
  c.gap_energy = 20.0;
  c.gap_duration = c.gap_pitch = 0.0;
  c.prominent_fraction = 0.5;
  c.modes = {Mode::kSpeechText};
  const auto recs = generate(c);
  CHECK(kmeans_accuracy(recs, FeatureSet::kE) == 100.0);
  CHECK(std::abs(kmeans_accuracy(recs, FeatureSet::kP) - 50.0) <= 5.0);
}

TEST_CASE("zero gap is a null model") {
  auto c = synth_preset("null");
  c.dim = 32;
  c.modes = {Mode::kTextOnly};
  EvalData data;
  data.records = generate(c);
  RunSpec spec;
  spec.mode = Mode::kTextOnly;
  spec.set = FeatureSet::kE;
  CHECK(std::abs(run(spec, data).accuracy - 50.0) <= 3.0);
}

TEST_CASE("epoch tags scale the gap up to the full value") {
  auto c = small(4, 4);
  c.epoch_tags = {1, 2};
  const auto recs = generate(c);
  // speech_text e1, speech_text e2, text_only per utterance.
  REQUIRE(recs.size() == 12);
  CHECK(recs[0].epoch == 1);
  CHECK(recs[1].epoch == 2);
  CHECK_FALSE(recs[2].epoch.has_value());
  CHECK(recs[0].phonemes == recs[1].phonemes);
  CHECK(recs[0].embeddings.energy != recs[1].embeddings.energy);
}

TEST_CASE("L1 tags cycle") {
  auto c = small(4, 4);
  c.modes = {Mode::kTextOnly};
  c.l1s = {L1::kNative, L1::kGer, L1::kIta};
  const auto recs = generate(c);
  CHECK(recs[0].l1 == L1::kNative);
  CHECK(recs[2].l1 == L1::kIta);
  CHECK(recs[3].l1 == L1::kNative);
}

TEST_CASE("config validation") {
  SynthConfig c;
  c.sigma = 0.0;
  CHECK_THROWS_AS(validate_config(c), Error);
  c = SynthConfig{};
  c.gap_pitch = -1.0;
  CHECK_THROWS_AS(validate_config(c), Error);
  c = SynthConfig{};
  c.scale_text_only = 0.0;
  CHECK_THROWS_AS(validate_config(c), Error);
  c = SynthConfig{};
  c.min_words = 5;
  c.max_words = 2;
  CHECK_THROWS_AS(generate(c), Error);
  CHECK_THROWS_AS(synth_preset("loud"), Error);
}

TEST_CASE("config JSON round-trip") {
  auto c = synth_preset("paperlike");
  c.epoch_tags = {2, 4};
  const auto text = synth_config_to_json(c);
  CHECK(synth_config_to_json(synth_config_from_json(text)) == text);
  CHECK_THROWS_AS(synth_config_from_json("{\"sigma\": -1}"), Error);
  CHECK_THROWS_AS(synth_config_from_json("{oops"), Error);
}
