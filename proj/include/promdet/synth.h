// promdet/include/promdet/synth.h

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

// Labeled synthetic utterances with a Gaussian class-conditional embedding
// model. Each word is prominent or not; its syllables inherit the word's label
// and every phone row of a prominent word is drawn around +gap*scale/2 along a
// fixed per-stream unit direction (the others around -gap*scale/2), plus
// isotropic N(0, sigma^2) noise. With unit-level noise sigma/sqrt(len), the
// Bayes accuracy of a unit is Phi(gap*scale*sqrt(len) / (2 sigma)).

#ifndef PROMDET_SYNTH_H_
#define PROMDET_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "promdet/interchange.h"

namespace promdet {

struct SynthConfig {
  std::size_t num_utterances = 60;
  std::size_t min_phones_per_word = 2;
  std::size_t max_phones_per_word = 6;
  std::size_t min_words = 3;
  std::size_t max_words = 8;
  std::size_t dim = kDefaultEmbeddingDim;
  // Class-centroid distance per stream, in noise units.
  double gap_duration = 2.0;
  double gap_energy = 4.0;
  double gap_pitch = 1.5;
  double scale_speech_text = 1.5;
  double scale_text_only = 1.0;
  double sigma = 1.0;
  double prominent_fraction = 0.3;
  std::vector<Mode> modes = {Mode::kSpeechText, Mode::kTextOnly};
  // L1 of utterance i is l1s[i % size].
  std::vector<L1> l1s = {L1::kSynthetic};
  // When non-empty, speech_text records are emitted once per tag with the gap
  // multiplied by (position + 1) / count.
  std::vector<int> epoch_tags;
  std::uint64_t seed = 7;
};

/// Throws Error(kInvalidArgument) when a range is empty or gaps/sigma/scales
/// are out of domain.
void validate_config(const SynthConfig &config);

/// Named presets: "default", "paperlike", "null" (all gaps 0), "epochs".
SynthConfig synth_preset(const std::string &name);

std::vector<UtteranceRecord> generate(const SynthConfig &config);

SynthConfig synth_config_from_json(const std::string &text);
std::string synth_config_to_json(const SynthConfig &config);

}  // namespace promdet

#endif  // PROMDET_SYNTH_H_
