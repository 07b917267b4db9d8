// promdet/src/synth.cc

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

#include "promdet/synth.h"

#include <cmath>

#include "json.hpp"
#include "promdet/syllabifier.h"

namespace promdet {

namespace {

const std::vector<std::string> kVowels = {"AA", "AE", "AH", "AO", "EH", "ER",
                                          "EY", "IH", "IY", "OW", "UH", "UW"};
const std::vector<std::string> kConsonants = {"B", "D", "F", "G", "K", "L", "M", "N",
                                              "P", "R", "S", "T", "V", "Z", "SH", "TH"};
const char kLetters[] = "bdfgklmnprstvz";

std::size_t uniform_in(Rng &rng, std::size_t lo, std::size_t hi) {
  return lo + rng.uniform_index(hi - lo + 1);
}

Eigen::RowVectorXd unit_direction(std::uint64_t seed, Stream s, std::size_t dim) {
  Rng rng(mix_seed(seed ^ (0x5eedull + static_cast<std::uint64_t>(s))));
  Eigen::RowVectorXd u(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = rng.normal();
  return u / u.norm();
}

Eigen::RowVectorXd base_offset(std::uint64_t seed, Stream s, std::size_t dim) {
  Rng rng(mix_seed(seed ^ (0xba5eull + static_cast<std::uint64_t>(s))));
  Eigen::RowVectorXd b(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = rng.normal();
  return b;
}

double stream_gap(const SynthConfig &c, Stream s) {
  switch (s) {
    case Stream::kDuration: return c.gap_duration;
    case Stream::kEnergy: return c.gap_energy;
    case Stream::kPitch: return c.gap_pitch;
  }
  return 0.0;
}

// Mode-independent part of one utterance: layout, labels and noise.
struct Skeleton {
  std::string text;
  std::vector<std::string> phonemes;
  std::vector<WordSpan> words;
  std::vector<SyllableSpan> syllables;
  std::vector<int> phone_label;
  Matrix noise[3];
};

Skeleton make_skeleton(const SynthConfig &c, std::size_t index) {
  Rng rng(mix_seed(c.seed ^ static_cast<std::uint64_t>(index)));
  Skeleton sk;
  const std::size_t n_words = uniform_in(rng, c.min_words, c.max_words);
  for (std::size_t w = 0; w < n_words; ++w) {
    const std::size_t len = uniform_in(rng, c.min_phones_per_word, c.max_phones_per_word);
    const std::size_t n_vowels = 1 + (len - 1) / 3;
    std::vector<bool> is_vowel(len, false);
    for (std::size_t placed = 0; placed < n_vowels;) {
      const std::size_t pos = rng.uniform_index(len);
      if (!is_vowel[pos]) {
        is_vowel[pos] = true;
        ++placed;
      }
    }
    WordSpan span;
    span.phone_start = sk.phonemes.size();
    for (std::size_t i = 0; i < len; ++i) {
      const auto &pool = is_vowel[i] ? kVowels : kConsonants;
      sk.phonemes.push_back(pool[rng.uniform_index(pool.size())]);
      span.surface += kLetters[rng.uniform_index(sizeof(kLetters) - 1)];
    }
    span.phone_end = sk.phonemes.size();
    span.prominent = rng.uniform() < c.prominent_fraction ? 1 : 0;
    sk.phone_label.insert(sk.phone_label.end(), len, *span.prominent);
    if (!sk.text.empty()) sk.text += ' ';
    sk.text += span.surface;
    sk.words.push_back(std::move(span));
  }

  UtteranceRecord probe;
  probe.phonemes = sk.phonemes;
  probe.words = sk.words;
  sk.syllables = syllabify_record(probe, PhoneInventory::default_english());
  std::size_t w = 0;
  for (auto &syl : sk.syllables) {
    while (syl.phone_start >= sk.words[w].phone_end) ++w;
    syl.stressed = sk.words[w].prominent;
  }

  const auto rows = static_cast<Eigen::Index>(sk.phonemes.size());
  const auto cols = static_cast<Eigen::Index>(c.dim);
  for (auto &m : sk.noise) {
    m.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = c.sigma * rng.normal();
  }
  return sk;
}

}  // namespace

void validate_config(const SynthConfig &c) {
  auto fail = [](const std::string &msg) { throw Error(ErrorKind::kInvalidArgument, msg); };
  if (c.min_phones_per_word < 1 || c.min_phones_per_word > c.max_phones_per_word)
    fail("phones-per-word range is empty");
  if (c.min_words < 1 || c.min_words > c.max_words) fail("words-per-utterance range is empty");
  if (c.dim < 1) fail("embedding dim must be positive");
  for (double g : {c.gap_duration, c.gap_energy, c.gap_pitch})
    if (!(g >= 0.0) || !std::isfinite(g)) fail("gaps must be finite and non-negative");
  if (!(c.sigma > 0.0) || !std::isfinite(c.sigma)) fail("sigma must be positive");
  if (!(c.scale_speech_text > 0.0) || !(c.scale_text_only > 0.0))
    fail("mode scales must be positive");
  if (!(c.prominent_fraction >= 0.0 && c.prominent_fraction <= 1.0))
    fail("prominent fraction must lie in [0, 1]");
  if (c.modes.empty()) fail("no modes requested");
  if (c.l1s.empty()) fail("no L1 values given");
  for (int e : c.epoch_tags)
    if (e < 0) fail("epoch tags must be non-negative");
}

SynthConfig synth_preset(const std::string &name) {
  SynthConfig c;
  if (name == "default") return c;
  if (name == "paperlike") {
    c.num_utterances = 90;
    c.gap_energy = 40.0;
    c.gap_duration = 2.0;
    c.gap_pitch = 1.5;
    c.l1s = {L1::kNative, L1::kGer, L1::kIta};
    return c;
  }
  if (name == "null") {
    c.num_utterances = 400;
    c.gap_energy = c.gap_duration = c.gap_pitch = 0.0;
    c.prominent_fraction = 0.5;
    return c;
  }
  if (name == "epochs") {
    c = synth_preset("paperlike");
    c.modes = {Mode::kSpeechText};
    c.epoch_tags = {1, 2, 3, 4, 5};
    return c;
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown synth preset '" + name + "'");
}

std::vector<UtteranceRecord> generate(const SynthConfig &c) {
  validate_config(c);
  Eigen::RowVectorXd dir[3], base[3];
  for (Stream s : {Stream::kDuration, Stream::kEnergy, Stream::kPitch}) {
    dir[static_cast<int>(s)] = unit_direction(c.seed, s, c.dim);
    base[static_cast<int>(s)] = base_offset(c.seed, s, c.dim);
  }

  std::vector<std::optional<int>> epochs;
  if (c.epoch_tags.empty()) epochs.push_back(std::nullopt);
  for (int e : c.epoch_tags) epochs.push_back(e);

  std::vector<UtteranceRecord> out;
  for (std::size_t u = 0; u < c.num_utterances; ++u) {
    const Skeleton sk = make_skeleton(c, u);
    for (Mode mode : c.modes) {
      const double scale = mode == Mode::kSpeechText ? c.scale_speech_text : c.scale_text_only;
      // Epoch tags only describe fine-tuned speech_text runs.
      const std::size_t n_epochs = mode == Mode::kSpeechText ? epochs.size() : 1;
      for (std::size_t e = 0; e < n_epochs; ++e) {
        const double mult = n_epochs > 1 ? static_cast<double>(e + 1) / n_epochs : 1.0;
        UtteranceRecord r;
        r.utt_id = "syn" + std::to_string(u);
        r.corpus = Corpus::kSynthetic;
        r.l1 = c.l1s[u % c.l1s.size()];
        r.mode = mode;
        r.epoch = mode == Mode::kSpeechText ? epochs[e] : std::nullopt;
        r.text = sk.text;
        r.phonemes = sk.phonemes;
        r.words = sk.words;
        r.syllables = sk.syllables;
        for (Stream s : {Stream::kDuration, Stream::kEnergy, Stream::kPitch}) {
          const int si = static_cast<int>(s);
          const double half = 0.5 * stream_gap(c, s) * scale * mult;
          Matrix m = sk.noise[si];
          for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double sign = sk.phone_label[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
            m.row(i) += base[si] + sign * half * dir[si];
          }
          r.embeddings.stream(s) = std::move(m);
        }
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

SynthConfig synth_config_from_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("synth config: ") + e.what());
  }
  SynthConfig c;
  try {
    c.num_utterances = j.value("num_utterances", c.num_utterances);
    c.min_phones_per_word = j.value("min_phones_per_word", c.min_phones_per_word);
    c.max_phones_per_word = j.value("max_phones_per_word", c.max_phones_per_word);
    c.min_words = j.value("min_words", c.min_words);
    c.max_words = j.value("max_words", c.max_words);
    c.dim = j.value("dim", c.dim);
    c.gap_duration = j.value("gap_duration", c.gap_duration);
    c.gap_energy = j.value("gap_energy", c.gap_energy);
    c.gap_pitch = j.value("gap_pitch", c.gap_pitch);
    c.scale_speech_text = j.value("scale_speech_text", c.scale_speech_text);
    c.scale_text_only = j.value("scale_text_only", c.scale_text_only);
    c.sigma = j.value("sigma", c.sigma);
    c.prominent_fraction = j.value("prominent_fraction", c.prominent_fraction);
    c.seed = j.value("seed", c.seed);
    if (j.contains("modes")) {
      c.modes.clear();
      for (const auto &m : j.at("modes")) c.modes.push_back(parse_mode(m.get<std::string>()));
    }
    if (j.contains("l1s")) {
      c.l1s.clear();
      for (const auto &l : j.at("l1s")) c.l1s.push_back(parse_l1(l.get<std::string>()));
    }
    if (j.contains("epoch_tags")) c.epoch_tags = j.at("epoch_tags").get<std::vector<int>>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParse, std::string("synth config: ") + e.what());
  }
  validate_config(c);
  return c;
}

std::string synth_config_to_json(const SynthConfig &c) {
  nlohmann::ordered_json j;
  j["num_utterances"] = c.num_utterances;
  j["min_phones_per_word"] = c.min_phones_per_word;
  j["max_phones_per_word"] = c.max_phones_per_word;
  j["min_words"] = c.min_words;
  j["max_words"] = c.max_words;
  j["dim"] = c.dim;
  j["gap_duration"] = c.gap_duration;
  j["gap_energy"] = c.gap_energy;
  j["gap_pitch"] = c.gap_pitch;
  j["scale_speech_text"] = c.scale_speech_text;
  j["scale_text_only"] = c.scale_text_only;
  j["sigma"] = c.sigma;
  j["prominent_fraction"] = c.prominent_fraction;
  j["modes"] = nlohmann::ordered_json::array();
  for (Mode m : c.modes) j["modes"].push_back(std::string(to_string(m)));
  j["l1s"] = nlohmann::ordered_json::array();
  for (L1 l : c.l1s) j["l1s"].push_back(std::string(to_string(l)));
  j["epoch_tags"] = c.epoch_tags;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

}  // namespace promdet
