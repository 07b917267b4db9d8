// promdet/include/promdet/interchange.h

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

// On-disk data model shared with the embedding extractor. One utterance per
// JSONL line:
//
//   {"utt_id":..., "corpus":..., "l1":..., "mode":"speech_text"|"text_only",
//    "epoch":int|null, "text":..., "phonemes":[...],
//    "words":[{"surface","phone_start","phone_end","prominent":0|1|null}],
//    "syllables":[{"phone_start","phone_end","stressed":0|1|null}]|null,
//    "embeddings":{"duration":[[...]],"energy":[[...]],"pitch":[[...]]}}
//
// The embedding width is whatever the rows carry; 256 for TTS streams.

#ifndef PROMDET_INTERCHANGE_H_
#define PROMDET_INTERCHANGE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "promdet/common.h"

namespace promdet {

class PhoneInventory;

inline constexpr std::size_t kDefaultEmbeddingDim = 256;

/// Half-open phone index range [start, end).
struct PhoneSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - start; }
  bool operator==(const PhoneSpan &) const = default;
};

struct WordSpan {
  std::string surface;
  std::size_t phone_start = 0;
  std::size_t phone_end = 0;
  std::optional<int> prominent;  // 1 = prominent
  bool operator==(const WordSpan &) const = default;
};

struct SyllableSpan {
  std::size_t phone_start = 0;
  std::size_t phone_end = 0;
  std::optional<int> stressed;
  bool operator==(const SyllableSpan &) const = default;
};

struct EmbeddingBlock {
  Matrix duration;
  Matrix energy;
  Matrix pitch;

  const Matrix &stream(Stream s) const;
  Matrix &stream(Stream s);
  bool operator==(const EmbeddingBlock &o) const {
    return duration == o.duration && energy == o.energy && pitch == o.pitch;
  }
};

struct UtteranceRecord {
  std::string utt_id;
  Corpus corpus = Corpus::kSynthetic;
  L1 l1 = L1::kSynthetic;
  Mode mode = Mode::kSpeechText;
  std::optional<int> epoch;
  std::string text;
  std::vector<std::string> phonemes;
  std::vector<WordSpan> words;
  std::optional<std::vector<SyllableSpan>> syllables;
  EmbeddingBlock embeddings;

  bool operator==(const UtteranceRecord &) const = default;
};

struct Violation {
  std::string code;     // stable identifier, e.g. "row-count mismatch"
  std::string message;  // human-readable detail
};

/// Every invariant violation in `record`; empty means valid. Syllable vowel
/// counts are checked against `inv` (default English inventory when null).
std::vector<Violation> validate(const UtteranceRecord &record,
                                const PhoneInventory *inv = nullptr);

/// Reads a JSONL file. Throws Error(kParse) naming the line on malformed
/// input and Error(kValidation) listing violations on invalid records.
std::vector<UtteranceRecord> load(const std::string &path);

/// Writes records as JSONL. Every record is validated before the file is
/// opened; nothing is written if any record is invalid.
void save(const std::vector<UtteranceRecord> &records, const std::string &path);

// Single-line codec used by load/save.
UtteranceRecord parse_record_line(const std::string &line);
std::string serialize_record(const UtteranceRecord &record);

}  // namespace promdet

#endif  // PROMDET_INTERCHANGE_H_
