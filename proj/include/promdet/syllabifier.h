// promdet/include/promdet/syllabifier.h

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

#ifndef PROMDET_SYLLABIFIER_H_
#define PROMDET_SYLLABIFIER_H_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "promdet/interchange.h"

namespace promdet {

/// Vowel set plus the table of legal syllable onsets used by the maximal
/// onset rule. Symbols are ARPAbet; stress digits are ignored on lookup.
class PhoneInventory {
 public:
  PhoneInventory(std::set<std::string> vowels,
                 std::set<std::vector<std::string>> legal_onsets);

  /// English ARPAbet inventory shipped with the library.
  static const PhoneInventory &default_english();
  /// Reads {"vowels":[...], "legal_onsets":[[...],...]}.
  static PhoneInventory from_json_file(const std::string &path);

  bool is_vowel(std::string_view phone) const;
  const std::set<std::string> &vowels() const { return vowels_; }
  const std::set<std::vector<std::string>> &onsets() const { return onsets_; }

 private:
  std::set<std::string> vowels_;
  std::set<std::vector<std::string>> onsets_;
};

// "AH0" -> "AH"; symbols without a trailing stress digit are returned as is.
std::string strip_stress(std::string_view phone);

/// Throws Error(kInvalidArgument) if the cluster contains a vowel.
bool is_legal_onset(std::span<const std::string> cluster,
                    const PhoneInventory &inv);

struct Syllabification {
  std::vector<PhoneSpan> spans;
  // Set when the word had no vowel and came back as one whole-word span.
  bool degenerate = false;
};

/// Maximal-onset syllabification of one word. Spans partition
/// [0, phones.size()) with exactly one vowel each. A vowel-less word yields a
/// single degenerate span and a warning.
Syllabification syllabify_word(std::span<const std::string> phones,
                               const PhoneInventory &inv);

/// Syllable spans for every word of an utterance, in utterance phone
/// coordinates. Labels are left null; gaps between words stay uncovered.
std::vector<SyllableSpan> syllabify_record(const UtteranceRecord &record,
                                           const PhoneInventory &inv);

/// Lays out contiguous word spans from per-word phone counts. When
/// `expected_total` is given the counts must sum to it.
std::vector<WordSpan> word_spans(const std::vector<std::string> &words,
                                 const std::vector<std::size_t> &counts,
                                 std::optional<std::size_t> expected_total = {});

}  // namespace promdet

#endif  // PROMDET_SYLLABIFIER_H_
