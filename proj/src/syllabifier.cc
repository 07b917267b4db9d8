// promdet/src/syllabifier.cc

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

#include "promdet/syllabifier.h"

#include <cctype>
#include <fstream>
#include <numeric>

#include "json.hpp"

namespace promdet {

namespace {

// Multi-consonant onsets of English in ARPAbet. Single consonants are always
// legal and are not listed.
const char *const kEnglishOnsets[] = {
    "P R",  "P L",  "P Y",  "B R",   "B L",   "B Y",   "T R",   "T W",
    "T Y",  "D R",  "D W",  "D Y",   "K R",   "K L",   "K W",   "K Y",
    "G R",  "G L",  "G W",  "G Y",   "F R",   "F L",   "F Y",   "V Y",
    "TH R", "TH W", "SH R", "HH Y",  "M Y",   "N Y",   "L Y",   "S P",
    "S T",  "S K",  "S M",  "S N",   "S L",   "S W",   "S F",   "S Y",
    "S P R", "S P L", "S P Y", "S T R", "S T Y", "S K R", "S K W", "S K Y",
    "S K L",
};

const char *const kEnglishVowels[] = {"AA", "AE", "AH", "AO", "AW", "AX", "AXR",
                                      "AY", "EH", "ER", "EY", "IH", "IX", "IY",
                                      "OW", "OY", "UH", "UW", "UX"};

std::vector<std::string> split_ws(const std::string &s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

std::string strip_stress(std::string_view phone) {
  std::size_t n = phone.size();
  while (n > 1 && std::isdigit(static_cast<unsigned char>(phone[n - 1]))) --n;
  return std::string(phone.substr(0, n));
}

PhoneInventory::PhoneInventory(std::set<std::string> vowels,
                               std::set<std::vector<std::string>> legal_onsets)
    : vowels_(std::move(vowels)), onsets_(std::move(legal_onsets)) {
  onsets_.insert({});
  for (const auto &onset : onsets_)
    for (const auto &p : onset)
      if (is_vowel(p))
        throw Error(ErrorKind::kInvalidArgument,
                    "legal onset contains vowel '" + p + "'");
}

const PhoneInventory &PhoneInventory::default_english() {
  static const PhoneInventory inv = [] {
    std::set<std::string> vowels(std::begin(kEnglishVowels), std::end(kEnglishVowels));
    std::set<std::vector<std::string>> onsets;
    for (const char *o : kEnglishOnsets) onsets.insert(split_ws(o));
    return PhoneInventory(std::move(vowels), std::move(onsets));
  }();
  return inv;
}

PhoneInventory PhoneInventory::from_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open inventory '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    std::set<std::string> vowels;
    for (const auto &v : j.at("vowels")) vowels.insert(strip_stress(v.get<std::string>()));
    std::set<std::vector<std::string>> onsets;
    for (const auto &o : j.at("legal_onsets")) {
      std::vector<std::string> cluster;
      for (const auto &p : o) cluster.push_back(strip_stress(p.get<std::string>()));
      onsets.insert(std::move(cluster));
    }
    return PhoneInventory(std::move(vowels), std::move(onsets));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::kParse, "inventory '" + path + "': " + e.what());
  }
}

bool PhoneInventory::is_vowel(std::string_view phone) const {
  return vowels_.count(strip_stress(phone)) > 0;
}

bool is_legal_onset(std::span<const std::string> cluster, const PhoneInventory &inv) {
  std::vector<std::string> key;
  key.reserve(cluster.size());
  for (const auto &p : cluster) {
    if (inv.is_vowel(p))
      throw Error(ErrorKind::kInvalidArgument,
                  "onset cluster contains vowel '" + p + "'");
    key.push_back(strip_stress(p));
  }
  if (key.size() <= 1) return true;
  return inv.onsets().count(key) > 0;
}

Syllabification syllabify_word(std::span<const std::string> phones,
                               const PhoneInventory &inv) {
  if (phones.empty())
    throw Error(ErrorKind::kInvalidArgument, "cannot syllabify an empty word");

  std::vector<std::size_t> nuclei;
  for (std::size_t i = 0; i < phones.size(); ++i)
    if (inv.is_vowel(phones[i])) nuclei.push_back(i);

  Syllabification out;
  if (nuclei.empty()) {
    std::string word;
    for (const auto &p : phones) word += (word.empty() ? "" : " ") + p;
    warn("word without a vowel kept as one degenerate syllable: " + word);
    out.spans.push_back({0, phones.size()});
    out.degenerate = true;
    return out;
  }

  std::size_t start = 0;
  for (std::size_t k = 1; k < nuclei.size(); ++k) {
    // The consonants strictly between two nuclei; the next syllable takes the
    // longest legal suffix of them as its onset.
    const std::size_t lo = nuclei[k - 1] + 1, hi = nuclei[k];
    std::size_t onset = 0;
    for (std::size_t len = hi - lo; len > 0; --len) {
      if (is_legal_onset(phones.subspan(hi - len, len), inv)) {
        onset = len;
        break;
      }
    }
    out.spans.push_back({start, hi - onset});
    start = hi - onset;
  }
  out.spans.push_back({start, phones.size()});
  return out;
}

std::vector<SyllableSpan> syllabify_record(const UtteranceRecord &record,
                                           const PhoneInventory &inv) {
  std::vector<SyllableSpan> out;
  std::span<const std::string> phones(record.phonemes);
  for (const auto &w : record.words) {
    if (w.phone_end > phones.size() || w.phone_start >= w.phone_end)
      throw Error(ErrorKind::kInvalidArgument, "word '" + w.surface + "' has a bad span");
    auto syl = syllabify_word(phones.subspan(w.phone_start, w.phone_end - w.phone_start), inv);
    for (const auto &s : syl.spans)
      out.push_back({w.phone_start + s.start, w.phone_start + s.end, std::nullopt});
  }
  return out;
}

std::vector<WordSpan> word_spans(const std::vector<std::string> &words,
                                 const std::vector<std::size_t> &counts,
                                 std::optional<std::size_t> expected_total) {
  if (words.size() != counts.size())
    throw Error(ErrorKind::kInvalidArgument,
                std::to_string(words.size()) + " words but " +
                    std::to_string(counts.size()) + " phone counts");
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (expected_total && total != *expected_total)
    throw Error(ErrorKind::kInvalidArgument,
                "phone counts sum to " + std::to_string(total) + ", expected " +
                    std::to_string(*expected_total));
  std::vector<WordSpan> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (counts[i] == 0)
      throw Error(ErrorKind::kInvalidArgument, "word '" + words[i] + "' has no phones");
    out.push_back({words[i], pos, pos + counts[i], std::nullopt});
    pos += counts[i];
  }
  return out;
}

}  // namespace promdet
