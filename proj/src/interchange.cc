// promdet/src/interchange.cc

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

#include "promdet/interchange.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "promdet/syllabifier.h"

namespace promdet {

using ordered_json = nlohmann::ordered_json;

const Matrix &EmbeddingBlock::stream(Stream s) const {
  switch (s) {
    case Stream::kDuration: return duration;
    case Stream::kEnergy: return energy;
    case Stream::kPitch: return pitch;
  }
  return energy;
}

Matrix &EmbeddingBlock::stream(Stream s) {
  return const_cast<Matrix &>(std::as_const(*this).stream(s));
}

namespace {

void add(std::vector<Violation> *out, const char *code, const std::string &msg) {
  out->push_back({code, msg});
}

std::string span_str(std::size_t a, std::size_t b) {
  return "[" + std::to_string(a) + "," + std::to_string(b) + ")";
}

bool label_ok(const std::optional<int> &l) { return !l || *l == 0 || *l == 1; }

void check_spans(const char *what, std::size_t n_phones,
                 const std::vector<std::pair<std::size_t, std::size_t>> &spans,
                 std::vector<Violation> *out) {
  for (std::size_t i = 0; i < spans.size(); ++i) {
    auto [a, b] = spans[i];
    if (a >= b)
      add(out, "empty span",
          std::string(what) + " " + std::to_string(i) + " " + span_str(a, b));
    if (b > n_phones || a >= n_phones)
      add(out, "span out of range",
          std::string(what) + " " + std::to_string(i) + " " + span_str(a, b) +
              " with " + std::to_string(n_phones) + " phonemes");
    if (i > 0 && a < spans[i - 1].second)
      add(out, "overlapping spans",
          std::string(what) + "s " + span_str(spans[i - 1].first, spans[i - 1].second) +
              " and " + span_str(a, b));
  }
}

}  // namespace

std::vector<Violation> validate(const UtteranceRecord &r, const PhoneInventory *inv) {
  if (inv == nullptr) inv = &PhoneInventory::default_english();
  std::vector<Violation> out;
  const std::size_t n = r.phonemes.size();

  // Embeddings.
  const auto &e = r.embeddings;
  if (e.duration.rows() != e.energy.rows() || e.duration.rows() != e.pitch.rows() ||
      e.duration.cols() != e.energy.cols() || e.duration.cols() != e.pitch.cols())
    add(&out, "stream shape mismatch", "duration/energy/pitch shapes differ");
  for (Stream s : {Stream::kDuration, Stream::kEnergy, Stream::kPitch}) {
    const Matrix &m = e.stream(s);
    if (static_cast<std::size_t>(m.rows()) != n)
      add(&out, "row-count mismatch",
          std::string(to_string(s)) + " has " + std::to_string(m.rows()) +
              " rows for " + std::to_string(n) + " phonemes");
    if (!m.allFinite())
      add(&out, "non-finite embedding", std::string(to_string(s)) + " stream");
  }

  // Words.
  std::vector<std::pair<std::size_t, std::size_t>> wspans;
  for (const auto &w : r.words) {
    wspans.emplace_back(w.phone_start, w.phone_end);
    if (!label_ok(w.prominent))
      add(&out, "non-binary label",
          "word '" + w.surface + "' prominent=" + std::to_string(*w.prominent));
  }
  check_spans("word", n, wspans, &out);

  if (!r.syllables) return out;

  // Syllables: same span rules, plus an exact partition of each word.
  std::vector<std::pair<std::size_t, std::size_t>> sspans;
  for (const auto &s : *r.syllables) {
    sspans.emplace_back(s.phone_start, s.phone_end);
    if (!label_ok(s.stressed))
      add(&out, "non-binary label", "syllable " + span_str(s.phone_start, s.phone_end) +
                                        " stressed=" + std::to_string(*s.stressed));
  }
  check_spans("syllable", n, sspans, &out);

  std::vector<std::vector<std::size_t>> per_word(r.words.size());
  for (std::size_t i = 0; i < sspans.size(); ++i) {
    auto [a, b] = sspans[i];
    bool placed = false;
    for (std::size_t w = 0; w < wspans.size(); ++w) {
      if (a >= wspans[w].first && b <= wspans[w].second && a < b) {
        per_word[w].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed)
      add(&out, "syllable outside word",
          "syllable " + span_str(a, b) + " is not inside any word span");
  }

  for (std::size_t w = 0; w < wspans.size(); ++w) {
    auto [ws, we] = wspans[w];
    std::size_t cursor = ws;
    bool tiled = !per_word[w].empty();
    for (std::size_t i : per_word[w]) {
      if (sspans[i].first != cursor) tiled = false;
      cursor = sspans[i].second;
    }
    if (cursor != we) tiled = false;
    if (!tiled) {
      add(&out, "syllable partition",
          "syllables do not tile word '" + r.words[w].surface + "' " + span_str(ws, we));
      continue;
    }
    if (we > n) continue;
    std::size_t word_vowels = 0;
    for (std::size_t p = ws; p < we; ++p) word_vowels += inv->is_vowel(r.phonemes[p]);
    for (std::size_t i : per_word[w]) {
      std::size_t v = 0;
      for (std::size_t p = sspans[i].first; p < sspans[i].second; ++p)
        v += inv->is_vowel(r.phonemes[p]);
      // A vowel-less word is allowed one degenerate whole-word syllable.
      const bool degenerate_ok = word_vowels == 0 && per_word[w].size() == 1;
      if (v != 1 && !degenerate_ok)
        add(&out, "syllable vowel count",
            "syllable " + span_str(sspans[i].first, sspans[i].second) + " has " +
                std::to_string(v) + " vowels");
    }
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string &msg) {
  throw Error(ErrorKind::kParse, msg);
}

std::optional<int> opt_label(const nlohmann::json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) parse_fail(std::string("'") + key + "' must be 0, 1 or null");
  return it->get<int>();
}

std::size_t index_field(const nlohmann::json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number_integer() || it->get<long long>() < 0)
    parse_fail(std::string("'") + key + "' must be a non-negative integer");
  return it->get<std::size_t>();
}

Matrix parse_matrix(const nlohmann::json &j, const char *name) {
  if (!j.is_array()) parse_fail(std::string("embeddings.") + name + " must be an array");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto &row = j[i];
    if (!row.is_array() || row.size() != cols)
      parse_fail(std::string("embeddings.") + name + " row " + std::to_string(i) +
                 " is ragged or not an array");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number())
        parse_fail(std::string("embeddings.") + name + " has a non-numeric entry");
      m(i, c) = row[c].get<double>();
    }
  }
  return m;
}

ordered_json matrix_json(const Matrix &m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json label_json(const std::optional<int> &l) {
  return l ? ordered_json(*l) : ordered_json(nullptr);
}

const nlohmann::json &require(const nlohmann::json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end()) parse_fail(std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const nlohmann::json &j, const char *key) {
  const auto &v = require(j, key);
  if (!v.is_string()) parse_fail(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

UtteranceRecord parse_record_line(const std::string &line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error &e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("record must be a JSON object");

  UtteranceRecord r;
  r.utt_id = require_string(j, "utt_id");
  r.corpus = parse_corpus(require_string(j, "corpus"));
  r.l1 = parse_l1(require_string(j, "l1"));
  r.mode = parse_mode(require_string(j, "mode"));
  if (auto it = j.find("epoch"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<long long>() < 0)
      parse_fail("'epoch' must be a non-negative integer or null");
    r.epoch = it->get<int>();
  }
  r.text = require_string(j, "text");

  const auto &ph = require(j, "phonemes");
  if (!ph.is_array()) parse_fail("'phonemes' must be an array");
  for (const auto &p : ph) {
    if (!p.is_string()) parse_fail("phoneme symbols must be strings");
    r.phonemes.push_back(p.get<std::string>());
  }

  const auto &words = require(j, "words");
  if (!words.is_array()) parse_fail("'words' must be an array");
  for (const auto &w : words) {
    if (!w.is_object()) parse_fail("word entries must be objects");
    r.words.push_back({require_string(w, "surface"), index_field(w, "phone_start"),
                       index_field(w, "phone_end"), opt_label(w, "prominent")});
  }

  if (auto it = j.find("syllables"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) parse_fail("'syllables' must be an array or null");
    std::vector<SyllableSpan> syl;
    for (const auto &s : *it) {
      if (!s.is_object()) parse_fail("syllable entries must be objects");
      syl.push_back({index_field(s, "phone_start"), index_field(s, "phone_end"),
                     opt_label(s, "stressed")});
    }
    r.syllables = std::move(syl);
  }

  const auto &emb = require(j, "embeddings");
  if (!emb.is_object()) parse_fail("'embeddings' must be an object");
  r.embeddings.duration = parse_matrix(require(emb, "duration"), "duration");
  r.embeddings.energy = parse_matrix(require(emb, "energy"), "energy");
  r.embeddings.pitch = parse_matrix(require(emb, "pitch"), "pitch");
  return r;
}

std::string serialize_record(const UtteranceRecord &r) {
  ordered_json j;
  j["utt_id"] = r.utt_id;
  j["corpus"] = std::string(to_string(r.corpus));
  j["l1"] = std::string(to_string(r.l1));
  j["mode"] = std::string(to_string(r.mode));
  j["epoch"] = r.epoch ? ordered_json(*r.epoch) : ordered_json(nullptr);
  j["text"] = r.text;
  j["phonemes"] = r.phonemes;
  ordered_json words = ordered_json::array();
  for (const auto &w : r.words) {
    ordered_json wj;
    wj["surface"] = w.surface;
    wj["phone_start"] = w.phone_start;
    wj["phone_end"] = w.phone_end;
    wj["prominent"] = label_json(w.prominent);
    words.push_back(std::move(wj));
  }
  j["words"] = std::move(words);
  if (r.syllables) {
    ordered_json syl = ordered_json::array();
    for (const auto &s : *r.syllables) {
      ordered_json sj;
      sj["phone_start"] = s.phone_start;
      sj["phone_end"] = s.phone_end;
      sj["stressed"] = label_json(s.stressed);
      syl.push_back(std::move(sj));
    }
    j["syllables"] = std::move(syl);
  } else {
    j["syllables"] = nullptr;
  }
  ordered_json emb;
  emb["duration"] = matrix_json(r.embeddings.duration);
  emb["energy"] = matrix_json(r.embeddings.energy);
  emb["pitch"] = matrix_json(r.embeddings.pitch);
  j["embeddings"] = std::move(emb);
  return j.dump();
}

namespace {

std::string join_violations(const std::vector<Violation> &v) {
  std::string s;
  for (const auto &x : v) {
    if (!s.empty()) s += "; ";
    s += x.code + ": " + x.message;
  }
  return s;
}

}  // namespace

std::vector<UtteranceRecord> load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::vector<UtteranceRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    UtteranceRecord r;
    try {
      r = parse_record_line(line);
    } catch (const Error &e) {
      throw Error(ErrorKind::kParse,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (auto v = validate(r); !v.empty())
      throw Error(ErrorKind::kValidation, path + ":" + std::to_string(lineno) +
                                              ": " + r.utt_id + ": " + join_violations(v));
    out.push_back(std::move(r));
  }
  return out;
}

void save(const std::vector<UtteranceRecord> &records, const std::string &path) {
  for (std::size_t i = 0; i < records.size(); ++i)
    if (auto v = validate(records[i]); !v.empty())
      throw Error(ErrorKind::kValidation, "refusing to write record " + std::to_string(i) +
                                              " (" + records[i].utt_id +
                                              "): " + join_violations(v));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  for (const auto &r : records) out << serialize_record(r) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace promdet
