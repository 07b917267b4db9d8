// promdet/src/common.cc

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

#include "promdet/common.h"

#include <charconv>
#include <cmath>
#include <iostream>
#include <mutex>

namespace promdet {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const std::pair<std::string_view, E> (&table)[N],
             std::string_view what) {
  for (const auto &[name, value] : table)
    if (name == s) return value;
  throw Error(ErrorKind::kParse,
              "unknown " + std::string(what) + " '" + std::string(s) + "'");
}

constexpr std::pair<std::string_view, Corpus> kCorpora[] = {
    {"tatoeba", Corpus::kTatoeba},
    {"isle", Corpus::kIsle},
    {"synthetic", Corpus::kSynthetic}};
constexpr std::pair<std::string_view, L1> kL1s[] = {
    {"native", L1::kNative},
    {"GER", L1::kGer},
    {"ITA", L1::kIta},
    {"synthetic", L1::kSynthetic}};
constexpr std::pair<std::string_view, Mode> kModes[] = {
    {"speech_text", Mode::kSpeechText}, {"text_only", Mode::kTextOnly}};
constexpr std::pair<std::string_view, Level> kLevels[] = {
    {"word", Level::kWord}, {"syllable", Level::kSyllable}};
constexpr std::pair<std::string_view, Stream> kStreams[] = {
    {"duration", Stream::kDuration},
    {"energy", Stream::kEnergy},
    {"pitch", Stream::kPitch}};
constexpr std::pair<std::string_view, FeatureSet> kSets[] = {
    {"E", FeatureSet::kE},   {"D", FeatureSet::kD},   {"P", FeatureSet::kP},
    {"EDP", FeatureSet::kEDP}, {"HB", FeatureSet::kHB}, {"W2V", FeatureSet::kW2V}};

template <typename E, std::size_t N>
std::string_view name_of(E v, const std::pair<std::string_view, E> (&table)[N]) {
  for (const auto &[name, value] : table)
    if (value == v) return name;
  return "?";
}

std::mutex g_sink_mutex;
WarningSink g_sink;

}  // namespace

std::string_view to_string(Corpus c) { return name_of(c, kCorpora); }
std::string_view to_string(L1 l) { return name_of(l, kL1s); }
std::string_view to_string(Mode m) { return name_of(m, kModes); }
std::string_view to_string(Level l) { return name_of(l, kLevels); }
std::string_view to_string(Stream s) { return name_of(s, kStreams); }
std::string_view to_string(FeatureSet s) { return name_of(s, kSets); }

Corpus parse_corpus(std::string_view s) { return parse_enum(s, kCorpora, "corpus"); }
L1 parse_l1(std::string_view s) { return parse_enum(s, kL1s, "l1"); }
Mode parse_mode(std::string_view s) { return parse_enum(s, kModes, "mode"); }
Level parse_level(std::string_view s) { return parse_enum(s, kLevels, "level"); }
Stream parse_stream(std::string_view s) { return parse_enum(s, kStreams, "stream"); }
FeatureSet parse_feature_set(std::string_view s) {
  return parse_enum(s, kSets, "feature set");
}

FeatureSet feature_set_for(Stream s) {
  switch (s) {
    case Stream::kDuration: return FeatureSet::kD;
    case Stream::kEnergy: return FeatureSet::kE;
    case Stream::kPitch: return FeatureSet::kP;
  }
  return FeatureSet::kE;
}

void set_warning_sink(WarningSink sink) {
  std::lock_guard<std::mutex> lock(g_sink_mutex);
  g_sink = std::move(sink);
}

void warn(std::string_view message) {
  std::lock_guard<std::mutex> lock(g_sink_mutex);
  if (g_sink) {
    g_sink(message);
  } else {
    std::cerr << "WARNING: " << message << '\n';
  }
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  // Rejection sampling keeps the draw unbiased for any n.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

double Rng::normal() {
  if (spare_normal_) {
    double v = *spare_normal_;
    spare_normal_.reset();
    return v;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  return u * f;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                           decimals);
  return std::string(buf, res.ptr);
}

}  // namespace promdet
