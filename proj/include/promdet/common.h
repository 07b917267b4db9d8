// promdet/include/promdet/common.h

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

#ifndef PROMDET_COMMON_H_
#define PROMDET_COMMON_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace promdet {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

enum class ErrorKind {
  kParse,
  kValidation,
  kInvalidArgument,
  kDimensionMismatch,
  kDegenerateInput,
  kEmptySelection,
  kIo,
};

/// All failures raised by the library. `kind()` lets callers (and the CLI)
/// distinguish input problems from I/O problems without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class Corpus { kTatoeba, kIsle, kSynthetic };
enum class L1 { kNative, kGer, kIta, kSynthetic };
enum class Mode { kSpeechText, kTextOnly };
enum class Level { kWord, kSyllable };
enum class Stream { kDuration, kEnergy, kPitch };
enum class FeatureSet { kE, kD, kP, kEDP, kHB, kW2V };

std::string_view to_string(Corpus c);
std::string_view to_string(L1 l);
std::string_view to_string(Mode m);
std::string_view to_string(Level l);
std::string_view to_string(Stream s);
std::string_view to_string(FeatureSet s);

// Parsers throw Error(kParse) on unknown names.
Corpus parse_corpus(std::string_view s);
L1 parse_l1(std::string_view s);
Mode parse_mode(std::string_view s);
Level parse_level(std::string_view s);
Stream parse_stream(std::string_view s);
FeatureSet parse_feature_set(std::string_view s);

FeatureSet feature_set_for(Stream s);

// Warnings go to stderr unless a sink is installed (tests capture them).
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

/// Seeded 64-bit Mersenne Twister with hand-rolled uniform/normal draws.
/// The std distributions are implementation-defined, which would break
/// byte-identical artifacts across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer on [0, n); n must be > 0.
  std::size_t uniform_index(std::size_t n);
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);
// Fixed-point with `decimals` digits.
std::string format_fixed(double v, int decimals);

}  // namespace promdet

#endif  // PROMDET_COMMON_H_
