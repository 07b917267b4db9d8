// promdet/include/promdet/eval.h

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

// Experiment runner: one K-Means or DNN run per grid cell, plus assembly of
// the accuracy table and per-epoch curves.

#ifndef PROMDET_EVAL_H_
#define PROMDET_EVAL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "promdet/aggregate.h"
#include "promdet/interchange.h"

namespace promdet {

enum class Classifier { kKMeans, kDnn };
// Table blocks, in display order. kAll keeps every row regardless of L1 and is
// only used when the data carries no native/GER/ITA tags.
enum class L1Filter { kNative, kNonNative, kGer, kIta, kAll };

std::string_view to_string(Classifier c);
std::string_view to_string(L1Filter f);
/// Accepts "kmeans"/"K-M" and "dnn"/"DNN".
Classifier parse_classifier(std::string_view s);
/// Accepts "native", "nonnative", "GER", "ITA", "all".
L1Filter parse_l1_filter(std::string_view s);
/// Display name: Native, Non-Native, GER, ITA, All.
std::string_view block_title(L1Filter f);
bool l1_matches(L1Filter f, L1 l1);

struct RunSpec {
  Level level = Level::kWord;
  FeatureSet set = FeatureSet::kEDP;
  Mode mode = Mode::kSpeechText;
  L1Filter l1 = L1Filter::kAll;
  Classifier classifier = Classifier::kKMeans;
  // Unset selects records without an epoch tag.
  std::optional<int> epoch;
  std::uint64_t seed = 17;
  // DNN preset name ("word" or "syllable"); empty picks the level's preset.
  std::string preset;
  // Overrides the preset's epoch count.
  std::optional<std::size_t> epochs;
  double test_fraction = 0.2;
  // DNN only: weight the loss by inverse class frequency.
  bool class_weight = false;
};

/// Throws Error(kInvalidArgument) for HB/W2V text_only and bad fractions.
void validate_spec(const RunSpec &spec);
std::string run_name(const RunSpec &spec);

/// Records plus optional externally supplied HB/W2V matrices per level.
struct EvalData {
  std::vector<UtteranceRecord> records;
  std::map<std::pair<FeatureSet, Level>, FeatureMatrix> external;

  /// Copies the L1 tag of the records onto the external rows by utt_id; rows
  /// with no matching record keep their defaults. External rows never carry
  /// an epoch.
  void attach_external(FeatureSet tag, Level level, FeatureMatrix fm);
};

/// Labeled rows selected by the spec's level/set/mode/l1/epoch filters.
/// Throws Error(kEmptySelection) when nothing matches.
FeatureMatrix select_features(const RunSpec &spec, const EvalData &data);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class shuffle and cut; each class contributes round(n_c * fraction)
/// test rows, clamped to [1, n_c - 1]. Needs >= 2 rows per class.
Split stratified_split(const std::vector<int> &labels, double test_fraction,
                       std::uint64_t seed);

struct RunResult {
  RunSpec spec;
  double accuracy = 0.0;  // percent
  std::size_t n_units = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

/// K-Means: fit on all selected rows, best-permutation accuracy. DNN: z-score
/// with train statistics, train the level preset on the train split, score
/// the test split. When `artifact_dir` is non-empty a JSON manifest plus the
/// model (and for DNN the training curve) are written there.
RunResult run(const RunSpec &spec, const EvalData &data, const std::string &artifact_dir = "");

/// 100 * (new - base) / base; base must be positive.
double relative_improvement(double new_pct, double base_pct);

std::string run_manifest_json(const RunResult &r);

struct CellKey {
  L1Filter block = L1Filter::kAll;
  FeatureSet set = FeatureSet::kE;
  Level level = Level::kWord;
  Mode mode = Mode::kSpeechText;
  Classifier classifier = Classifier::kKMeans;
  auto operator<=>(const CellKey &) const = default;
};

struct ResultsTable {
  std::map<CellKey, double> cells;
  std::vector<L1Filter> blocks() const;  // present blocks, display order
  std::optional<double> at(const CellKey &key) const;
};

/// Pure function of the run multiset. Epoch-tagged runs are ignored; a
/// repeated cell must carry an identical value.
ResultsTable build_table(const std::vector<RunResult> &runs);

/// One markdown table; rows E, D, P, EDP, HB, W2V per present block; one
/// decimal; "--" for absent cells.
std::string table_markdown(const ResultsTable &t);
/// Wide CSV with shortest round-trip numbers and empty missing cells.
std::string table_csv(const ResultsTable &t);
ResultsTable parse_table_csv(const std::string &text);
std::string table_json(const ResultsTable &t);

struct EpochCurves {
  std::string csv;  // epoch,series,accuracy
  std::string svg;
};

/// Series per (l1, classifier, level, set) over epoch-tagged runs; untagged
/// HB/W2V runs of the same (l1, classifier, level) become flat baselines.
/// Throws Error(kInvalidArgument) with fewer than two distinct epochs.
EpochCurves epoch_curves(const std::vector<RunResult> &runs);

/// Every valid cell for the blocks/levels/sets present in `data`.
std::vector<RunSpec> full_grid(const EvalData &data, std::uint64_t seed,
                               std::optional<std::size_t> epochs = {});
/// Per-epoch speech_text runs of `set` plus untagged HB/W2V baselines.
std::vector<RunSpec> epoch_grid(const EvalData &data, FeatureSet set, std::uint64_t seed,
                                std::optional<std::size_t> epochs = {});

/// Runs specs on `jobs` threads; results keep the order of `specs`. Specs
/// whose selection is empty are dropped.
std::vector<RunResult> run_all(const std::vector<RunSpec> &specs, const EvalData &data,
                               std::size_t jobs, const std::string &artifact_dir = "");

std::string results_to_jsonl(const std::vector<RunResult> &runs);
std::vector<RunResult> results_from_jsonl(const std::string &text);

}  // namespace promdet

#endif  // PROMDET_EVAL_H_
