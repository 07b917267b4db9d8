// promdet/include/promdet/aggregate.h

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

#ifndef PROMDET_AGGREGATE_H_
#define PROMDET_AGGREGATE_H_

#include <optional>
#include <string>
#include <vector>

#include "promdet/common.h"
#include "promdet/interchange.h"

namespace promdet {

/// Provenance of one feature row.
struct UnitMeta {
  std::string utt_id;
  std::size_t unit_index = 0;
  Level level = Level::kWord;
  bool labeled = false;  // false: label unknown, row is masked
  Mode mode = Mode::kSpeechText;
  L1 l1 = L1::kSynthetic;
  std::optional<int> epoch;
  bool operator==(const UnitMeta &) const = default;
};

/// Unit-level (word or syllable) feature rows with binary labels. Masked rows
/// carry label 0 and `meta[i].labeled == false`.
struct FeatureMatrix {
  Matrix rows;
  std::vector<int> labels;
  std::vector<UnitMeta> meta;
  FeatureSet set = FeatureSet::kE;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(rows.cols()); }

  /// Row subset, in the given order.
  FeatureMatrix select(const std::vector<std::size_t> &indices) const;
  /// Drops masked rows.
  FeatureMatrix labeled_only() const;
  /// Appends `other` below this matrix; dims must agree (or this is empty).
  void append(const FeatureMatrix &other);
};

/// Span-mean of one stream per unit of one record. Syllable level requires
/// `record.syllables`.
FeatureMatrix unit_embeddings(const UtteranceRecord &record, Level level, Stream stream);

/// Horizontal concatenation E|D|P; inputs must describe the same units.
FeatureMatrix concat_feature_sets(const FeatureMatrix &e, const FeatureMatrix &d,
                                  const FeatureMatrix &p);

/// Builds an E, D, P or EDP matrix over many records, in record order.
FeatureMatrix build_features(const std::vector<UtteranceRecord> &records, Level level,
                             FeatureSet set);

/// Reads an external (HB/W2V) feature CSV with header
/// "utt_id,unit_index,level,label,f0,...,f{d-1}". Rows of other levels are
/// skipped; an empty label cell marks the row unlabeled. Rows get mode
/// speech_text; l1/epoch stay default until attached from records.
FeatureMatrix import_external_features(const std::string &path, FeatureSet tag,
                                       Level level);

/// Writes `fm` in the external feature CSV format.
void export_external_features(const FeatureMatrix &fm, const std::string &path);

}  // namespace promdet

#endif  // PROMDET_AGGREGATE_H_
