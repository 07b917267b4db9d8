// promdet/include/promdet/distances.h

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

// Similarity (cosine, jaccard) and dissimilarity (manhattan, euclidean,
// chebyshev, canberra, mahalanobis) measures between the stressed and the
// unstressed groups of a feature matrix.

#ifndef PROMDET_DISTANCES_H_
#define PROMDET_DISTANCES_H_

#include <array>
#include <optional>
#include <string>

#include "promdet/aggregate.h"

namespace promdet {

enum class Metric {
  kCosine,
  kJaccard,
  kManhattan,
  kEuclidean,
  kChebyshev,
  kCanberra,
  kMahalanobis,
};

inline constexpr std::array<Metric, 7> kAllMetrics = {
    Metric::kCosine,    Metric::kJaccard,  Metric::kManhattan,  Metric::kEuclidean,
    Metric::kChebyshev, Metric::kCanberra, Metric::kMahalanobis};

std::string_view to_string(Metric m);
bool is_similarity(Metric m);

/// One measure between two vectors. Mahalanobis needs `s_inv` (symmetric
/// positive definite, d x d). Jaccard is the Ruzicka form sum(min)/sum(max)
/// after both vectors are shifted up by -min(0, global minimum). Canberra
/// terms with |x_i| + |y_i| = 0 contribute 0. Cosine/Jaccard throw
/// Error(kDegenerateInput) for zero vectors.
double pairwise_measure(Metric metric, const Vector &x, const Vector &y,
                        const Matrix *s_inv = nullptr);

/// Mean of the labeled rows with the given label.
Vector group_centroid(const FeatureMatrix &fm, int label);

struct Covariance {
  Matrix s;
  Matrix s_inv;
};

/// Within-group pooled covariance of the labeled rows, regularized by
/// ridge * (trace(S) / d) * I (ridge * I if S has zero trace).
Covariance pooled_covariance(const FeatureMatrix &fm, double ridge = 1e-6);

struct GroupSeparationReport {
  std::array<double, 7> values{};  // indexed like kAllMetrics
  std::size_t n_stressed = 0;
  std::size_t n_unstressed = 0;
  std::size_t dim = 0;
  FeatureSet set = FeatureSet::kE;
  std::optional<Level> level;
  std::optional<Mode> mode;
  std::optional<L1> l1;

  double operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

struct SeparationOptions {
  double ridge = 1e-6;
  // Average each measure over all stressed x unstressed row pairs instead of
  // comparing the two centroids.
  bool mean_of_pairwise = false;
};

GroupSeparationReport separation_report(const FeatureMatrix &fm,
                                        const SeparationOptions &opts = {});

/// {"cosine":..., ..., "mahalanobis":..., "n_stressed":..., ...}
std::string report_to_json(const GroupSeparationReport &r);
std::string report_to_markdown(const GroupSeparationReport &r);
std::string report_to_csv(const GroupSeparationReport &r);

}  // namespace promdet

#endif  // PROMDET_DISTANCES_H_
