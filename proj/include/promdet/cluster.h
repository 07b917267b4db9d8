// promdet/include/promdet/cluster.h

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

#ifndef PROMDET_CLUSTER_H_
#define PROMDET_CLUSTER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "promdet/common.h"

namespace promdet {

struct KMeansOptions {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t max_iter = 300;
  // Stop once the summed squared centroid shift falls below
  // tol * (mean per-feature variance of the data).
  double tol = 1e-6;
  // Independent k-means++ restarts; the lowest-inertia run wins.
  std::size_t n_init = 1;
};

struct KMeansModel {
  Matrix centroids;  // k x d
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  // Inertia at each assignment step of the winning run, then the final one.
  std::vector<double> inertia_history;
};

KMeansModel kmeans_fit(const Matrix &rows, const KMeansOptions &opts);

/// Nearest centroid by squared Euclidean distance; ties go to the lower id.
std::vector<int> kmeans_assign(const KMeansModel &model, const Matrix &rows);

/// Sum of squared distances from each row to its nearest centroid.
double kmeans_inertia(const Matrix &centroids, const Matrix &rows);

/// Best-permutation agreement between two-cluster ids and binary labels.
double clustering_accuracy(const std::vector<int> &ids, const std::vector<int> &labels);

std::string kmeans_model_to_json(const KMeansModel &model);

}  // namespace promdet

#endif  // PROMDET_CLUSTER_H_
