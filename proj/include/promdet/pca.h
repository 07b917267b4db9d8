// promdet/include/promdet/pca.h

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

#ifndef PROMDET_PCA_H_
#define PROMDET_PCA_H_

#include <optional>
#include <string>
#include <vector>

#include "promdet/common.h"

namespace promdet {

struct PcaModel {
  Vector mean;                 // d
  std::optional<Vector> scale; // per-feature std when fitted standardized
  Matrix components;           // d x k, orthonormal columns
  Vector explained_variance;   // k, non-increasing

  std::size_t dim() const { return static_cast<std::size_t>(mean.size()); }
  std::size_t k() const { return static_cast<std::size_t>(components.cols()); }
};

struct PcaOptions {
  // Divide each centered feature by its sample std (zero-variance features
  // are left unscaled).
  bool standardize = false;
};

/// Top-k principal axes of the sample covariance of `rows`. Uses the d x d
/// covariance when d <= n and the n x n Gram matrix otherwise. Each
/// component's largest-magnitude entry is made positive.
PcaModel pca_fit(const Matrix &rows, std::size_t k, const PcaOptions &opts = {});

/// (rows - mean) [/ scale] * components.
Matrix pca_project(const PcaModel &model, const Matrix &rows);

/// Writes "pc1,pc2,label" CSV (label -1 marks an unlabeled point) and, when
/// `svg_path` is set, a 640x480 scatter plot.
void export_scatter(const Matrix &coords, const std::vector<int> &labels,
                    const std::string &csv_path,
                    const std::optional<std::string> &svg_path = std::nullopt,
                    const std::string &title = "");

std::string pca_model_to_json(const PcaModel &model);

}  // namespace promdet

#endif  // PROMDET_PCA_H_
