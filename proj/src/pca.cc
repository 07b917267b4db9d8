// promdet/src/pca.cc

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

#include "promdet/pca.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "promdet/svg.h"

namespace promdet {

namespace {

// Extends `basis` (orthonormal columns) to `k` columns with unit vectors
// orthogonal to it. Needed when the Gram route runs out of nonzero
// eigenvalues.
Eigen::MatrixXd complete_basis(Eigen::MatrixXd basis, Eigen::Index d, Eigen::Index k) {
  Eigen::Index have = basis.cols();
  basis.conservativeResize(d, k);
  for (Eigen::Index j = 0; j < d && have < k; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(d, j);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c < have; ++c) v -= basis.col(c).dot(v) * basis.col(c);
    const double norm = v.norm();
    if (norm > 1e-6) basis.col(have++) = v / norm;
  }
  return basis;
}

void fix_signs(Eigen::MatrixXd *components) {
  for (Eigen::Index c = 0; c < components->cols(); ++c) {
    Eigen::Index arg = 0;
    components->col(c).cwiseAbs().maxCoeff(&arg);
    if ((*components)(arg, c) < 0) components->col(c) *= -1.0;
  }
}

}  // namespace

PcaModel pca_fit(const Matrix &rows, std::size_t k, const PcaOptions &opts) {
  const Eigen::Index n = rows.rows(), d = rows.cols();
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "PCA needs at least 2 rows");
  if (k < 1 || k > static_cast<std::size_t>(std::min(n - 1, d)))
    throw Error(ErrorKind::kInvalidArgument,
                "k=" + std::to_string(k) + " outside [1, " +
                    std::to_string(std::min(n - 1, d)) + "]");
  if (!rows.allFinite()) throw Error(ErrorKind::kInvalidArgument, "PCA input is not finite");

  PcaModel model;
  model.mean = rows.colwise().mean().transpose();
  Eigen::MatrixXd centered = rows.rowwise() - model.mean.transpose();
  if (opts.standardize) {
    Vector sd = (centered.colwise().squaredNorm() / static_cast<double>(n - 1)).cwiseSqrt();
    for (Eigen::Index c = 0; c < d; ++c)
      if (sd[c] == 0.0) sd[c] = 1.0;
    centered = centered.array().rowwise() / sd.transpose().array();
    model.scale = sd;
  }

  const Eigen::Index kk = static_cast<Eigen::Index>(k);
  const double denom = static_cast<double>(n - 1);
  Eigen::MatrixXd components(d, 0);
  Vector variance(kk);

  if (d <= n) {
    const Eigen::MatrixXd cov = centered.transpose() * centered / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    components.resize(d, kk);
    for (Eigen::Index j = 0; j < kk; ++j) {
      components.col(j) = eig.eigenvectors().col(d - 1 - j);
      variance[j] = std::max(0.0, eig.eigenvalues()[d - 1 - j]);
    }
  } else {
    // Gram route: eigenvectors u of Xc Xc^T / (n-1) map to v = Xc^T u / sqrt((n-1) l).
    const Eigen::MatrixXd gram = centered * centered.transpose() / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double top = std::max(0.0, eig.eigenvalues()[n - 1]);
    for (Eigen::Index j = 0; j < kk; ++j) {
      const double lambda = eig.eigenvalues()[n - 1 - j];
      if (lambda <= 1e-12 * std::max(top, 1.0)) break;
      components.conservativeResize(d, j + 1);
      components.col(j) =
          centered.transpose() * eig.eigenvectors().col(n - 1 - j) / std::sqrt(denom * lambda);
      components.col(j).normalize();
      variance[j] = lambda;
    }
    for (Eigen::Index j = components.cols(); j < kk; ++j) variance[j] = 0.0;
    components = complete_basis(std::move(components), d, kk);
  }

  fix_signs(&components);
  model.components = components;
  model.explained_variance = variance;
  return model;
}

Matrix pca_project(const PcaModel &model, const Matrix &rows) {
  if (static_cast<std::size_t>(rows.cols()) != model.dim())
    throw Error(ErrorKind::kDimensionMismatch,
                "PCA model has d=" + std::to_string(model.dim()) + ", input has " +
                    std::to_string(rows.cols()));
  Eigen::MatrixXd centered = rows.rowwise() - model.mean.transpose();
  if (model.scale) centered = centered.array().rowwise() / model.scale->transpose().array();
  return centered * model.components;
}

void export_scatter(const Matrix &coords, const std::vector<int> &labels,
                    const std::string &csv_path, const std::optional<std::string> &svg_path,
                    const std::string &title) {
  if (coords.rows() > 0 && coords.cols() != 2)
    throw Error(ErrorKind::kDimensionMismatch, "scatter export needs exactly 2 components");
  if (static_cast<std::size_t>(coords.rows()) != labels.size())
    throw Error(ErrorKind::kDimensionMismatch, "coords and labels differ in length");

  std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + csv_path + "' for writing");
  out << "pc1,pc2,label\n";
  for (Eigen::Index i = 0; i < coords.rows(); ++i)
    out << format_double(coords(i, 0)) << ',' << format_double(coords(i, 1)) << ','
        << labels[static_cast<std::size_t>(i)] << '\n';
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + csv_path + "'");

  if (!svg_path) return;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (coords.rows() > 0) {
    x0 = coords.col(0).minCoeff();
    x1 = coords.col(0).maxCoeff();
    y0 = coords.col(1).minCoeff();
    y1 = coords.col(1).maxCoeff();
    const double px = 0.05 * (x1 - x0), py = 0.05 * (y1 - y0);
    x0 -= px, x1 += px, y0 -= py, y1 += py;
  }
  // Stressed purple, unstressed yellow, unlabeled grey.
  const std::string kStressed = "#6a3d9a", kUnstressed = "#e6b800", kUnlabeled = "#999999";
  SvgPlot plot(x0, x1, y0, y1, title, "PC1", "PC2");
  for (Eigen::Index i = 0; i < coords.rows(); ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    plot.circle(coords(i, 0), coords(i, 1),
                l == 1 ? kStressed : (l == 0 ? kUnstressed : kUnlabeled));
  }
  plot.legend("stressed", kStressed);
  plot.legend("unstressed", kUnstressed);
  plot.write(*svg_path);
}

std::string pca_model_to_json(const PcaModel &model) {
  nlohmann::ordered_json j;
  j["mean"] = std::vector<double>(model.mean.data(), model.mean.data() + model.mean.size());
  if (model.scale)
    j["scale"] = std::vector<double>(model.scale->data(), model.scale->data() + model.scale->size());
  else
    j["scale"] = nullptr;
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (Eigen::Index c = 0; c < model.components.cols(); ++c) {
    std::vector<double> col(static_cast<std::size_t>(model.components.rows()));
    for (Eigen::Index r = 0; r < model.components.rows(); ++r)
      col[static_cast<std::size_t>(r)] = model.components(r, c);
    comps.push_back(col);
  }
  j["components"] = std::move(comps);
  j["explained_variance"] = std::vector<double>(
      model.explained_variance.data(),
      model.explained_variance.data() + model.explained_variance.size());
  return j.dump(2) + "\n";
}

}  // namespace promdet
