// promdet/src/cluster.cc

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

#include "promdet/cluster.h"

#include <algorithm>
#include <limits>

#include "json.hpp"

namespace promdet {

namespace {

struct Assignment {
  std::vector<int> ids;
  std::vector<double> dist;  // squared distance to the assigned centroid
  double inertia = 0.0;
};

Assignment assign_rows(const Matrix &centroids, const Matrix &rows) {
  Assignment a;
  a.ids.resize(static_cast<std::size_t>(rows.rows()));
  a.dist.resize(a.ids.size());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
      const double d = (rows.row(i) - centroids.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    a.ids[static_cast<std::size_t>(i)] = best;
    a.dist[static_cast<std::size_t>(i)] = best_d;
    a.inertia += best_d;
  }
  return a;
}

Matrix kmeans_plus_plus(const Matrix &rows, std::size_t k, Rng &rng) {
  const Eigen::Index n = rows.rows();
  Matrix centroids(static_cast<Eigen::Index>(k), rows.cols());
  centroids.row(0) = rows.row(static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::size_t>(n))));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    d2[static_cast<std::size_t>(i)] = (rows.row(i) - centroids.row(0)).squaredNorm();

  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    Eigen::Index pick = 0;
    if (total <= 0.0) {
      pick = static_cast<Eigen::Index>(rng.uniform_index(static_cast<std::size_t>(n)));
    } else {
      double r = rng.uniform() * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        r -= d2[static_cast<std::size_t>(i)];
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
      // Guard against rounding landing on a zero-weight row.
      while (d2[static_cast<std::size_t>(pick)] == 0.0 && pick > 0) --pick;
    }
    centroids.row(static_cast<Eigen::Index>(c)) = rows.row(pick);
    for (Eigen::Index i = 0; i < n; ++i)
      d2[static_cast<std::size_t>(i)] =
          std::min(d2[static_cast<std::size_t>(i)],
                   (rows.row(i) - centroids.row(static_cast<Eigen::Index>(c))).squaredNorm());
  }
  return centroids;
}

KMeansModel lloyd(const Matrix &rows, const KMeansOptions &opts, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t k = opts.k;
  const Eigen::Index d = rows.cols();
  KMeansModel model;
  model.seed = opts.seed;
  model.centroids = kmeans_plus_plus(rows, k, rng);

  const Eigen::RowVectorXd mean = rows.colwise().mean();
  const double mean_var =
      (rows.rowwise() - mean).colwise().squaredNorm().sum() /
      (static_cast<double>(rows.rows()) * static_cast<double>(std::max<Eigen::Index>(d, 1)));
  const double tol = opts.tol * mean_var;

  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    Assignment a = assign_rows(model.centroids, rows);
    model.inertia_history.push_back(a.inertia);
    model.iterations = it;

    Matrix next = Matrix::Zero(static_cast<Eigen::Index>(k), d);
    std::vector<std::size_t> counts(k, 0);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const int c = a.ids[static_cast<std::size_t>(i)];
      next.row(c) += rows.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    for (std::size_t c = 0; c < k; ++c)
      if (counts[c] > 0) next.row(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);

    // Empty cluster repair: seed it with the point of the largest cluster that
    // lies farthest from its (old) centroid.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      const std::size_t largest = static_cast<std::size_t>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < a.ids.size(); ++i)
        if (static_cast<std::size_t>(a.ids[i]) == largest && a.dist[i] > far_d) {
          far_d = a.dist[i];
          far = i;
        }
      next.row(static_cast<Eigen::Index>(c)) = rows.row(static_cast<Eigen::Index>(far));
      a.ids[far] = static_cast<int>(c);
      a.dist[far] = 0.0;
      --counts[largest];
      counts[c] = 1;
    }

    const double shift = (next - model.centroids).squaredNorm();
    model.centroids = std::move(next);
    if (shift <= tol) break;
  }
  model.inertia = kmeans_inertia(model.centroids, rows);
  model.inertia_history.push_back(model.inertia);
  return model;
}

}  // namespace

double kmeans_inertia(const Matrix &centroids, const Matrix &rows) {
  return assign_rows(centroids, rows).inertia;
}

KMeansModel kmeans_fit(const Matrix &rows, const KMeansOptions &opts) {
  if (opts.k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be at least 1");
  if (static_cast<std::size_t>(rows.rows()) < opts.k)
    throw Error(ErrorKind::kInvalidArgument,
                std::to_string(rows.rows()) + " rows cannot form " + std::to_string(opts.k) +
                    " clusters");
  if (!rows.allFinite()) throw Error(ErrorKind::kInvalidArgument, "k-means input is not finite");

  KMeansModel best;
  for (std::size_t run = 0; run < std::max<std::size_t>(opts.n_init, 1); ++run) {
    const std::uint64_t run_seed = run == 0 ? opts.seed : mix_seed(opts.seed + run);
    KMeansModel m = lloyd(rows, opts, run_seed);
    if (run == 0 || m.inertia < best.inertia) best = std::move(m);
  }
  return best;
}

std::vector<int> kmeans_assign(const KMeansModel &model, const Matrix &rows) {
  if (rows.cols() != model.centroids.cols())
    throw Error(ErrorKind::kDimensionMismatch,
                "model has d=" + std::to_string(model.centroids.cols()) + ", input has " +
                    std::to_string(rows.cols()));
  return assign_rows(model.centroids, rows).ids;
}

double clustering_accuracy(const std::vector<int> &ids, const std::vector<int> &labels) {
  if (ids.size() != labels.size())
    throw Error(ErrorKind::kDimensionMismatch, "ids and labels differ in length");
  if (ids.empty()) throw Error(ErrorKind::kInvalidArgument, "no points to score");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1)
      throw Error(ErrorKind::kInvalidArgument, "labels must be binary");
    if (ids[i] != 0 && ids[i] != 1)
      throw Error(ErrorKind::kInvalidArgument, "clustering accuracy needs k=2 cluster ids");
    agree += ids[i] == labels[i];
  }
  const double a = static_cast<double>(agree) / static_cast<double>(ids.size());
  return std::max(a, 1.0 - a);
}

std::string kmeans_model_to_json(const KMeansModel &model) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json cents = nlohmann::ordered_json::array();
  for (Eigen::Index c = 0; c < model.centroids.rows(); ++c) {
    std::vector<double> row(model.centroids.row(c).data(),
                            model.centroids.row(c).data() + model.centroids.cols());
    cents.push_back(row);
  }
  j["centroids"] = std::move(cents);
  j["seed"] = model.seed;
  j["inertia"] = model.inertia;
  j["iterations"] = model.iterations;
  return j.dump(2) + "\n";
}

}  // namespace promdet
