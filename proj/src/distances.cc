// promdet/src/distances.cc

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

#include "promdet/distances.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace promdet {

namespace {

constexpr std::string_view kMetricNames[] = {"cosine",    "jaccard",  "manhattan",
                                             "euclidean", "chebyshev", "canberra",
                                             "mahalanobis"};

double cosine(const Vector &x, const Vector &y) {
  const double nx = x.norm(), ny = y.norm();
  if (nx == 0.0 || ny == 0.0)
    throw Error(ErrorKind::kDegenerateInput, "cosine similarity of a zero vector");
  // Rounding can push |cos| a hair past 1.
  return std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
}

double jaccard(const Vector &x, const Vector &y) {
  const double shift = -std::min(0.0, std::min(x.minCoeff(), y.minCoeff()));
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = x[i] + shift, b = y[i] + shift;
    num += std::min(a, b);
    den += std::max(a, b);
  }
  if (den == 0.0)
    throw Error(ErrorKind::kDegenerateInput, "jaccard similarity of zero vectors");
  return num / den;
}

double canberra(const Vector &x, const Vector &y) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double den = std::abs(x[i]) + std::abs(y[i]);
    if (den > 0.0) sum += std::abs(x[i] - y[i]) / den;
  }
  return sum;
}

double mahalanobis_unchecked(const Vector &x, const Vector &y, const Matrix &s_inv) {
  const Vector diff = x - y;
  // Clamp tiny negative quadratic forms from rounding.
  return std::sqrt(std::max(0.0, diff.dot(s_inv * diff)));
}

void check_spd(const Matrix &s_inv, Eigen::Index d) {
  if (s_inv.rows() != d || s_inv.cols() != d)
    throw Error(ErrorKind::kDimensionMismatch,
                "inverse covariance is " + std::to_string(s_inv.rows()) + "x" +
                    std::to_string(s_inv.cols()) + ", expected " + std::to_string(d));
  const double scale = std::max(1.0, s_inv.cwiseAbs().maxCoeff());
  if ((s_inv - s_inv.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw Error(ErrorKind::kInvalidArgument, "inverse covariance is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(s_inv);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::kInvalidArgument, "inverse covariance is not positive definite");
}

double measure_unchecked(Metric metric, const Vector &x, const Vector &y,
                         const Matrix *s_inv) {
  switch (metric) {
    case Metric::kCosine: return cosine(x, y);
    case Metric::kJaccard: return jaccard(x, y);
    case Metric::kManhattan: return (x - y).cwiseAbs().sum();
    case Metric::kEuclidean: return (x - y).norm();
    case Metric::kChebyshev: return (x - y).cwiseAbs().maxCoeff();
    case Metric::kCanberra: return canberra(x, y);
    case Metric::kMahalanobis: return mahalanobis_unchecked(x, y, *s_inv);
  }
  return 0.0;
}

std::vector<std::size_t> group_rows(const FeatureMatrix &fm, int label) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < fm.size(); ++i)
    if (fm.meta[i].labeled && fm.labels[i] == label) idx.push_back(i);
  return idx;
}

template <typename T, typename Get>
std::optional<T> uniform_field(const FeatureMatrix &fm, Get get) {
  if (fm.meta.empty()) return std::nullopt;
  const T first = get(fm.meta.front());
  for (const auto &m : fm.meta)
    if (get(m) != first) return std::nullopt;
  return first;
}

}  // namespace

std::string_view to_string(Metric m) { return kMetricNames[static_cast<std::size_t>(m)]; }

bool is_similarity(Metric m) { return m == Metric::kCosine || m == Metric::kJaccard; }

double pairwise_measure(Metric metric, const Vector &x, const Vector &y, const Matrix *s_inv) {
  if (x.size() != y.size())
    throw Error(ErrorKind::kDimensionMismatch, "vectors have different lengths");
  if (x.size() == 0) throw Error(ErrorKind::kInvalidArgument, "vectors are empty");
  if (metric == Metric::kMahalanobis) {
    if (s_inv == nullptr)
      throw Error(ErrorKind::kInvalidArgument, "mahalanobis needs an inverse covariance");
    check_spd(*s_inv, x.size());
  }
  return measure_unchecked(metric, x, y, s_inv);
}

Vector group_centroid(const FeatureMatrix &fm, int label) {
  const auto idx = group_rows(fm, label);
  if (idx.empty())
    throw Error(ErrorKind::kDegenerateInput,
                "no labeled rows with label " + std::to_string(label));
  Vector sum = Vector::Zero(fm.rows.cols());
  for (std::size_t i : idx) sum += fm.rows.row(static_cast<Eigen::Index>(i)).transpose();
  return sum / static_cast<double>(idx.size());
}

Covariance pooled_covariance(const FeatureMatrix &fm, double ridge) {
  const Eigen::Index d = fm.rows.cols();
  std::size_t n = 0, groups = 0;
  Matrix scatter = Matrix::Zero(d, d);
  for (int label : {0, 1}) {
    const auto idx = group_rows(fm, label);
    if (idx.empty()) continue;
    ++groups;
    n += idx.size();
    Matrix centered(static_cast<Eigen::Index>(idx.size()), d);
    const Vector mu = group_centroid(fm, label);
    for (std::size_t r = 0; r < idx.size(); ++r)
      centered.row(static_cast<Eigen::Index>(r)) =
          fm.rows.row(static_cast<Eigen::Index>(idx[r])) - mu.transpose();
    scatter.noalias() += centered.transpose() * centered;
  }
  if (n < 2)
    throw Error(ErrorKind::kDegenerateInput, "pooled covariance needs at least 2 labeled rows");
  if (!fm.rows.allFinite())
    throw Error(ErrorKind::kInvalidArgument, "feature matrix has non-finite entries");

  Covariance cov;
  const std::size_t dof = n > groups ? n - groups : 1;
  cov.s = scatter / static_cast<double>(dof);
  cov.s = (0.5 * (cov.s + cov.s.transpose())).eval();
  const double trace = cov.s.trace();
  const double lambda = trace > 0.0 ? ridge * trace / static_cast<double>(d) : ridge;
  cov.s.diagonal().array() += lambda;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(cov.s);
  if (ldlt.info() != Eigen::Success)
    throw Error(ErrorKind::kDegenerateInput, "regularized covariance is not invertible");
  Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(d, d));
  cov.s_inv = 0.5 * (inv + inv.transpose());
  return cov;
}

GroupSeparationReport separation_report(const FeatureMatrix &fm, const SeparationOptions &opts) {
  GroupSeparationReport rep;
  rep.dim = fm.dim();
  rep.set = fm.set;
  rep.level = uniform_field<Level>(fm, [](const UnitMeta &m) { return m.level; });
  rep.mode = uniform_field<Mode>(fm, [](const UnitMeta &m) { return m.mode; });
  rep.l1 = uniform_field<L1>(fm, [](const UnitMeta &m) { return m.l1; });

  const auto pos = group_rows(fm, 1), neg = group_rows(fm, 0);
  rep.n_stressed = pos.size();
  rep.n_unstressed = neg.size();
  if (pos.empty() || neg.empty())
    throw Error(ErrorKind::kDegenerateInput, "both stressed and unstressed rows are required");

  const Covariance cov = pooled_covariance(fm, opts.ridge);

  if (!opts.mean_of_pairwise) {
    const Vector a = group_centroid(fm, 1), b = group_centroid(fm, 0);
    for (std::size_t m = 0; m < kAllMetrics.size(); ++m)
      rep.values[m] = measure_unchecked(kAllMetrics[m], a, b, &cov.s_inv);
    return rep;
  }

  // Whitening by the Cholesky factor of S^-1 turns each Mahalanobis pair into
  // a Euclidean one.
  Eigen::LLT<Eigen::MatrixXd> llt(cov.s_inv);
  const Eigen::MatrixXd lower = llt.matrixL();
  std::vector<Vector> xs, ys, wx, wy;
  for (std::size_t i : pos) {
    xs.push_back(fm.rows.row(static_cast<Eigen::Index>(i)).transpose());
    wx.push_back(lower.transpose() * xs.back());
  }
  for (std::size_t i : neg) {
    ys.push_back(fm.rows.row(static_cast<Eigen::Index>(i)).transpose());
    wy.push_back(lower.transpose() * ys.back());
  }
  for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < ys.size(); ++j)
        sum += kAllMetrics[m] == Metric::kMahalanobis
                   ? (wx[i] - wy[j]).norm()
                   : measure_unchecked(kAllMetrics[m], xs[i], ys[j], nullptr);
    rep.values[m] = sum / static_cast<double>(xs.size() * ys.size());
  }
  return rep;
}

std::string report_to_json(const GroupSeparationReport &r) {
  nlohmann::ordered_json j;
  for (std::size_t m = 0; m < kAllMetrics.size(); ++m)
    j[std::string(to_string(kAllMetrics[m]))] = r.values[m];
  j["n_stressed"] = r.n_stressed;
  j["n_unstressed"] = r.n_unstressed;
  j["d"] = r.dim;
  j["set"] = std::string(to_string(r.set));
  j["level"] = r.level ? nlohmann::ordered_json(std::string(to_string(*r.level))) : nullptr;
  j["mode"] = r.mode ? nlohmann::ordered_json(std::string(to_string(*r.mode))) : nullptr;
  j["l1"] = r.l1 ? nlohmann::ordered_json(std::string(to_string(*r.l1))) : nullptr;
  return j.dump(2) + "\n";
}

std::string report_to_markdown(const GroupSeparationReport &r) {
  std::ostringstream os;
  os << "| measure | kind | value |\n|---|---|---|\n";
  for (std::size_t m = 0; m < kAllMetrics.size(); ++m)
    os << "| " << to_string(kAllMetrics[m]) << " | "
       << (is_similarity(kAllMetrics[m]) ? "similarity" : "dissimilarity") << " | "
       << format_fixed(r.values[m], 4) << " |\n";
  os << "\nstressed n=" << r.n_stressed << ", unstressed n=" << r.n_unstressed
     << ", d=" << r.dim << ", set=" << to_string(r.set) << '\n';
  return os.str();
}

std::string report_to_csv(const GroupSeparationReport &r) {
  std::ostringstream os;
  os << "metric,value\n";
  for (std::size_t m = 0; m < kAllMetrics.size(); ++m)
    os << to_string(kAllMetrics[m]) << ',' << format_double(r.values[m]) << '\n';
  return os.str();
}

}  // namespace promdet
