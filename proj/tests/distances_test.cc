// promdet/tests/distances_test.cc

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

#include <cmath>

#include "doctest.h"
#include "promdet/distances.h"

using namespace promdet;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

FeatureMatrix make_fm(const Matrix &rows, const std::vector<int> &labels) {
  FeatureMatrix fm;
  fm.rows = rows;
  fm.labels = labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    UnitMeta m;
    m.utt_id = "u";
    m.unit_index = i;
    m.labeled = true;
    fm.meta.push_back(m);
  }
  return fm;
}

Matrix random_rows(Rng &rng, Eigen::Index n, Eigen::Index d) {
  Matrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal();
  return m;
}

// Gap g between the class means along the first axis, otherwise shared noise.
FeatureMatrix gap_fixture(double g) {
  Rng rng(5);
  Matrix rows = random_rows(rng, 400, 4);
  std::vector<int> labels(400);
  for (Eigen::Index i = 0; i < 400; ++i) {
    labels[static_cast<std::size_t>(i)] = i % 2;
    rows(i, 0) += (i % 2 ? 0.5 : -0.5) * g + 10.0;
    rows(i, 1) += 10.0;
  }
  return make_fm(rows, labels);
}

}  // namespace

TEST_CASE("closed-form small cases") {
  CHECK(pairwise_measure(Metric::kEuclidean, vec({0, 0}), vec({3, 4})) == doctest::Approx(5.0));
  CHECK(pairwise_measure(Metric::kManhattan, vec({1, 2}), vec({3, 5})) == doctest::Approx(5.0));
  CHECK(pairwise_measure(Metric::kChebyshev, vec({1, 2}), vec({3, 5})) == doctest::Approx(3.0));
  CHECK(pairwise_measure(Metric::kCanberra, vec({1, 2}), vec({3, 2})) == doctest::Approx(0.5));
  CHECK(pairwise_measure(Metric::kJaccard, vec({1, 3}), vec({2, 3})) == doctest::Approx(0.8));
  CHECK(pairwise_measure(Metric::kCosine, vec({1, 0}), vec({0, 2})) == doctest::Approx(0.0));
  CHECK(pairwise_measure(Metric::kCosine, vec({1, 1}), vec({-2, -2})) == doctest::Approx(-1.0));
}

TEST_CASE("jaccard shifts negative vectors") {
  // Shift by 1: (0, 2) vs (2, 1) -> (0 + 1) / (2 + 2).
  CHECK(pairwise_measure(Metric::kJaccard, vec({-1, 1}), vec({1, 0})) == doctest::Approx(0.25));
}

TEST_CASE("canberra skips 0/0 terms") {
  CHECK(pairwise_measure(Metric::kCanberra, vec({0, 1}), vec({0, 3})) == doctest::Approx(0.5));
}

TEST_CASE("zero vectors are degenerate for the similarities") {
  try {
    pairwise_measure(Metric::kCosine, vec({0, 0}), vec({1, 0}));
    FAIL("expected DegenerateInput");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kDegenerateInput);
  }
  CHECK_THROWS_AS(pairwise_measure(Metric::kJaccard, vec({0, 0}), vec({0, 0})), Error);
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(pairwise_measure(Metric::kEuclidean, vec({1}), vec({1, 2})), Error);
  CHECK_THROWS_AS(pairwise_measure(Metric::kMahalanobis, vec({1}), vec({2})), Error);
  Matrix bad(2, 2);
  bad << 1, 2, 0, 1;
  CHECK_THROWS_AS(pairwise_measure(Metric::kMahalanobis, vec({1, 0}), vec({0, 1}), &bad), Error);
  Matrix indefinite(2, 2);
  indefinite << 1, 0, 0, -1;
  CHECK_THROWS_AS(
      pairwise_measure(Metric::kMahalanobis, vec({1, 0}), vec({0, 1}), &indefinite), Error);
}

TEST_CASE("mahalanobis closed form") {
  Matrix s_inv(2, 2);
  s_inv << 2, 0, 0, 0.5;
  // sqrt(2 * 1 + 0.5 * 4)
  CHECK(pairwise_measure(Metric::kMahalanobis, vec({1, 2}), vec({0, 0}), &s_inv) ==
        doctest::Approx(2.0));
  const Matrix eye = Matrix::Identity(3, 3);
  const Vector x = vec({1, -2, 0.5}), y = vec({0.25, 4, 3});
  CHECK(std::abs(pairwise_measure(Metric::kMahalanobis, x, y, &eye) -
                 pairwise_measure(Metric::kEuclidean, x, y)) <= 1e-12);
}

TEST_CASE("symmetry, identity, scale and triangle properties") {
  Rng rng(3);
  const Matrix eye = Matrix::Identity(6, 6);
  for (int t = 0; t < 200; ++t) {
    const Matrix r = random_rows(rng, 3, 6);
    const Vector x = r.row(0).transpose(), y = r.row(1).transpose(), z = r.row(2).transpose();
    for (Metric m : kAllMetrics) {
      CHECK(pairwise_measure(m, x, y, &eye) == doctest::Approx(pairwise_measure(m, y, x, &eye)));
      CHECK(pairwise_measure(m, x, x, &eye) ==
            doctest::Approx(is_similarity(m) ? 1.0 : 0.0));
    }
    for (Metric m : {Metric::kManhattan, Metric::kEuclidean, Metric::kChebyshev})
      CHECK(pairwise_measure(m, x, z) <= pairwise_measure(m, x, y) + pairwise_measure(m, y, z) + 1e-12);
    CHECK(pairwise_measure(Metric::kEuclidean, -2.5 * x, -2.5 * y) ==
          doctest::Approx(2.5 * pairwise_measure(Metric::kEuclidean, x, y)));
    CHECK(pairwise_measure(Metric::kCosine, 3.0 * x, y) ==
          doctest::Approx(pairwise_measure(Metric::kCosine, x, y)));
    const double c = pairwise_measure(Metric::kCosine, x, y);
    const double j = pairwise_measure(Metric::kJaccard, x, y);
    CHECK((c >= -1.0 && c <= 1.0));
    CHECK((j >= 0.0 && j <= 1.0));
  }
}

TEST_CASE("group centroid") {
  Matrix rows(3, 2);
  rows << 0, 0, 2, 2, 9, 9;
  const auto fm = make_fm(rows, {1, 1, 0});
  CHECK(group_centroid(fm, 1) == vec({1, 1}));
  CHECK(group_centroid(fm, 0) == vec({9, 9}));
  auto masked = fm;
  masked.meta[2].labeled = false;
  CHECK_THROWS_AS(group_centroid(masked, 0), Error);

  Rng rng(9);
  const Matrix many = random_rows(rng, 100, 5);
  const auto big = make_fm(many, std::vector<int>(100, 1));
  const Vector c = group_centroid(big, 1);
  for (Eigen::Index j = 0; j < 5; ++j) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < 100; ++i) sum += many(i, j);
    CHECK(std::abs(c[j] - sum / 100.0) <= 1e-12);
  }
}

TEST_CASE("pooled covariance") {
  Rng rng(21);
  const Matrix rows = random_rows(rng, 10000, 4);
  std::vector<int> labels(10000);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 2;
  const auto cov = pooled_covariance(make_fm(rows, labels));
  CHECK((cov.s - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 0.1);
  CHECK((cov.s * cov.s_inv - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((cov.s - cov.s.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // Two groups of two points on a line: rank one, ridge keeps it invertible.
  Matrix line(4, 2);
  line << 0, 0, 1, 1, 5, 5, 7, 7;
  const auto deg = pooled_covariance(make_fm(line, {0, 0, 1, 1}));
  CHECK(deg.s_inv.allFinite());
  CHECK((deg.s * deg.s_inv - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-6);

  Matrix one(1, 2);
  one << 1, 2;
  CHECK_THROWS_AS(pooled_covariance(make_fm(one, {1})), Error);
}

TEST_CASE("separation report reductions") {
  Matrix rows(4, 3);
  rows << 1, 2, 3, 4, 5, 6, 1, 2, 3, 4, 5, 6;
  const auto same = separation_report(make_fm(rows, {1, 1, 0, 0}));
  for (Metric m : kAllMetrics)
    CHECK(same[m] == doctest::Approx(is_similarity(m) ? 1.0 : 0.0));

  Matrix pair(2, 3);
  pair << 1, 2, 3, -1, 0.5, 2;
  const auto fm = make_fm(pair, {1, 0});
  const auto rep = separation_report(fm);
  const auto cov = pooled_covariance(fm);
  for (Metric m : kAllMetrics)
    CHECK(rep[m] == doctest::Approx(pairwise_measure(m, pair.row(0).transpose(),
                                                     pair.row(1).transpose(), &cov.s_inv)));
  CHECK(rep.n_stressed == 1);
  CHECK(rep.n_unstressed == 1);

  CHECK_THROWS_AS(separation_report(make_fm(rows, {1, 1, 1, 1})), Error);
}

TEST_CASE("centroid gap along one axis shows up as euclidean distance") {
  const auto rep = separation_report(gap_fixture(3.0));
  CHECK(rep[Metric::kEuclidean] == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("separation is monotone in the constructed gap") {
  GroupSeparationReport prev = separation_report(gap_fixture(0.5));
  for (double g : {1.0, 2.0, 4.0, 8.0}) {
    const auto rep = separation_report(gap_fixture(g));
    for (Metric m : {Metric::kManhattan, Metric::kEuclidean, Metric::kChebyshev,
                     Metric::kCanberra, Metric::kMahalanobis})
      CHECK(rep[m] > prev[m]);
    CHECK(rep[Metric::kCosine] < prev[Metric::kCosine]);
    prev = rep;
  }
}

TEST_CASE("mean of pairwise distances") {
  Matrix rows(3, 2);
  rows << 1, 1, 1, 3, 4, 1;
  const auto fm = make_fm(rows, {1, 1, 0});
  SeparationOptions opts;
  opts.mean_of_pairwise = true;
  const auto rep = separation_report(fm, opts);
  CHECK(rep[Metric::kEuclidean] == doctest::Approx((3.0 + std::sqrt(13.0)) / 2.0));
  CHECK(rep[Metric::kManhattan] == doctest::Approx((3.0 + 5.0) / 2.0));
  const auto cov = pooled_covariance(fm);
  const double expect = (pairwise_measure(Metric::kMahalanobis, rows.row(0).transpose(),
                                          rows.row(2).transpose(), &cov.s_inv) +
                         pairwise_measure(Metric::kMahalanobis, rows.row(1).transpose(),
                                          rows.row(2).transpose(), &cov.s_inv)) /
                        2.0;
  CHECK(rep[Metric::kMahalanobis] == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("report serializations use the metric names") {
  Matrix pair(2, 2);
  pair << 1, 2, 3, 1;
  const auto rep = separation_report(make_fm(pair, {1, 0}));
  const auto json = report_to_json(rep);
  for (Metric m : kAllMetrics) {
    CHECK(json.find("\"" + std::string(to_string(m)) + "\"") != std::string::npos);
    CHECK(report_to_csv(rep).find(std::string(to_string(m)) + ",") != std::string::npos);
  }
  CHECK(report_to_markdown(rep).find("| mahalanobis | dissimilarity |") != std::string::npos);
}
