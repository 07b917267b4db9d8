// promdet/tests/pca_test.cc

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
#include <regex>

#include "doctest.h"
#include "promdet/pca.h"
#include "test_util.h"

using namespace promdet;

namespace {

Matrix random_rows(std::uint64_t seed, Eigen::Index n, Eigen::Index d) {
  Rng rng(seed);
  Matrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.normal() * (1.0 + j);
  return m;
}

std::size_t count(const std::string &text, const std::string &needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("closed-form 2x2 covariance") {
  // Four points whose sample covariance is [[2,1],[1,2]].
  const double a = std::sqrt(1.5 * 0.75), b = std::sqrt(0.5 * 0.75);
  Matrix rows(4, 2);
  rows << a + b, a - b, -(a + b), -(a - b), a - b, a + b, -(a - b), -(a + b);
  // Check the fixture first.
  const Matrix centered = rows.rowwise() - rows.colwise().mean();
  const Matrix cov = centered.transpose() * centered / 3.0;
  REQUIRE(std::abs(cov(0, 0) - 2.0) < 1e-12);
  REQUIRE(std::abs(cov(0, 1) - 1.0) < 1e-12);

  const auto model = pca_fit(rows, 2);
  CHECK(std::abs(model.explained_variance[0] - 3.0) <= 1e-8);
  CHECK(std::abs(model.explained_variance[1] - 1.0) <= 1e-8);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(model.components(0, 0) - r) <= 1e-8);
  CHECK(std::abs(model.components(1, 0) - r) <= 1e-8);
  // Largest-magnitude entry positive; ties keep the first.
  CHECK(std::abs(std::abs(model.components(0, 1)) - r) <= 1e-8);
  CHECK(std::abs(model.components(0, 1) + model.components(1, 1)) <= 1e-8);
}

TEST_CASE("data along one axis") {
  Matrix rows(5, 3);
  for (int i = 0; i < 5; ++i) rows.row(i) << i, 7.0, -1.0;
  const auto model = pca_fit(rows, 2);
  CHECK(std::abs(model.components(0, 0) - 1.0) <= 1e-10);
  CHECK(std::abs(model.explained_variance[1]) <= 1e-12);
}

TEST_CASE("orthonormal components, sorted variances, full reconstruction") {
  for (auto [n, d] : {std::pair<Eigen::Index, Eigen::Index>{50, 6}, {8, 20}}) {
    const Matrix rows = random_rows(static_cast<std::uint64_t>(n * d), n, d);
    const std::size_t k = static_cast<std::size_t>(std::min(n - 1, d));
    const auto model = pca_fit(rows, k);
    const Matrix gram = model.components.transpose() * model.components;
    CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-8);
    for (Eigen::Index j = 1; j < model.explained_variance.size(); ++j)
      CHECK(model.explained_variance[j] <= model.explained_variance[j - 1]);
    CHECK(model.explained_variance.minCoeff() >= 0.0);

    // Projected column variance equals the explained variance.
    const Matrix proj = pca_project(model, rows);
    for (Eigen::Index j = 0; j < proj.cols(); ++j) {
      const double var = (proj.col(j).array() - proj.col(j).mean()).square().sum() / (n - 1);
      CHECK(var == doctest::Approx(model.explained_variance[j]).epsilon(1e-9));
    }
    // Total variance is captured when the rank is exhausted.
    const Matrix centered = rows.rowwise() - rows.colwise().mean();
    const double total = centered.squaredNorm() / static_cast<double>(n - 1);
    CHECK(std::abs(model.explained_variance.sum() - total) <= 1e-8 * std::max(1.0, total));
    if (n > d) {
      const Matrix back = (proj * model.components.transpose()).rowwise() + model.mean.transpose();
      CHECK((back - rows).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("projection is translation invariant and maps the mean to zero") {
  const Matrix rows = random_rows(4, 30, 4);
  const Matrix shifted = rows.rowwise() + Eigen::RowVector4d(5, -3, 100, 0.5);
  const auto a = pca_fit(rows, 2), b = pca_fit(shifted, 2);
  CHECK((pca_project(a, rows) - pca_project(b, shifted)).cwiseAbs().maxCoeff() <= 1e-8);
  const Matrix mean_row = a.mean.transpose();
  CHECK(pca_project(a, mean_row).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("fit is deterministic including signs") {
  const Matrix rows = random_rows(8, 40, 5);
  const auto a = pca_fit(rows, 3), b = pca_fit(rows, 3);
  CHECK(a.components == b.components);
  for (Eigen::Index j = 0; j < a.components.cols(); ++j) {
    Eigen::Index arg = 0;
    a.components.col(j).cwiseAbs().maxCoeff(&arg);
    CHECK(a.components(arg, j) > 0.0);
  }
}

TEST_CASE("standardized fit equals fit on z-scored data") {
  const Matrix rows = random_rows(12, 40, 3);
  PcaOptions opts;
  opts.standardize = true;
  const auto model = pca_fit(rows, 2, opts);
  REQUIRE(model.scale.has_value());
  const Matrix centered = rows.rowwise() - rows.colwise().mean();
  Eigen::RowVectorXd sd = (centered.colwise().squaredNorm() / 39.0).cwiseSqrt();
  const Matrix z = centered.array().rowwise() / sd.array();
  const auto plain = pca_fit(z, 2);
  CHECK((pca_project(model, rows) - pca_project(plain, z)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("argument checks") {
  const Matrix rows = random_rows(1, 5, 3);
  CHECK_THROWS_AS(pca_fit(rows, 0), Error);
  CHECK_THROWS_AS(pca_fit(rows, 4), Error);
  CHECK_THROWS_AS(pca_fit(rows.topRows(1), 1), Error);
  Matrix bad = rows;
  bad(0, 0) = NAN;
  CHECK_THROWS_AS(pca_fit(bad, 1), Error);
  const auto model = pca_fit(rows, 2);
  CHECK_THROWS_AS(pca_project(model, Matrix::Zero(2, 4)), Error);
}

TEST_CASE("scatter export") {
  Matrix coords(3, 2);
  coords << 0, 1, 2, 3, -1, 0.5;
  const auto csv = promdet::testing::tmp_path("scatter.csv");
  const auto svg = promdet::testing::tmp_path("scatter.svg");
  export_scatter(coords, {1, 0, 1}, csv, svg, "demo <plot>");
  const auto text = promdet::testing::slurp(csv);
  CHECK(text == "pc1,pc2,label\n0,1,1\n2,3,0\n-1,0.5,1\n");
  const auto pic = promdet::testing::slurp(svg);
  CHECK(count(pic, "<circle") == 3);
  CHECK(pic.find("<svg") != std::string::npos);
  CHECK(pic.find("</svg>") != std::string::npos);
  CHECK(pic.find("demo &lt;plot&gt;") != std::string::npos);

  export_scatter(Matrix(0, 2), {}, csv);
  CHECK(promdet::testing::slurp(csv) == "pc1,pc2,label\n");
  CHECK_THROWS_AS(export_scatter(Matrix::Zero(2, 3), {0, 1}, csv), Error);
}
