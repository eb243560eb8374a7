// Copyright 2026 The dimcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "dimcert/matrix.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/svd.hpp"

using dimcert::Matrix;
using dimcert::Rng;

namespace {

Matrix random_matrix(dimcert::index_t rows, dimcert::index_t cols,
                     std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform();
  return m;
}

// Independent oracle: eigenvalues of M^T M by classical two-sided Jacobi
// eigenvalue iteration. Shares no code with the production one-sided path.
std::vector<double> gram_singular_values(const Matrix& m) {
  const dimcert::index_t n = m.cols();
  Matrix g = m.transposed() * m;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (dimcert::index_t p = 0; p + 1 < n; ++p) {
      for (dimcert::index_t q = p + 1; q < n; ++q) {
        off = std::max(off, std::fabs(g(p, q)));
        if (std::fabs(g(p, q)) < 1e-15) continue;
        const double theta = 0.5 * std::atan2(2.0 * g(p, q), g(q, q) - g(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        for (dimcert::index_t k = 0; k < n; ++k) {
          const double gkp = g(k, p), gkq = g(k, q);
          g(k, p) = c * gkp - s * gkq;
          g(k, q) = s * gkp + c * gkq;
        }
        for (dimcert::index_t k = 0; k < n; ++k) {
          const double gpk = g(p, k), gqk = g(q, k);
          g(p, k) = c * gpk - s * gqk;
          g(q, k) = s * gpk + c * gqk;
        }
      }
    }
    if (off < 1e-15) break;
  }
  std::vector<double> vals(n);
  for (dimcert::index_t i = 0; i < n; ++i)
    vals[i] = std::sqrt(std::max(g(i, i), 0.0));
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return vals;
}

}  // namespace

TEST_CASE("svd of the identity") {
  auto r = dimcert::svd(Matrix::identity(3));
  REQUIRE(r.singular_values.size() == 3);
  for (double s : r.singular_values) CHECK(s == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("svd of a diagonal matrix sorts the entries") {
  Matrix m{{1.0, 0.0, 0.0}, {0.0, 3.0, 0.0}, {0.0, 0.0, 2.0}};
  auto r = dimcert::svd(m);
  CHECK(r.singular_values[0] == Catch::Approx(3.0).margin(1e-14));
  CHECK(r.singular_values[1] == Catch::Approx(2.0).margin(1e-14));
  CHECK(r.singular_values[2] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("svd matches the Gram eigenvalue oracle on a seeded 6x6") {
  const Matrix m = random_matrix(6, 6, 42);
  const auto got = dimcert::svd(m).singular_values;
  const auto want = gram_singular_values(m);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i] == Catch::Approx(want[i]).margin(1e-10));
}

TEST_CASE("svd reconstruction across shapes and sizes") {
  for (auto [rows, cols] : {std::pair<int, int>{5, 5},
                            {8, 3},
                            {3, 8},
                            {64, 64},
                            {1, 4},
                            {49, 49}}) {
    const Matrix m = random_matrix(rows, cols, 1000 + rows * 100 + cols);
    const auto r = dimcert::svd(m);
    CHECK(dimcert::max_abs_diff(r.reconstruct(), m) <= 1e-10);
    // ordering
    for (std::size_t i = 0; i + 1 < r.singular_values.size(); ++i)
      CHECK(r.singular_values[i] >= r.singular_values[i + 1]);
    // column orthonormality of U and V
    for (const Matrix* q : {&r.u, &r.v}) {
      Matrix gram = q->transposed() * (*q);
      CHECK(dimcert::max_abs_diff(gram, Matrix::identity(gram.rows())) <=
            1e-12);
    }
  }
}

TEST_CASE("svd handles rank-deficient input") {
  Matrix m(6, 6);
  Rng rng(7);
  std::vector<double> u(6), v(6);
  for (auto& x : u) x = rng.normal();
  for (auto& x : v) x = rng.normal();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = u[i] * v[j];
  const auto r = dimcert::svd(m);
  CHECK(dimcert::max_abs_diff(r.reconstruct(), m) <= 1e-10);
  CHECK(dimcert::numerical_rank(m) == 1);
  Matrix gram = r.u.transposed() * r.u;
  CHECK(dimcert::max_abs_diff(gram, Matrix::identity(6)) <= 1e-12);
}

TEST_CASE("svd rejects non-finite input") {
  Matrix m(2, 2);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(dimcert::svd(m), dimcert::input_error);
}

TEST_CASE("spectral norm basics") {
  CHECK(dimcert::spectral_norm(Matrix(4, 4)) == 0.0);

  // 0.7 * outer product of unit vectors.
  Matrix m(3, 3);
  const double u[3] = {0.6, 0.8, 0.0};
  const double v[3] = {0.0, 0.6, 0.8};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = 0.7 * u[i] * v[j];
  CHECK(dimcert::spectral_norm(m) == Catch::Approx(0.7).margin(1e-12));
}

TEST_CASE("numerical rank basics") {
  CHECK(dimcert::numerical_rank(Matrix::identity(5), 1e-10) == 5);
  CHECK_THROWS_AS(dimcert::numerical_rank(Matrix::identity(2), 0.0),
                  dimcert::input_error);
  CHECK_THROWS_AS(dimcert::numerical_rank(Matrix::identity(2), -1.0),
                  dimcert::input_error);
}

TEST_CASE("Weyl inequality holds for random perturbations",
          "[property]") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    const Matrix m = random_matrix(10, 10, 9000 + trial);
    Matrix delta = random_matrix(10, 10, 90000 + trial);
    delta *= 1e-2;
    const auto s0 = dimcert::svd(m).singular_values;
    const auto s1 = dimcert::svd(m + delta).singular_values;
    const double dnorm = dimcert::spectral_norm(delta);
    for (std::size_t r = 0; r < s0.size(); ++r)
      CHECK(std::fabs(s1[r] - s0[r]) <= dnorm + 1e-12);
  }
}

TEST_CASE("svd is deterministic for a fixed input") {
  const Matrix m = random_matrix(12, 12, 5);
  const auto a = dimcert::svd(m);
  const auto b = dimcert::svd(m);
  CHECK(a.singular_values == b.singular_values);
  CHECK(a.u.data() == b.u.data());
  CHECK(a.v.data() == b.v.data());
}
