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

#ifndef DIMCERT_SVD_HPP
#define DIMCERT_SVD_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/matrix.hpp"

namespace dimcert {

/// Thin SVD A = U diag(s) V^T with U (m x k), V (n x k), k = min(m, n).
/// Columns of U and V are orthonormal; s is non-increasing.
struct SvdResult {
  Matrix u;
  std::vector<double> singular_values;
  Matrix v;

  Matrix reconstruct() const {
    const index_t m = u.rows(), k = singular_values.size(), n = v.rows();
    Matrix a(m, n);
    for (index_t r = 0; r < m; ++r)
      for (index_t c = 0; c < n; ++c) {
        double acc = 0.0;
        for (index_t j = 0; j < k; ++j)
          acc += u(r, j) * singular_values[j] * v(c, j);
        a(r, c) = acc;
      }
    return a;
  }
};

namespace detail {

// One-sided Jacobi on the columns of a (m x n, m >= n). Rotations from the
// right accumulate into v. Converged when every off-diagonal Gram entry is
// below 1e-14 relative to the column norms.
inline void one_sided_jacobi(Matrix& a, Matrix& v) {
  const index_t m = a.rows(), n = a.cols();
  constexpr double kTol = 1e-14;
  constexpr int kMaxSweeps = 60;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (index_t p = 0; p + 1 < n; ++p) {
      for (index_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (index_t r = 0; r < m; ++r) {
          app += a(r, p) * a(r, p);
          aqq += a(r, q) * a(r, q);
          apq += a(r, p) * a(r, q);
        }
        if (std::fabs(apq) <= kTol * std::sqrt(app * aqq) || apq == 0.0)
          continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0)
                             ? 1.0 / (zeta + std::sqrt(1.0 + zeta * zeta))
                             : -1.0 / (-zeta + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (index_t r = 0; r < m; ++r) {
          const double ap = a(r, p), aq = a(r, q);
          a(r, p) = c * ap - s * aq;
          a(r, q) = s * ap + c * aq;
        }
        for (index_t r = 0; r < n; ++r) {
          const double vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp - s * vq;
          v(r, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return;
  }
  // 60 sweeps is far beyond what a 49x49 matrix needs; reaching it means the
  // input was pathological.
  throw numeric_error("jacobi svd did not converge");
}

// Fills zero-norm columns of u with unit vectors orthogonal to the nonzero
// ones so that u stays column-orthonormal. Deterministic: seeds from e_0,
// e_1, ... in order.
inline void complete_orthonormal(Matrix& u, const std::vector<bool>& is_zero) {
  const index_t m = u.rows(), k = u.cols();
  index_t seed = 0;
  for (index_t j = 0; j < k; ++j) {
    if (!is_zero[j]) continue;
    for (; seed < m; ++seed) {
      std::vector<double> cand(m, 0.0);
      cand[seed] = 1.0;
      for (index_t jj = 0; jj < k; ++jj) {
        if (is_zero[jj] && jj >= j) continue;
        double dot = 0.0;
        for (index_t r = 0; r < m; ++r) dot += cand[r] * u(r, jj);
        for (index_t r = 0; r < m; ++r) cand[r] -= dot * u(r, jj);
      }
      double norm = 0.0;
      for (double cv : cand) norm += cv * cv;
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (index_t r = 0; r < m; ++r) u(r, j) = cand[r] / norm;
        ++seed;
        break;
      }
    }
  }
}

}  // namespace detail

/// Singular value decomposition by one-sided Jacobi. Deterministic for a
/// fixed input. Throws input_error on non-finite entries.
inline SvdResult svd(const Matrix& input) {
  if (!input.all_finite()) throw input_error("svd: non-finite entry");
  if (input.rows() == 0 || input.cols() == 0)
    throw input_error("svd: empty matrix");

  const bool transposed = input.rows() < input.cols();
  Matrix a = transposed ? input.transposed() : input;
  const index_t m = a.rows(), n = a.cols();

  Matrix v = Matrix::identity(n);
  detail::one_sided_jacobi(a, v);

  std::vector<double> sigma(n);
  std::vector<bool> zero_col(n, false);
  for (index_t j = 0; j < n; ++j) {
    double ss = 0.0;
    for (index_t r = 0; r < m; ++r) ss += a(r, j) * a(r, j);
    sigma[j] = std::sqrt(ss);
  }

  std::vector<index_t> order(n);
  std::iota(order.begin(), order.end(), index_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](index_t i, index_t j) { return sigma[i] > sigma[j]; });

  Matrix u(m, n), vs(n, n);
  std::vector<double> s_sorted(n);
  for (index_t j = 0; j < n; ++j) {
    const index_t src = order[j];
    s_sorted[j] = sigma[src];
    if (sigma[src] > 0.0) {
      for (index_t r = 0; r < m; ++r) u(r, j) = a(r, src) / sigma[src];
    } else {
      zero_col[j] = true;
    }
    for (index_t r = 0; r < n; ++r) vs(r, j) = v(r, src);
  }
  detail::complete_orthonormal(u, zero_col);

  if (transposed) return SvdResult{vs, std::move(s_sorted), u};
  return SvdResult{u, std::move(s_sorted), vs};
}

/// Largest singular value.
inline double spectral_norm(const Matrix& m) {
  auto r = svd(m);
  return r.singular_values.empty() ? 0.0 : r.singular_values.front();
}

/// Number of singular values strictly above tol.
inline index_t numerical_rank(const Matrix& m, double tol = kDefaultRankTol) {
  if (!(tol > 0.0)) throw input_error("numerical_rank: tol must be positive");
  auto r = svd(m);
  index_t count = 0;
  for (double s : r.singular_values)
    if (s > tol) ++count;
  return count;
}

}  // namespace dimcert

#endif  // DIMCERT_SVD_HPP
