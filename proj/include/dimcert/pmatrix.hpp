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

#ifndef DIMCERT_PMATRIX_HPP
#define DIMCERT_PMATRIX_HPP

#include <string>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/matrix.hpp"
#include "dimcert/prep.hpp"
#include "dimcert/protocol.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/svd.hpp"

namespace dimcert {

/// Row-stochastic communication matrix P_xb = p(b|x) with a zero diagonal.
struct ProbMatrix {
  Matrix values;
  std::vector<std::string> labels;  // outcome labels; preparations share them
  index_t dimension = 0;
  Variant variant = Variant::kConvex;

  index_t size() const { return values.rows(); }

  double row_sum_defect() const {
    double defect = 0.0;
    for (index_t r = 0; r < values.rows(); ++r) {
      double sum = 0.0;
      for (index_t c = 0; c < values.cols(); ++c) sum += values(r, c);
      defect = std::max(defect, std::fabs(sum - 1.0));
    }
    return defect;
  }

  double diagonal_defect() const {
    double defect = 0.0;
    for (index_t r = 0; r < values.rows(); ++r)
      defect = std::max(defect, std::fabs(values(r, r)));
    return defect;
  }
};

/// P_xb = tr(rho_x M_b).
inline ProbMatrix assemble(const std::vector<PreparedState>& states,
                           const Povm& povm) {
  const index_t n = povm.size();
  if (states.size() != n)
    throw input_error("assemble: state/outcome count mismatch");
  ProbMatrix p;
  p.dimension = povm.dimension;
  p.variant = povm.variant;
  p.values = Matrix(n, n);
  p.labels.reserve(n);
  for (index_t b = 0; b < n; ++b)
    p.labels.push_back(outcome_label_string(povm, b));
  for (index_t x = 0; x < n; ++x) {
    if (states[x].excluded_outcome != x)
      throw input_error("assemble: states out of order");
    for (index_t b = 0; b < n; ++b) {
      double val = 0.0;
      for (const auto& [idx, w] : states[x].mixture)
        val += w * povm.elements[b].weight *
               povm.elements[b].overlap(povm.elements[idx]);
      p.values(x, b) = val;
    }
  }
  return p;
}

/// Non-increasing singular values of P.
inline std::vector<double> singular_spectrum(const ProbMatrix& p) {
  return svd(p.values).singular_values;
}

/// rank(P) at the given tolerance; a lower bound on the classical
/// operational dimension needed to reproduce P.
inline index_t classical_dimension_lower_bound(const ProbMatrix& p,
                                               double tol = kDefaultRankTol) {
  return numerical_rank(p.values, tol);
}

struct NnRankBound {
  index_t target_rank = 0;
  double residual = 0.0;  // best Frobenius residual over restarts
  bool factorization_found = false;  // residual <= 1e-6
};

/// Heuristic upper-bound probe for the non-negative rank: seeded
/// multiplicative-update NMF restarts at the target inner rank. A residual
/// near zero certifies rank_+(P) <= r; a large residual proves nothing
/// (exact non-negative rank is NP-hard).
inline NnRankBound nnrank_upper_bound(const ProbMatrix& p, index_t target_rank,
                                      index_t restarts = 50,
                                      std::uint64_t seed = 1,
                                      index_t iterations = 5000) {
  if (target_rank < 1) throw input_error("nnrank_upper_bound: rank >= 1");
  const index_t n = p.size();
  const index_t r = std::min<index_t>(target_rank, n);
  const Matrix& v = p.values;

  double best = -1.0;
  // Restart 0 deterministically seeds W from the leading r rows of P plus a
  // uniform floor; at r = n this starts next to the exact factorization
  // W = I, H = P. Later restarts are random.
  for (index_t restart = 0; restart <= restarts; ++restart) {
    Matrix w(n, r), h(r, n);
    if (restart == 0) {
      for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < r; ++j) w(i, j) = (i == j) ? 1.0 : 1e-3;
      for (index_t i = 0; i < r; ++i)
        for (index_t j = 0; j < n; ++j) h(i, j) = v(i, j) + 1e-3;
    } else {
      Rng rng(derive_seed(seed, restart));
      for (double& x : w.data()) x = rng.uniform_pos();
      for (double& x : h.data()) x = rng.uniform_pos();
    }

    constexpr double kGuard = 1e-12;
    for (index_t it = 0; it < iterations; ++it) {
      // H <- H .* (W^T V) ./ (W^T W H)
      Matrix wt = w.transposed();
      Matrix wtv = wt * v;
      Matrix wtwh = (wt * w) * h;
      for (index_t i = 0; i < h.data().size(); ++i)
        h.data()[i] *= wtv.data()[i] / (wtwh.data()[i] + kGuard);
      // W <- W .* (V H^T) ./ (W H H^T)
      Matrix ht = h.transposed();
      Matrix vht = v * ht;
      Matrix whht = w * (h * ht);
      for (index_t i = 0; i < w.data().size(); ++i)
        w.data()[i] *= vht.data()[i] / (whht.data()[i] + kGuard);
      if ((it & 63) == 63) {
        const double res = (v - w * h).frobenius_norm();
        if (res < 1e-9) break;
      }
    }
    const double res = (v - w * h).frobenius_norm();
    if (best < 0.0 || res < best) best = res;
    if (best <= 1e-9) break;
  }

  NnRankBound out;
  out.target_rank = target_rank;
  out.residual = best;
  out.factorization_found = best <= 1e-6;
  return out;
}

}  // namespace dimcert

#endif  // DIMCERT_PMATRIX_HPP
