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

#ifndef DIMCERT_SIMPLEX_HPP
#define DIMCERT_SIMPLEX_HPP

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/matrix.hpp"

namespace dimcert {

struct LpResult {
  std::vector<double> x;
  double objective = 0.0;
};

namespace detail {

// Dense tableau simplex in standard form: min c.x s.t. A x = b, x >= 0,
// b >= 0. Two phases, Bland's rule throughout (lowest-index entering column,
// lowest-index basic variable on ratio ties), so the path is deterministic
// and cycling is impossible.
class Tableau {
 public:
  Tableau(const Matrix& a, const std::vector<double>& b,
          const std::vector<double>& c)
      : m_(a.rows()), n_(a.cols()) {
    tab_ = Matrix(m_, n_ + m_ + 1);
    basis_.resize(m_);
    for (index_t r = 0; r < m_; ++r) {
      for (index_t j = 0; j < n_; ++j) tab_(r, j) = a(r, j);
      tab_(r, n_ + r) = 1.0;  // artificial
      tab_(r, n_ + m_) = b[r];
      basis_[r] = n_ + r;
    }
    cost_ = c;
  }

  LpResult solve() {
    // Phase 1: minimize the artificial sum.
    std::vector<double> phase1_cost(n_ + m_, 0.0);
    for (index_t j = n_; j < n_ + m_; ++j) phase1_cost[j] = 1.0;
    run(phase1_cost, n_ + m_);
    if (current_objective(phase1_cost) > 1e-8)
      throw numeric_error("simplex: infeasible constraint system");
    expel_artificials();

    // Phase 2: original cost over the structural columns only.
    std::vector<double> phase2_cost(n_ + m_, 0.0);
    for (index_t j = 0; j < n_; ++j) phase2_cost[j] = cost_[j];
    run(phase2_cost, n_);

    LpResult res;
    res.x.assign(n_, 0.0);
    for (index_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) res.x[basis_[r]] = tab_(r, n_ + m_);
    res.objective = 0.0;
    for (index_t j = 0; j < n_; ++j) res.objective += cost_[j] * res.x[j];
    return res;
  }

 private:
  double current_objective(const std::vector<double>& c) const {
    double obj = 0.0;
    for (index_t r = 0; r < m_; ++r) obj += c[basis_[r]] * tab_(r, n_ + m_);
    return obj;
  }

  // Reduced cost of column j under cost vector c and the current basis.
  double reduced_cost(const std::vector<double>& c, index_t j) const {
    double rc = c[j];
    for (index_t r = 0; r < m_; ++r) rc -= c[basis_[r]] * tab_(r, j);
    return rc;
  }

  void pivot(index_t row, index_t col) {
    const double piv = tab_(row, col);
    for (index_t j = 0; j <= n_ + m_; ++j) tab_(row, j) /= piv;
    for (index_t r = 0; r < m_; ++r) {
      if (r == row) continue;
      const double f = tab_(r, col);
      if (f == 0.0) continue;
      for (index_t j = 0; j <= n_ + m_; ++j) tab_(r, j) -= f * tab_(row, j);
    }
    basis_[row] = col;
  }

  // Bland's rule iteration until optimal. Only columns < col_limit may enter
  // (phase 2 never re-admits artificials).
  void run(const std::vector<double>& c, index_t col_limit) {
    constexpr double kEps = 1e-11;
    for (index_t iter = 0; iter < 100000; ++iter) {
      index_t enter = n_ + m_;
      for (index_t j = 0; j < col_limit; ++j) {
        bool basic = false;
        for (index_t r = 0; r < m_; ++r)
          if (basis_[r] == j) {
            basic = true;
            break;
          }
        if (basic) continue;
        if (reduced_cost(c, j) < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter == n_ + m_) return;  // optimal

      index_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (index_t r = 0; r < m_; ++r) {
        const double coeff = tab_(r, enter);
        if (coeff <= kEps) continue;
        const double ratio = tab_(r, n_ + m_) / coeff;
        if (ratio < best_ratio - kEps ||
            (ratio < best_ratio + kEps &&
             (leave == m_ || basis_[r] < basis_[leave]))) {
          best_ratio = ratio;
          leave = r;
        }
      }
      if (leave == m_) throw numeric_error("simplex: unbounded objective");
      pivot(leave, enter);
    }
    throw numeric_error("simplex: iteration limit");
  }

  // After phase 1, pivot artificial variables out of the basis where a
  // structural column is available; redundant rows keep a zero artificial.
  void expel_artificials() {
    for (index_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (index_t j = 0; j < n_; ++j) {
        if (std::fabs(tab_(r, j)) > 1e-9) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  index_t m_, n_;
  Matrix tab_;
  std::vector<index_t> basis_;
  std::vector<double> cost_;
};

}  // namespace detail

/// min c.x s.t. A x = b, x >= 0. Rows with negative b are negated first.
inline LpResult lp_solve_standard(const Matrix& a, std::vector<double> b,
                                  const std::vector<double>& c) {
  if (a.rows() != b.size() || a.cols() != c.size())
    throw input_error("lp_solve_standard: shape mismatch");
  Matrix aa = a;
  for (index_t r = 0; r < aa.rows(); ++r) {
    if (b[r] < 0.0) {
      b[r] = -b[r];
      for (index_t j = 0; j < aa.cols(); ++j) aa(r, j) = -aa(r, j);
    }
  }
  return detail::Tableau(aa, b, c).solve();
}

struct MaximinResult {
  std::vector<double> weights;  // on the probability simplex
  double t = 0.0;
};

/// max t s.t. A w >= t * 1, sum w = 1, w >= 0. Vertex solution with
/// deterministic Bland tie-breaking. A is the per-outcome constraint matrix
/// (one row per outcome, one column per admissible mixture component).
inline MaximinResult lp_maximin(const Matrix& constraint_rows) {
  const index_t nb = constraint_rows.rows();
  const index_t m = constraint_rows.cols();
  if (nb == 0 || m == 0) throw input_error("lp_maximin: empty constraints");
  if (!constraint_rows.all_finite())
    throw input_error("lp_maximin: non-finite entry");

  // Variables: w (m), tp, tn (t = tp - tn), surplus s (nb).
  const index_t nvars = m + 2 + nb;
  Matrix a(nb + 1, nvars);
  std::vector<double> b(nb + 1, 0.0);
  std::vector<double> c(nvars, 0.0);
  for (index_t r = 0; r < nb; ++r) {
    for (index_t j = 0; j < m; ++j) a(r, j) = constraint_rows(r, j);
    a(r, m) = -1.0;
    a(r, m + 1) = 1.0;
    a(r, m + 2 + r) = -1.0;
  }
  for (index_t j = 0; j < m; ++j) a(nb, j) = 1.0;
  b[nb] = 1.0;
  c[m] = -1.0;  // maximize t
  c[m + 1] = 1.0;

  LpResult lp = lp_solve_standard(a, b, c);
  MaximinResult res;
  res.weights.assign(lp.x.begin(), lp.x.begin() + m);
  res.t = lp.x[m] - lp.x[m + 1];
  return res;
}

/// min cost.w s.t. A w >= floor * 1, sum w = 1, w >= 0. Second-stage
/// selector used to pick a canonical point on an optimal maximin face.
inline LpResult lp_min_cost_on_face(const Matrix& constraint_rows,
                                    double floor,
                                    const std::vector<double>& cost) {
  const index_t nb = constraint_rows.rows();
  const index_t m = constraint_rows.cols();
  if (cost.size() != m) throw input_error("lp_min_cost_on_face: bad cost");
  const index_t nvars = m + nb;
  Matrix a(nb + 1, nvars);
  std::vector<double> b(nb + 1, 0.0);
  std::vector<double> c(nvars, 0.0);
  for (index_t r = 0; r < nb; ++r) {
    for (index_t j = 0; j < m; ++j) a(r, j) = constraint_rows(r, j);
    a(r, m + r) = -1.0;
    b[r] = floor;
  }
  for (index_t j = 0; j < m; ++j) a(nb, j) = 1.0;
  b[nb] = 1.0;
  for (index_t j = 0; j < m; ++j) c[j] = cost[j];

  LpResult lp = lp_solve_standard(a, b, c);
  lp.x.resize(m);
  return lp;
}

}  // namespace dimcert

#endif  // DIMCERT_SIMPLEX_HPP
