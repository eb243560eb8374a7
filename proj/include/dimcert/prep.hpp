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

#ifndef DIMCERT_PREP_HPP
#define DIMCERT_PREP_HPP

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/matrix.hpp"
#include "dimcert/protocol.hpp"
#include "dimcert/simplex.hpp"

namespace dimcert {

/// A preparation rho_x: a probabilistic mixture over the protocol's
/// normalized projectors, excluding (and orthogonal to) outcome x.
struct PreparedState {
  index_t excluded_outcome = 0;
  std::vector<std::pair<index_t, double>> mixture;  // (projector index, weight)
};

/// Indices b != x whose normalized projector is orthogonal to outcome x's.
inline std::vector<index_t> orthogonal_support(const Povm& povm, index_t x,
                                               double tol = 1e-12) {
  if (x >= povm.size()) throw input_error("orthogonal_support: bad outcome");
  std::vector<index_t> support;
  for (index_t b = 0; b < povm.size(); ++b) {
    if (b == x) continue;
    if (povm.elements[x].overlap(povm.elements[b]) <= tol)
      support.push_back(b);
  }
  return support;
}

/// rho_x = sum_i lambda_i |v_i><v_i| as a real d x d matrix (all protocol
/// amplitudes are real).
inline Matrix density_matrix(const Povm& povm, const PreparedState& state) {
  const index_t d = povm.dimension;
  Matrix rho(d, d);
  for (const auto& [idx, w] : state.mixture) {
    const auto& v = povm.elements[idx].vector;
    for (index_t i = 0; i < d; ++i)
      for (index_t j = 0; j < d; ++j)
        rho(i, j) += w * (v[i] * std::conj(v[j])).real();
  }
  return rho;
}

namespace detail {

inline bool is_incoherent_element(const PovmElement& el) {
  index_t nonzero = 0;
  for (const auto& a : el.vector)
    if (std::abs(a) > 1e-12) ++nonzero;
  return nonzero == 1;
}

// Outcome index of the opposite-sign partner of a two-mode element, or
// npos when the POVM does not contain one.
inline index_t opposite_sign_partner(const Povm& povm, index_t b) {
  const auto& v = povm.elements[b].vector;
  std::vector<cplx> flipped(v.size());
  bool past_first = false;
  for (index_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 && !past_first) {
      flipped[i] = v[i];
      past_first = true;
    } else {
      flipped[i] = -v[i];
    }
  }
  PovmElement probe{flipped, 1.0, 0};
  for (index_t j = 0; j < povm.size(); ++j) {
    if (j == b) continue;
    if (std::abs(probe.overlap(povm.elements[j]) - 1.0) < 1e-9) return j;
  }
  return static_cast<index_t>(-1);
}

// Constraint matrix for the per-x LP: one row per outcome b != x, one
// column per support component; entry = w_b * |<v_b|v_i>|^2.
inline Matrix prep_constraints(const Povm& povm, index_t x,
                               const std::vector<index_t>& support) {
  const index_t n = povm.size();
  Matrix a(n - 1, support.size());
  index_t row = 0;
  for (index_t b = 0; b < n; ++b) {
    if (b == x) continue;
    for (index_t j = 0; j < support.size(); ++j)
      a(row, j) = povm.elements[b].weight *
                  povm.elements[b].overlap(povm.elements[support[j]]);
    ++row;
  }
  return a;
}

// Average the mixture over the stabilizer of x inside the protocol's 2d
// outcome relabelings. Degenerate optima then come out symmetric, matching
// the published states.
inline void symmetrize_over_stabilizer(const Povm& povm, index_t x,
                                       std::map<index_t, double>& lambda) {
  const auto perms = outcome_permutations(povm.dimension, povm.variant);
  std::map<index_t, double> acc;
  index_t stab_size = 0;
  for (const auto& perm : perms) {
    if (perm.map[x] != x) continue;
    ++stab_size;
    for (const auto& [idx, w] : lambda) acc[perm.map[idx]] += w;
  }
  for (auto& [idx, w] : acc) w /= static_cast<double>(stab_size);
  lambda = std::move(acc);
}

// Replace the balanced part of every +/- pair by the equivalent incoherent
// weights (lam * P+ + lam * P- has the same density matrix as lam|i><i| +
// lam|j><j|). The published states use this fully decohered form.
inline void fold_balanced_pairs(const Povm& povm,
                                std::map<index_t, double>& lambda) {
  struct Fold {
    index_t plus, minus;
    double amount;
  };
  std::vector<Fold> folds;
  for (const auto& [idx, w] : lambda) {
    if (w <= 0.0 || is_incoherent_element(povm.elements[idx])) continue;
    const index_t partner = opposite_sign_partner(povm, idx);
    if (partner == static_cast<index_t>(-1) || partner < idx) continue;
    auto it = lambda.find(partner);
    if (it == lambda.end() || it->second <= 0.0) continue;
    folds.push_back({idx, partner, std::min(w, it->second)});
  }
  for (const auto& f : folds) {
    lambda[f.plus] -= f.amount;
    lambda[f.minus] -= f.amount;
    const auto& v = povm.elements[f.plus].vector;
    for (index_t i = 0; i < v.size(); ++i)
      if (std::abs(v[i]) > 1e-12) lambda[i] += f.amount;
  }
}

inline PreparedState finalize_state(index_t x,
                                    const std::map<index_t, double>& lambda) {
  PreparedState st;
  st.excluded_outcome = x;
  double total = 0.0;
  for (const auto& [idx, w] : lambda)
    if (w > 1e-12) total += w;
  for (const auto& [idx, w] : lambda)
    if (w > 1e-12) st.mixture.emplace_back(idx, w / total);
  return st;
}

}  // namespace detail

struct PreparationResult {
  std::vector<PreparedState> states;
  double t = 0.0;  // min over x of the per-x maximin optimum
};

/// Per-x maximin optimization over mixtures of orthogonal-support
/// projectors: maximize the smallest off-diagonal outcome probability.
/// Degenerate optima are resolved deterministically: among optimal
/// mixtures, minimize total coherent weight (second-stage LP), then
/// symmetrize over the stabilizer of x and fold balanced +/- pairs.
inline PreparationResult optimize_preparations(const Povm& povm) {
  if (povm.completeness_defect() > 1e-9)
    throw protocol_error("optimize_preparations: POVM is not complete");
  PreparationResult out;
  out.t = 1.0;
  for (index_t x = 0; x < povm.size(); ++x) {
    const auto support = orthogonal_support(povm, x);
    if (support.empty())
      throw protocol_error("optimize_preparations: empty orthogonal support");
    const Matrix a = detail::prep_constraints(povm, x, support);

    const MaximinResult stage1 = lp_maximin(a);
    out.t = std::min(out.t, stage1.t);

    std::vector<double> coherent_cost(support.size(), 0.0);
    for (index_t j = 0; j < support.size(); ++j)
      if (!detail::is_incoherent_element(povm.elements[support[j]]))
        coherent_cost[j] = 1.0;
    const LpResult stage2 =
        lp_min_cost_on_face(a, stage1.t - 1e-9, coherent_cost);

    std::map<index_t, double> lambda;
    for (index_t j = 0; j < support.size(); ++j)
      if (stage2.x[j] > 1e-12) lambda[support[j]] = stage2.x[j];
    detail::symmetrize_over_stabilizer(povm, x, lambda);
    detail::fold_balanced_pairs(povm, lambda);
    out.states.push_back(detail::finalize_state(x, lambda));
  }
  return out;
}

namespace detail {

// Published reference mixtures for the convex protocol. The incoherent-row
// states coincide with the maximin optimum; the coherent-row states trade a
// little worst-case probability for a flatter singular spectrum and are
// protocol constants on the same footing as p = 1/3.
inline PreparationResult convex_reference_states(const Povm& povm) {
  const index_t d = povm.dimension;
  PreparationResult out;
  auto inc_weights = [&]() -> std::vector<double> {
    // Weight on |k+1>,...,|k+d-1> for the state excluding outcome k.
    if (d == 3) return {0.5, 0.5};
    if (d == 5) return {1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3};
    return {0.25, 0.125, 0.125, 0.125, 0.125, 0.25};
  }();
  auto coh_weights = [&]() -> std::vector<double> {
    // Weight on |k+2>,...,|k+d-1> for the state excluding pair (k, k+1).
    if (d == 3) return {0.4};
    if (d == 5) return {0.212, 0.203, 0.212};
    return {0.148, 0.144, 0.145, 0.144, 0.148};
  }();
  const double partner = (d == 3) ? 0.6 : (d == 5) ? 0.373 : 0.271;

  for (index_t k = 0; k < d; ++k) {
    PreparedState st;
    st.excluded_outcome = k;
    for (index_t t = 1; t < d; ++t)
      st.mixture.emplace_back((k + t) % d, inc_weights[t - 1]);
    out.states.push_back(std::move(st));
  }
  for (index_t sign_block = 0; sign_block < 2; ++sign_block) {
    for (index_t k = 0; k < d; ++k) {
      PreparedState st;
      st.excluded_outcome = (sign_block == 0 ? d : 2 * d) + k;
      for (index_t t = 2; t < d; ++t)
        st.mixture.emplace_back((k + t) % d, coh_weights[t - 2]);
      st.mixture.emplace_back((sign_block == 0 ? 2 * d : d) + k, partner);
      out.states.push_back(std::move(st));
    }
  }
  // Worst-case off-diagonal probability: the incoherent rows bind.
  out.t = 1.0 / (3.0 * static_cast<double>(d + 1));
  return out;
}

}  // namespace detail

/// The protocol's canonical preparations. For the convex protocol at
/// d in {3, 5, 7} these are the published reference mixtures; for every
/// other supported protocol they are the optimizer's output.
inline PreparationResult reference_preparations(const Povm& povm) {
  const bool convex_family =
      povm.variant == Variant::kConvex && povm.size() == 3 * povm.dimension &&
      std::fabs(povm.elements[0].weight - 1.0 / 3.0) < 1e-12;
  if (convex_family &&
      (povm.dimension == 3 || povm.dimension == 5 || povm.dimension == 7))
    return detail::convex_reference_states(povm);
  return optimize_preparations(povm);
}

/// Exclusion defect: max over states of tr(rho_x M_x); zero by construction
/// up to rounding.
inline double exclusion_defect(const Povm& povm,
                               const std::vector<PreparedState>& states) {
  double defect = 0.0;
  for (const auto& st : states) {
    const auto& target = povm.elements[st.excluded_outcome];
    double val = 0.0;
    for (const auto& [idx, w] : st.mixture)
      val += w * target.weight * target.overlap(povm.elements[idx]);
    defect = std::max(defect, val);
  }
  return defect;
}

}  // namespace dimcert

#endif  // DIMCERT_PREP_HPP
