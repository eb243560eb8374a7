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

#ifndef DIMCERT_PROTOCOL_HPP
#define DIMCERT_PROTOCOL_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/matrix.hpp"

namespace dimcert {

using cplx = std::complex<double>;

enum class Variant {
  kConvex,      // 3d outcomes, p = 1/3 (1/3 strategy A + 2/3 strategy B)
  kStrategyA,   // incoherent-heavy PVM family
  kStrategyB,   // coherent-heavy PVM family
  kCoherent,    // alias: strategy B alone, merged to a POVM
  kIncoherent,  // alias: strategy A alone, merged to a POVM
  kMaximal,     // d^2 outcomes over all index pairs
};

inline std::string variant_name(Variant v) {
  switch (v) {
    case Variant::kConvex: return "convex";
    case Variant::kStrategyA: return "strategyA";
    case Variant::kStrategyB: return "strategyB";
    case Variant::kCoherent: return "coherent";
    case Variant::kIncoherent: return "incoherent";
    case Variant::kMaximal: return "maximal";
  }
  throw protocol_error("unknown variant");
}

inline Variant variant_from_name(const std::string& s) {
  if (s == "convex") return Variant::kConvex;
  if (s == "strategyA") return Variant::kStrategyA;
  if (s == "strategyB") return Variant::kStrategyB;
  if (s == "coherent") return Variant::kCoherent;
  if (s == "incoherent") return Variant::kIncoherent;
  if (s == "maximal") return Variant::kMaximal;
  throw input_error("unknown variant name: " + s);
}

/// One weighted rank-1 POVM element M_b = weight * |v><v|.
/// Amplitudes are stored complex although every protocol vector here is
/// real; phase-bearing extensions then cost nothing.
struct PovmElement {
  std::vector<cplx> vector;  // unit norm
  double weight = 0.0;
  index_t label = 0;

  double overlap(const PovmElement& other) const {
    cplx acc = 0.0;
    for (index_t i = 0; i < vector.size(); ++i)
      acc += std::conj(vector[i]) * other.vector[i];
    return std::norm(acc);
  }
};

struct Povm {
  index_t dimension = 0;
  Variant variant = Variant::kConvex;
  std::vector<PovmElement> elements;

  index_t size() const { return elements.size(); }

  /// Element-wise max-abs deviation of sum_b M_b from the identity.
  double completeness_defect() const {
    std::vector<std::vector<cplx>> acc(dimension,
                                       std::vector<cplx>(dimension, 0.0));
    for (const auto& el : elements)
      for (index_t i = 0; i < dimension; ++i)
        for (index_t j = 0; j < dimension; ++j)
          acc[i][j] += el.weight * el.vector[i] * std::conj(el.vector[j]);
    double defect = 0.0;
    for (index_t i = 0; i < dimension; ++i)
      for (index_t j = 0; j < dimension; ++j) {
        const cplx want = (i == j) ? 1.0 : 0.0;
        defect = std::max(defect, std::abs(acc[i][j] - want));
      }
    return defect;
  }
};

/// Orthonormal basis of d projectors, each carrying its global outcome label.
struct PvmBasis {
  std::vector<index_t> outcome_labels;        // size d
  std::vector<std::vector<cplx>> projectors;  // d unit vectors
};

struct MeasurementStrategy {
  index_t dimension = 0;
  std::vector<PvmBasis> bases;
  std::vector<double> probabilities;  // one per basis, sums to 1
};

/// A relabeling of the n outcomes that leaves the protocol family invariant.
struct OutcomePermutation {
  std::vector<index_t> map;  // outcome b -> map[b]
  bool mirrored = false;
  index_t shift = 0;
};

namespace detail {

inline std::vector<cplx> basis_vec(index_t d, index_t k) {
  std::vector<cplx> v(d, 0.0);
  v[k] = 1.0;
  return v;
}

inline std::vector<cplx> pair_vec(index_t d, index_t i, index_t j,
                                  double sign) {
  std::vector<cplx> v(d, 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  v[i] = r;
  v[j] = sign * r;
  return v;
}

inline void require_odd_dimension(index_t d) {
  if (d < 3 || d % 2 == 0)
    throw protocol_error("protocol requires odd dimension >= 3, got " +
                         std::to_string(d));
}

}  // namespace detail

/// Human-readable outcome label: "2" for |2><2|, "2+3" / "2-3" for the
/// neighbor superpositions.
inline std::string outcome_label_string(const Povm& povm, index_t b) {
  const auto& v = povm.elements[b].vector;
  index_t first = povm.dimension, second = povm.dimension;
  double second_sign = 1.0;
  for (index_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) < 1e-12) continue;
    if (first == povm.dimension) {
      first = i;
    } else {
      second = i;
      second_sign = (v[i].real() > 0) ? 1.0 : -1.0;
    }
  }
  if (second == povm.dimension) return std::to_string(first);
  return std::to_string(first) + (second_sign > 0 ? "+" : "-") +
         std::to_string(second);
}

/// The 3d-outcome target measurement: d incoherent projectors of weight p,
/// then the (k, k+1) "+" superpositions, then the "-" ones, each of weight
/// (1-p)/2. Outcome order is fixed to this block layout everywhere.
inline Povm build_target_povm(index_t d, double p,
                              Variant tag = Variant::kConvex) {
  detail::require_odd_dimension(d);
  if (p < 0.0 || p > 1.0)
    throw input_error("build_target_povm: p outside [0,1]");
  Povm povm;
  povm.dimension = d;
  povm.variant = tag;
  povm.elements.reserve(3 * d);
  for (index_t k = 0; k < d; ++k)
    povm.elements.push_back({detail::basis_vec(d, k), p, k});
  const double w = (1.0 - p) / 2.0;
  for (index_t k = 0; k < d; ++k)
    povm.elements.push_back(
        {detail::pair_vec(d, k, (k + 1) % d, +1.0), w, d + k});
  for (index_t k = 0; k < d; ++k)
    povm.elements.push_back(
        {detail::pair_vec(d, k, (k + 1) % d, -1.0), w, 2 * d + k});
  return povm;
}

enum class StrategyKind { kA, kB };

/// The two projective decompositions. Basis j of strategy A holds the d-2
/// incoherent projectors j..j+d-3 and the +/- pair on (j+d-2, j+d-1); basis
/// j of strategy B holds incoherent j and the +/- pairs starting at j+1,
/// j+3, ..., j+d-2. Both use uniform basis-selection probability 1/d and
/// reproduce the published listings.
inline MeasurementStrategy build_strategy(index_t d, StrategyKind kind) {
  detail::require_odd_dimension(d);
  MeasurementStrategy strat;
  strat.dimension = d;
  strat.probabilities.assign(d, 1.0 / static_cast<double>(d));
  for (index_t j = 0; j < d; ++j) {
    PvmBasis basis;
    if (kind == StrategyKind::kA) {
      for (index_t t = 0; t + 2 < d; ++t) {
        const index_t k = (j + t) % d;
        basis.outcome_labels.push_back(k);
        basis.projectors.push_back(detail::basis_vec(d, k));
      }
      const index_t k = (j + d - 2) % d;
      basis.outcome_labels.push_back(d + k);
      basis.projectors.push_back(detail::pair_vec(d, k, (k + 1) % d, +1.0));
      basis.outcome_labels.push_back(2 * d + k);
      basis.projectors.push_back(detail::pair_vec(d, k, (k + 1) % d, -1.0));
    } else {
      basis.outcome_labels.push_back(j);
      basis.projectors.push_back(detail::basis_vec(d, j));
      for (index_t t = 1; t + 1 < d; t += 2) {
        const index_t k = (j + t) % d;
        basis.outcome_labels.push_back(d + k);
        basis.projectors.push_back(detail::pair_vec(d, k, (k + 1) % d, +1.0));
        basis.outcome_labels.push_back(2 * d + k);
        basis.projectors.push_back(detail::pair_vec(d, k, (k + 1) % d, -1.0));
      }
    }
    strat.bases.push_back(std::move(basis));
  }
  return strat;
}

/// Merge a randomized-PVM strategy into the statistically equivalent POVM:
/// each outcome's weight is the sum over bases of (basis probability x
/// multiplicity of that projector in the basis).
inline Povm effective_povm(const MeasurementStrategy& strategy,
                           Variant tag = Variant::kConvex) {
  const index_t d = strategy.dimension;
  const index_t n = 3 * d;
  std::vector<double> weight(n, 0.0);
  for (index_t j = 0; j < strategy.bases.size(); ++j)
    for (index_t slot = 0; slot < strategy.bases[j].outcome_labels.size();
         ++slot)
      weight[strategy.bases[j].outcome_labels[slot]] +=
          strategy.probabilities[j];

  // Incoherent weights must agree (they define p), and so must the pairs.
  const double p = weight[0];
  Povm povm = build_target_povm(d, p, tag);
  for (index_t b = 0; b < n; ++b) povm.elements[b].weight = weight[b];
  return povm;
}

/// Convex mixture alpha * A + (1-alpha) * B at the statistics level.
inline Povm mix_strategies(const MeasurementStrategy& a,
                           const MeasurementStrategy& b, double alpha,
                           Variant tag = Variant::kConvex) {
  if (a.dimension != b.dimension)
    throw protocol_error("mix_strategies: dimension mismatch");
  if (alpha < 0.0 || alpha > 1.0)
    throw input_error("mix_strategies: alpha outside [0,1]");
  Povm pa = effective_povm(a, tag);
  Povm pb = effective_povm(b, tag);
  for (index_t i = 0; i < pa.elements.size(); ++i)
    pa.elements[i].weight = alpha * pa.elements[i].weight +
                            (1.0 - alpha) * pb.elements[i].weight;
  return pa;
}

/// d^2-outcome family: d incoherent projectors of weight a and, for every
/// unordered pair i<j, "+" and "-" superpositions of weight (1-a)/(d-1).
/// Completeness holds for any a in [0,1]; a = 1/d gives equal traces.
inline Povm build_maximal_povm(index_t d, double incoherent_weight = -1.0) {
  detail::require_odd_dimension(d);
  const double a =
      incoherent_weight < 0.0 ? 1.0 / static_cast<double>(d) : incoherent_weight;
  if (a < 0.0 || a > 1.0)
    throw input_error("build_maximal_povm: weight outside [0,1]");
  const double c = (1.0 - a) / static_cast<double>(d - 1);
  Povm povm;
  povm.dimension = d;
  povm.variant = Variant::kMaximal;
  index_t label = 0;
  for (index_t k = 0; k < d; ++k)
    povm.elements.push_back({detail::basis_vec(d, k), a, label++});
  for (double sign : {+1.0, -1.0})
    for (index_t i = 0; i < d; ++i)
      for (index_t j = i + 1; j < d; ++j)
        povm.elements.push_back({detail::pair_vec(d, i, j, sign), c, label++});
  return povm;
}

namespace detail {

// Index of the unordered pair {i, j} (i < j) in the maximal layout.
inline index_t pair_slot(index_t d, index_t i, index_t j) {
  if (i > j) std::swap(i, j);
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace detail

/// The 2d outcome relabelings induced by cyclic shifts and mirror reversal
/// of the qudit labels. Both the 3d-outcome and maximal families map "+"
/// projectors to "+" and "-" to "-" (the mirrored "-" vector flips only by
/// a global sign, which leaves the projector unchanged).
inline std::vector<OutcomePermutation> outcome_permutations(index_t d,
                                                            Variant variant) {
  detail::require_odd_dimension(d);
  std::vector<OutcomePermutation> perms;
  const bool maximal = (variant == Variant::kMaximal);
  const index_t n = maximal ? d * d : 3 * d;
  const index_t npairs = d * (d - 1) / 2;

  for (int mirrored = 0; mirrored < 2; ++mirrored) {
    for (index_t s = 0; s < d; ++s) {
      // Qudit map g(k) = k + s (cyclic) or g(k) = s - k (mirror family).
      auto g = [&](index_t k) {
        return mirrored ? (s + d - k % d) % d : (k + s) % d;
      };
      OutcomePermutation perm;
      perm.mirrored = mirrored != 0;
      perm.shift = s;
      perm.map.assign(n, 0);
      for (index_t k = 0; k < d; ++k) perm.map[k] = g(k);
      if (!maximal) {
        for (index_t k = 0; k < d; ++k) {
          // Pair (k, k+1) -> (g(k), g(k+1)); for mirrors this is the pair
          // starting at g(k)-1 = s-k-1 traversed in reverse.
          const index_t target = mirrored ? (s + d - k - 1 + d) % d : (k + s) % d;
          perm.map[d + k] = d + target;
          perm.map[2 * d + k] = 2 * d + target;
        }
      } else {
        for (index_t i = 0; i < d; ++i)
          for (index_t j = i + 1; j < d; ++j) {
            const index_t slot = detail::pair_slot(d, i, j);
            const index_t tslot = detail::pair_slot(d, g(i), g(j));
            perm.map[d + slot] = d + tslot;
            perm.map[d + npairs + slot] = d + npairs + tslot;
          }
      }
      perms.push_back(std::move(perm));
    }
  }
  return perms;
}

/// P -> Pi P Pi^T for an outcome permutation acting on rows and columns.
inline Matrix apply_permutation(const Matrix& p,
                                const OutcomePermutation& perm) {
  const index_t n = p.rows();
  if (perm.map.size() != n || p.cols() != n)
    throw input_error("apply_permutation: size mismatch");
  Matrix out(n, n);
  for (index_t r = 0; r < n; ++r)
    for (index_t c = 0; c < n; ++c) out(perm.map[r], perm.map[c]) = p(r, c);
  return out;
}

/// Convenience constructor covering the CLI variant set.
inline Povm build_variant_povm(index_t d, Variant variant, double p = -1.0) {
  switch (variant) {
    case Variant::kConvex: {
      if (p >= 0.0) return build_target_povm(d, p, Variant::kConvex);
      auto a = build_strategy(d, StrategyKind::kA);
      auto b = build_strategy(d, StrategyKind::kB);
      return mix_strategies(a, b, 1.0 / 3.0, Variant::kConvex);
    }
    case Variant::kIncoherent:
    case Variant::kStrategyA:
      return effective_povm(build_strategy(d, StrategyKind::kA), variant);
    case Variant::kCoherent:
    case Variant::kStrategyB:
      return effective_povm(build_strategy(d, StrategyKind::kB), variant);
    case Variant::kMaximal:
      return build_maximal_povm(d, p);
  }
  throw protocol_error("unknown variant");
}

}  // namespace dimcert

#endif  // DIMCERT_PROTOCOL_HPP
