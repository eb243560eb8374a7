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

#ifndef DIMCERT_INGEST_HPP
#define DIMCERT_INGEST_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/counts.hpp"
#include "dimcert/labels.hpp"
#include "dimcert/matrix.hpp"
#include "dimcert/pmatrix.hpp"
#include "dimcert/prep.hpp"
#include "dimcert/protocol.hpp"
#include "dimcert/svd.hpp"

namespace dimcert {

/// Injective assignment of qudit basis indices to OAM charges.
struct LabelMap {
  std::vector<int> charges;  // charges[k] = OAM charge of |k>

  void validate(int charge_bound = 3) const {
    for (index_t i = 0; i < charges.size(); ++i) {
      if (std::abs(charges[i]) > charge_bound)
        throw input_error("label map: charge outside supported range");
      for (index_t j = i + 1; j < charges.size(); ++j)
        if (charges[i] == charges[j])
          throw input_error("label map: repeated charge");
    }
  }
};

namespace detail {

// OAM superposition corresponding to a protocol projector under the map.
inline Superposition map_element(const PovmElement& el, const LabelMap& map) {
  Superposition sup;
  index_t first = el.vector.size(), second = el.vector.size();
  double second_sign = 1.0;
  for (index_t i = 0; i < el.vector.size(); ++i) {
    if (std::abs(el.vector[i]) < 1e-12) continue;
    if (first == el.vector.size()) {
      first = i;
    } else {
      second = i;
      second_sign = el.vector[i].real() > 0 ? 1.0 : -1.0;
    }
  }
  sup.charge1 = map.charges[first];
  if (second != el.vector.size()) {
    sup.two_mode = true;
    sup.charge2 = map.charges[second];
    sup.relative_sign = second_sign > 0 ? +1 : -1;
    sup.canonicalize();
  }
  return sup;
}

}  // namespace detail

struct Reconstruction {
  ProbMatrix prob;
  Matrix std_dev;  // per-cell first-order standard deviation of prob
};

/// Rebuild the conditional-probability matrix from raw counts.
///
/// Each preparation component i (a projector of the protocol, sent as one
/// OAM superposition) is normalized by its total counts over the complete
/// computational-basis projector set, giving the overlap estimate
/// C(i -> b); then P'_xb = sum_i lambda_i w_b C(i -> b) and each row is
/// renormalized to sum 1. The normalization makes the result invariant
/// under global count rescaling and exact on noiseless data. Standard
/// deviations propagate to first order from the per-cell standard errors
/// (sample std / sqrt(runs)).
inline Reconstruction reconstruct(const CountMatrix& counts, const Povm& povm,
                                  const std::vector<PreparedState>& states,
                                  const LabelMap& map) {
  counts.validate();
  map.validate();
  if (map.charges.size() != povm.dimension)
    throw input_error("reconstruct: map size != protocol dimension");
  const index_t n = povm.size();
  if (states.size() != n) throw input_error("reconstruct: state count");

  // Count-matrix row/column index of every protocol projector under the map.
  std::vector<index_t> element_cell(n);
  for (index_t b = 0; b < n; ++b)
    element_cell[b] = counts.index_of(detail::map_element(povm.elements[b], map));
  std::vector<index_t> basis_cell(povm.dimension);
  for (index_t k = 0; k < povm.dimension; ++k) basis_cell[k] = element_cell[k];

  const double sem_scale =
      counts.runs > 1 ? 1.0 / std::sqrt(static_cast<double>(counts.runs)) : 1.0;

  Reconstruction rec;
  rec.prob.dimension = povm.dimension;
  rec.prob.variant = povm.variant;
  rec.prob.values = Matrix(n, n);
  rec.std_dev = Matrix(n, n);
  for (index_t b = 0; b < n; ++b)
    rec.prob.labels.push_back(outcome_label_string(povm, b));

  for (index_t x = 0; x < n; ++x) {
    for (index_t b = 0; b < n; ++b) {
      double val = 0.0, var = 0.0;
      for (const auto& [comp, lam] : states[x].mixture) {
        const index_t col = element_cell[comp];
        double total = 0.0;
        for (index_t k = 0; k < povm.dimension; ++k)
          total += counts.mean(basis_cell[k], col);
        if (total <= 0.0)
          throw input_error("reconstruct: zero total counts for a component");
        const double c_b = counts.mean(element_cell[b], col);
        const double scale = lam * povm.elements[b].weight;
        val += scale * c_b / total;

        // d(c_b / total)/d(cell): 1/total for the numerator cell, minus
        // c_b/total^2 for every cell inside the normalization basis.
        double dvar = 0.0;
        {
          const double s_num = counts.std_dev(element_cell[b], col) * sem_scale;
          double deriv = 1.0 / total;
          bool numerator_in_basis = false;
          for (index_t k = 0; k < povm.dimension; ++k)
            if (basis_cell[k] == element_cell[b]) numerator_in_basis = true;
          if (numerator_in_basis) deriv -= c_b / (total * total);
          dvar += deriv * deriv * s_num * s_num;
          for (index_t k = 0; k < povm.dimension; ++k) {
            if (basis_cell[k] == element_cell[b]) continue;
            const double s_cell = counts.std_dev(basis_cell[k], col) * sem_scale;
            const double d_cell = -c_b / (total * total);
            dvar += d_cell * d_cell * s_cell * s_cell;
          }
        }
        var += scale * scale * dvar;
      }
      rec.prob.values(x, b) = val;
      rec.std_dev(x, b) = std::sqrt(var);
    }
    double row_sum = 0.0;
    for (index_t b = 0; b < n; ++b) row_sum += rec.prob.values(x, b);
    if (row_sum <= 0.0) throw input_error("reconstruct: empty row");
    for (index_t b = 0; b < n; ++b) {
      rec.prob.values(x, b) /= row_sum;
      rec.std_dev(x, b) /= row_sum;
    }
  }
  return rec;
}

namespace detail {

inline void enumerate_injective_maps(int charge_bound, index_t d,
                                     std::vector<LabelMap>& out) {
  std::vector<int> charges;
  for (int c = -charge_bound; c <= charge_bound; ++c) charges.push_back(c);
  LabelMap current;
  current.charges.resize(d);
  std::vector<bool> used(charges.size(), false);
  // Lexicographic over charge sequences; ties in the search resolve to the
  // first (lexicographically smallest) map.
  std::function<void(index_t)> rec = [&](index_t pos) {
    if (pos == d) {
      out.push_back(current);
      return;
    }
    for (index_t i = 0; i < charges.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      current.charges[pos] = charges[i];
      rec(pos + 1);
      used[i] = false;
    }
  };
  rec(0);
}

inline index_t thread_budget() {
  if (const char* env = std::getenv("DIMCERT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<index_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace detail

/// Exhaustive search over injective qudit -> charge assignments for the map
/// minimizing ||P'(map) - target||_2. Maps whose required labels are absent
/// from the dataset are skipped. The protocol's cyclic/mirror relabelings
/// leave the objective exactly invariant, so the minimum is attained by a
/// whole dihedral orbit; the lexicographically smallest member is returned.
inline LabelMap optimize_label_map(const CountMatrix& counts, const Povm& povm,
                                   const std::vector<PreparedState>& states,
                                   const ProbMatrix& target,
                                   int charge_bound = 3) {
  if (povm.dimension > 7)
    throw input_error("optimize_label_map: exhaustive search supports d <= 7");
  std::vector<LabelMap> maps;
  detail::enumerate_injective_maps(charge_bound, povm.dimension, maps);

  std::vector<double> norms(maps.size(),
                            std::numeric_limits<double>::infinity());
  const index_t nthreads = std::min<index_t>(detail::thread_budget(), maps.size());
  std::vector<std::thread> workers;
  std::atomic<index_t> cursor{0};
  for (index_t t = 0; t < nthreads; ++t) {
    workers.emplace_back([&]() {
      for (;;) {
        const index_t i = cursor.fetch_add(1);
        if (i >= maps.size()) return;
        try {
          const Reconstruction rec = reconstruct(counts, povm, states, maps[i]);
          norms[i] = spectral_norm(rec.prob.values - target.values);
        } catch (const input_error&) {
          // Required label missing under this map: not a candidate.
        }
      }
    });
  }
  for (auto& w : workers) w.join();

  index_t best = maps.size();
  for (index_t i = 0; i < maps.size(); ++i)
    if (best == maps.size() || norms[i] < norms[best]) best = i;
  if (best == maps.size() || !std::isfinite(norms[best]))
    throw input_error("optimize_label_map: no feasible label map");
  return maps[best];
}

/// Average reconstructions from relabeled passes over the same raw data.
/// The mean divides by m; the per-cell uncertainty deliberately does not
/// (sigma_ag = sqrt(sum sigma^2)): the passes are re-indexings of one
/// dataset, not independent samples.
inline Reconstruction permutation_average(
    const std::vector<Reconstruction>& reconstructions) {
  if (reconstructions.empty())
    throw input_error("permutation_average: empty input");
  const index_t n = reconstructions.front().prob.size();
  Reconstruction out = reconstructions.front();
  Matrix sum(n, n), var(n, n);
  for (const auto& rec : reconstructions) {
    if (rec.prob.size() != n)
      throw input_error("permutation_average: shape mismatch");
    for (index_t i = 0; i < n; ++i)
      for (index_t j = 0; j < n; ++j) {
        sum(i, j) += rec.prob.values(i, j);
        var(i, j) += rec.std_dev(i, j) * rec.std_dev(i, j);
      }
  }
  const double m = static_cast<double>(reconstructions.size());
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j) {
      out.prob.values(i, j) = sum(i, j) / m;
      out.std_dev(i, j) = std::sqrt(var(i, j));
    }
  return out;
}

/// The 2d dihedral relabelings of the qudit indices (cyclic shifts and
/// mirrored shifts). Composing the base map with each of these and
/// averaging the reconstructions dilutes configuration-dependent
/// systematics without touching the raw data.
inline std::vector<LabelMap> dihedral_map_family(const LabelMap& base,
                                                 index_t d) {
  if (base.charges.size() != d)
    throw input_error("dihedral_map_family: map size mismatch");
  std::vector<LabelMap> family;
  for (int mirrored = 0; mirrored < 2; ++mirrored)
    for (index_t s = 0; s < d; ++s) {
      LabelMap m;
      m.charges.resize(d);
      for (index_t k = 0; k < d; ++k) {
        const index_t g = mirrored ? (s + d - k) % d : (k + s) % d;
        m.charges[k] = base.charges[g];
      }
      family.push_back(std::move(m));
    }
  return family;
}

}  // namespace dimcert

#endif  // DIMCERT_INGEST_HPP
