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

#ifndef DIMCERT_SIM_HPP
#define DIMCERT_SIM_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/counts.hpp"
#include "dimcert/labels.hpp"
#include "dimcert/rng.hpp"

namespace dimcert {

/// Noise model for synthetic coincidence data. Crosstalk acts on both the
/// preparation and the projection stage: each leaks the fraction
/// `crosstalk` of its population to the two neighboring charges (split
/// evenly, lost at the truncation boundary), so the spiral-bandwidth
/// observable comes out at about the nominal crosstalk value.
struct NoiseModel {
  double crosstalk = 0.0;       // per-stage nearest-neighbor leakage
  double dark_fraction = 0.0;   // uniform background, fraction of N
  double counts_per_setting = 1e4;
  index_t runs = 50;
  std::uint64_t seed = 1;
  bool analytic = false;        // skip Poisson sampling (N -> infinity)
  int charge_bound = 3;

  void validate() const {
    if (crosstalk < 0.0 || crosstalk >= 1.0)
      throw input_error("noise model: crosstalk outside [0,1)");
    if (dark_fraction < 0.0 || dark_fraction >= 1.0)
      throw input_error("noise model: dark fraction outside [0,1)");
    if (!(counts_per_setting > 0.0))
      throw input_error("noise model: counts per setting must be positive");
    if (runs < 1) throw input_error("noise model: need at least one run");
  }
};

/// |<meas|prep>|^2 in the truncated charge basis.
inline double ideal_overlap(const Superposition& prep,
                            const Superposition& meas, int charge_bound = 3) {
  auto check = [&](const Superposition& s) {
    if (std::abs(s.charge1) > charge_bound ||
        (s.two_mode && std::abs(s.charge2) > charge_bound))
      throw input_error("ideal_overlap: charge outside truncated space");
  };
  check(prep);
  check(meas);
  return overlap_probability(prep, meas);
}

/// The standard label set: all single charges and all pairwise two-mode
/// superpositions (both signs) within [-bound, bound]. bound = 3 gives the
/// 49-label tomographically complete set.
inline std::vector<std::string> full_label_set(int charge_bound = 3) {
  std::vector<std::string> labels;
  for (int c = -charge_bound; c <= charge_bound; ++c) {
    Superposition s;
    s.charge1 = c;
    labels.push_back(format_label(s));
  }
  for (int sign : {+1, -1})
    for (int c1 = -charge_bound; c1 <= charge_bound; ++c1)
      for (int c2 = c1 + 1; c2 <= charge_bound; ++c2) {
        Superposition s;
        s.charge1 = c1;
        s.charge2 = c2;
        s.relative_sign = sign;
        s.two_mode = true;
        labels.push_back(format_label(s));
      }
  return labels;
}

namespace detail {

// Population over charges after one leaky stage:
// (1-eps) p + eps/2 (shift up + shift down), clipped at the bounds.
inline std::map<int, double> leaked_population(const Superposition& s,
                                               double eps, int bound) {
  std::map<int, double> pop;
  auto add = [&](int charge, double w) {
    if (std::abs(charge) <= bound) pop[charge] += w;
  };
  const int charges[2] = {s.charge1, s.two_mode ? s.charge2 : s.charge1};
  const int ncharges = s.two_mode ? 2 : 1;
  for (int i = 0; i < ncharges; ++i) {
    const double w = s.two_mode ? 0.5 : 1.0;
    add(charges[i], (1.0 - eps) * w);
    add(charges[i] + 1, 0.5 * eps * w);
    add(charges[i] - 1, 0.5 * eps * w);
  }
  return pop;
}

// Mean detection probability for (measurement m, preparation p): coherent
// overlap scaled by the double survival factor, plus incoherent cross terms
// from the leaked populations, plus dark counts.
inline double cell_rate(const Superposition& meas, const Superposition& prep,
                        const NoiseModel& model) {
  const double eps = model.crosstalk;
  if (eps == 0.0)
    return ideal_overlap(prep, meas, model.charge_bound) + model.dark_fraction;

  // Unleaked parts keep their coherence; leaked parts are incoherent.
  const double survive = (1.0 - eps) * (1.0 - eps);
  const double coherent =
      survive * ideal_overlap(prep, meas, model.charge_bound);

  auto pop_of = [&](const Superposition& s) {
    std::map<int, double> pop;
    const int charges[2] = {s.charge1, s.two_mode ? s.charge2 : s.charge1};
    const int n = s.two_mode ? 2 : 1;
    for (int i = 0; i < n; ++i) pop[charges[i]] += s.two_mode ? 0.5 : 1.0;
    return pop;
  };
  auto kernel = [&](const std::map<int, double>& pop) {
    std::map<int, double> out;
    for (const auto& [c, w] : pop) {
      if (std::abs(c + 1) <= model.charge_bound) out[c + 1] += 0.5 * w;
      if (std::abs(c - 1) <= model.charge_bound) out[c - 1] += 0.5 * w;
    }
    return out;
  };
  auto dot = [](const std::map<int, double>& a,
                const std::map<int, double>& b) {
    double acc = 0.0;
    for (const auto& [c, w] : a) {
      auto it = b.find(c);
      if (it != b.end()) acc += w * it->second;
    }
    return acc;
  };

  const auto pp = pop_of(prep), pm = pop_of(meas);
  const auto kp = kernel(pp), km = kernel(pm);
  // prep leaked & meas intact, prep intact & meas leaked, both leaked.
  const double incoherent = eps * (1.0 - eps) * (dot(pm, kp) + dot(km, pp)) +
                            eps * eps * dot(km, kp);
  return coherent + incoherent + model.dark_fraction;
}

}  // namespace detail

/// Synthetic coincidence matrix over the given labels (rows = measurement,
/// columns = preparation). Poisson counts are sampled per run with a
/// deterministic per-(cell, run) stream derived from the master seed, so
/// identical inputs give bit-identical output.
inline CountMatrix simulate_counts(const std::vector<std::string>& labels,
                                   const NoiseModel& model) {
  model.validate();
  const index_t n = labels.size();
  if (n == 0) throw input_error("simulate_counts: no labels");
  std::vector<Superposition> sups;
  sups.reserve(n);
  for (const auto& l : labels) sups.push_back(parse_label(l, model.charge_bound));

  CountMatrix out;
  out.labels = labels;
  out.mean = Matrix(n, n);
  out.std_dev = Matrix(n, n);
  out.runs = model.analytic ? 1 : model.runs;

  for (index_t i = 0; i < n; ++i) {
    for (index_t j = 0; j < n; ++j) {
      const double rate =
          model.counts_per_setting * detail::cell_rate(sups[i], sups[j], model);
      if (model.analytic) {
        out.mean(i, j) = rate;
        out.std_dev(i, j) = 0.0;
        continue;
      }
      double sum = 0.0, sum_sq = 0.0;
      for (index_t run = 0; run < model.runs; ++run) {
        Rng rng(derive_seed(model.seed, i, j, run));
        const double sample = static_cast<double>(rng.poisson(rate));
        sum += sample;
        sum_sq += sample * sample;
      }
      const double m = sum / static_cast<double>(model.runs);
      out.mean(i, j) = m;
      out.std_dev(i, j) =
          model.runs > 1
              ? std::sqrt(std::max(
                    (sum_sq - static_cast<double>(model.runs) * m * m) /
                        static_cast<double>(model.runs - 1),
                    0.0))
              : 0.0;
    }
  }
  return out;
}

/// Alignment diagnostic: mean of the four nearest neighbors of the
/// (l=0, l=0) cell in the single-charge block, normalized by that diagonal
/// cell. Matches the published spiral-bandwidth crosstalk figure.
inline double spiral_bandwidth_metric(const CountMatrix& counts) {
  auto single = [](int charge) {
    Superposition s;
    s.charge1 = charge;
    return s;
  };
  index_t c0, cp, cm;
  try {
    c0 = counts.index_of(single(0));
    cp = counts.index_of(single(+1));
    cm = counts.index_of(single(-1));
  } catch (const input_error&) {
    throw input_error(
        "spiral_bandwidth_metric: needs single-charge labels 0 and +/-1");
  }
  const double diag = counts.mean(c0, c0);
  if (diag <= 0.0)
    throw input_error("spiral_bandwidth_metric: zero diagonal counts");
  const double neighbors = counts.mean(c0, cp) + counts.mean(c0, cm) +
                           counts.mean(cp, c0) + counts.mean(cm, c0);
  return neighbors / (4.0 * diag);
}

}  // namespace dimcert

#endif  // DIMCERT_SIM_HPP
