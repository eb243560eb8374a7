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

#ifndef DIMCERT_CERTIFY_HPP
#define DIMCERT_CERTIFY_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dimcert/common.hpp"
#include "dimcert/matrix.hpp"
#include "dimcert/pmatrix.hpp"
#include "dimcert/prep.hpp"
#include "dimcert/protocol.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/svd.hpp"

namespace dimcert {

/// Per-cell standard uncertainties of an error matrix.
struct UncertaintyMatrix {
  Matrix values;

  void validate() const {
    if (!values.all_finite())
      throw input_error("uncertainty matrix: non-finite entry");
    for (double v : values.data())
      if (v < 0.0) throw input_error("uncertainty matrix: negative entry");
  }
};

/// E = P' - P. Labels must agree cell for cell.
inline Matrix error_matrix(const ProbMatrix& observed,
                           const ProbMatrix& target) {
  if (observed.size() != target.size())
    throw input_error("error_matrix: size mismatch");
  if (observed.labels != target.labels)
    throw input_error("error_matrix: outcome labels differ");
  return observed.values - target.values;
}

/// d^exp_C = max{ r : ||E||_2 < sigma_r(P) }, with singular values below
/// rank_tol treated as exactly zero (so e_norm = 0 recovers the numerical
/// rank rather than counting machine noise).
inline index_t dimension_certification(const ProbMatrix& target, double e_norm,
                                       double rank_tol = kDefaultRankTol) {
  if (e_norm < 0.0) throw input_error("dimension_certification: e_norm < 0");
  index_t r = 0;
  for (double s : singular_spectrum(target)) {
    if (s < rank_tol) s = 0.0;
    if (e_norm < s)
      ++r;
    else
      break;
  }
  return r;
}

/// True iff ||P' - P||_2 < sigma_r(P). When true, Weyl's inequality forces
/// sigma_r(P') >= sigma_r(P) - ||E||_2 > 0 and hence rank(P') >= r; that
/// bound is re-checked numerically as an internal consistency assertion.
inline bool rank_stability_check(const ProbMatrix& target,
                                 const ProbMatrix& observed, index_t r) {
  if (r < 1 || r > target.size())
    throw input_error("rank_stability_check: bad rank index");
  const Matrix e = error_matrix(observed, target);
  const double e_norm = spectral_norm(e);
  const double sigma_r = singular_spectrum(target)[r - 1];
  if (!(e_norm < sigma_r)) return false;
  const double sigma_r_observed = singular_spectrum(observed)[r - 1];
  if (sigma_r_observed < sigma_r - e_norm - 1e-12)
    throw numeric_error("rank_stability_check: Weyl bound violated");
  return true;
}

struct PropagatedStd {
  double value = 0.0;
  bool monte_carlo_fallback = false;  // leading singular value was degenerate
};

namespace detail {

inline double monte_carlo_std(const Matrix& e, const UncertaintyMatrix& s,
                              index_t samples, std::uint64_t seed) {
  double sum = 0.0, sum_sq = 0.0;
  Matrix perturbed = e;
  for (index_t k = 0; k < samples; ++k) {
    Rng rng(derive_seed(seed, k));
    for (index_t i = 0; i < e.data().size(); ++i)
      perturbed.data()[i] = e.data()[i] + s.values.data()[i] * rng.normal();
    const double norm = spectral_norm(perturbed);
    sum += norm;
    sum_sq += norm * norm;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      (sum_sq - static_cast<double>(samples) * mean * mean) /
      static_cast<double>(samples - 1);
  return std::sqrt(std::max(var, 0.0));
}

}  // namespace detail

/// First-order propagated standard deviation of ||E||_2 from independent
/// per-cell uncertainties: Var = sum_ij ((u1)_i (v1)_j s_ij)^2 with u1, v1
/// the leading singular vectors. Falls back to seeded Monte Carlo when the
/// leading singular value is degenerate (gap below 1e-12), where the
/// gradient formula does not apply.
inline PropagatedStd propagate_std(const Matrix& e, const UncertaintyMatrix& s,
                                   std::uint64_t mc_seed = 20260809,
                                   index_t mc_samples = 10000) {
  if (e.rows() != s.values.rows() || e.cols() != s.values.cols())
    throw input_error("propagate_std: shape mismatch");
  s.validate();
  const SvdResult dec = svd(e);
  const double gap = dec.singular_values.size() > 1
                         ? dec.singular_values[0] - dec.singular_values[1]
                         : std::numeric_limits<double>::infinity();
  PropagatedStd out;
  if (gap < 1e-12) {
    out.monte_carlo_fallback = true;
    out.value = detail::monte_carlo_std(e, s, mc_samples, mc_seed);
    return out;
  }
  double var = 0.0;
  for (index_t i = 0; i < e.rows(); ++i)
    for (index_t j = 0; j < e.cols(); ++j) {
      const double g = dec.u(i, 0) * dec.v(j, 0) * s.values(i, j);
      var += g * g;
    }
  out.value = std::sqrt(var);
  return out;
}

/// Gradient of ||E||_2 with respect to the entries: u1 v1^T.
inline Matrix spectral_norm_gradient(const Matrix& e) {
  const SvdResult dec = svd(e);
  Matrix g(e.rows(), e.cols());
  for (index_t i = 0; i < e.rows(); ++i)
    for (index_t j = 0; j < e.cols(); ++j) g(i, j) = dec.u(i, 0) * dec.v(j, 0);
  return g;
}

/// z = (sigma_r(P) - e_norm) / std. std = 0 degenerates to +/- infinity
/// with the sign of the margin.
inline double significance(const ProbMatrix& target, index_t r, double e_norm,
                           double std_dev) {
  if (r < 1 || r > target.size())
    throw input_error("significance: bad rank index");
  const double margin = singular_spectrum(target)[r - 1] - e_norm;
  if (std_dev <= 0.0)
    return margin >= 0.0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  return margin / std_dev;
}

/// Full certification report mirroring the published table columns.
struct CertReport {
  index_t n = 0;
  index_t d_q = 0;
  std::string variant;
  std::vector<double> spectrum;    // singular values of the target P
  double e_norm = 0.0;             // ||P' - P||_2
  double e_norm_std = 0.0;         // propagated std of the above
  bool std_from_monte_carlo = false;
  index_t d_exp = 0;               // certified classical dimension bound
  std::vector<double> margins;     // sigma_r(P) - ||E||_2 per rank
  std::vector<double> z_scores;    // margin / std per rank
};

inline CertReport certification_report(const ProbMatrix& target,
                                       const ProbMatrix& observed,
                                       const UncertaintyMatrix* uncertainty,
                                       double rank_tol = kDefaultRankTol) {
  CertReport rep;
  rep.n = target.size();
  rep.d_q = target.dimension;
  rep.variant = variant_name(target.variant);
  rep.spectrum = singular_spectrum(target);
  const Matrix e = error_matrix(observed, target);
  rep.e_norm = spectral_norm(e);
  if (uncertainty != nullptr) {
    const PropagatedStd ps = propagate_std(e, *uncertainty);
    rep.e_norm_std = ps.value;
    rep.std_from_monte_carlo = ps.monte_carlo_fallback;
  }
  rep.d_exp = dimension_certification(target, rep.e_norm, rank_tol);
  rep.margins.reserve(rep.spectrum.size());
  rep.z_scores.reserve(rep.spectrum.size());
  for (double s : rep.spectrum) {
    const double margin = s - rep.e_norm;
    rep.margins.push_back(margin);
    rep.z_scores.push_back(rep.e_norm_std > 0.0
                               ? margin / rep.e_norm_std
                               : (margin >= 0.0
                                      ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity()));
  }
  return rep;
}

/// Report injecting an externally known error norm (and optionally its std)
/// instead of an observed matrix.
inline CertReport certification_report_from_enorm(const ProbMatrix& target,
                                                  double e_norm,
                                                  double e_norm_std = 0.0,
                                                  double rank_tol =
                                                      kDefaultRankTol) {
  CertReport rep;
  rep.n = target.size();
  rep.d_q = target.dimension;
  rep.variant = variant_name(target.variant);
  rep.spectrum = singular_spectrum(target);
  rep.e_norm = e_norm;
  rep.e_norm_std = e_norm_std;
  rep.d_exp = dimension_certification(target, e_norm, rank_tol);
  for (double s : rep.spectrum) {
    const double margin = s - e_norm;
    rep.margins.push_back(margin);
    rep.z_scores.push_back(e_norm_std > 0.0
                               ? margin / e_norm_std
                               : (margin >= 0.0
                                      ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity()));
  }
  return rep;
}

struct WeightCalibration {
  double weight = 0.0;
  double achieved_sigma = 0.0;
  double residual = 0.0;  // |achieved - target| / target
  bool resolved = false;  // residual < 1%
};

namespace detail {

inline double maximal_sigma_at(index_t d, double weight, index_t rank) {
  const Povm povm = build_maximal_povm(d, weight);
  const PreparationResult prep = optimize_preparations(povm);
  const ProbMatrix p = assemble(prep.states, povm);
  return singular_spectrum(p)[rank - 1];
}

}  // namespace detail

/// Fit the maximal protocol's incoherent weight so that
/// sigma_{d(d+1)/2}(P) matches a published target: coarse scan over [0, 1]
/// followed by golden-section refinement of |sigma - target| in the best
/// bracket. The published construction never states its weights; this
/// recovers them empirically.
inline WeightCalibration calibrate_maximal_weight(index_t d,
                                                  double target_sigma) {
  if (!(d == 3 || d == 5 || d == 7))
    throw protocol_error("calibrate_maximal_weight: d must be 3, 5 or 7");
  if (!(target_sigma > 0.0))
    throw input_error("calibrate_maximal_weight: target must be positive");
  const index_t rank = d * (d + 1) / 2;

  auto objective = [&](double a) {
    return std::fabs(detail::maximal_sigma_at(d, a, rank) - target_sigma);
  };

  constexpr index_t kGrid = 49;
  double best_a = 0.0, best_obj = std::numeric_limits<double>::infinity();
  for (index_t i = 1; i < kGrid; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(kGrid);
    const double obj = objective(a);
    if (obj < best_obj) {
      best_obj = obj;
      best_a = a;
    }
  }

  double lo = std::max(0.001, best_a - 1.0 / kGrid);
  double hi = std::min(0.999, best_a + 1.0 / kGrid);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  for (index_t it = 0; it < 60 && hi - lo > 1e-10; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = objective(x2);
    }
  }

  WeightCalibration cal;
  cal.weight = 0.5 * (lo + hi);
  cal.achieved_sigma = detail::maximal_sigma_at(d, cal.weight, rank);
  cal.residual = std::fabs(cal.achieved_sigma - target_sigma) / target_sigma;
  cal.resolved = cal.residual < 0.01;
  return cal;
}

}  // namespace dimcert

#endif  // DIMCERT_CERTIFY_HPP
