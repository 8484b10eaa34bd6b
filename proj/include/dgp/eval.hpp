/*
 * Copyright 2026 The DGP Causal Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dgp/datasets.hpp"
#include "dgp/random.hpp"

namespace dgp {

struct PredictionSet {
  Vector mean;
  Vector variance;
  Vector truth;

  /// Validates lengths and clamps variances in [-1e-8, 0) to zero.
  static PredictionSet make(Vector mean, Vector variance, Vector truth);
  Eigen::Index size() const { return mean.size(); }
  void validate() const;
};

inline constexpr double kVarianceFloor = -1e-8;
inline constexpr double kZ975 = 1.959964;

double mse(const PredictionSet& p);
/// MSE over the population variance of the truth on the grid.
double normalized_mse(const PredictionSet& p);
double coverage95(const PredictionSet& p);

struct ArcCurve {
  std::vector<double> rejection_rates;
  std::vector<double> accuracies;
  double delta = 0.0;
  double quantile_level = 0.0;
};

/// 20 evenly spaced rates on [0, 0.95].
std::vector<double> default_rejection_grid();
/// 0.65, 0.75, 0.85.
std::vector<double> default_quantile_levels();

/// Nearest-rank empirical quantile: the ceil(q m)-th smallest value.
double nearest_rank_quantile(std::vector<double> values, double q);

ArcCurve delta_arc(const PredictionSet& p, double quantile_level,
                   const std::vector<double>& rejection_grid = default_rejection_grid());
double auc_arc(const ArcCurve& curve);

/// Bootstrap row indices for resample b of a dataset with n rows.
using IndexSampler = std::function<std::vector<Eigen::Index>(Eigen::Index n, int b)>;

/// Multinomial resampling with a per-resample stream derived from `seed`.
IndexSampler seeded_index_sampler(std::uint64_t seed);

inline constexpr int kDefaultBootstrapSamples = 25;

/// Per-point sample variance (denominator B - 1) of the predictions of
/// `fit_and_predict` across n_boot row resamples. Resamples whose fit throws
/// a library error are skipped.
template <class Data, class Hyper, class FitPredict>
Vector bootstrap_variance(FitPredict&& fit_and_predict, const Data& data, const Hyper& hp,
                          const Matrix& x_test, int n_boot, const IndexSampler& sampler) {
  if (n_boot < 2) throw BootstrapError("bootstrap: n_boot must be at least 2");
  const Eigen::Index m = x_test.rows();
  Vector sum = Vector::Zero(m);
  Vector sum_sq = Vector::Zero(m);
  std::vector<Vector> draws;
  draws.reserve(static_cast<std::size_t>(n_boot));
  for (int b = 0; b < n_boot; ++b) {
    const std::vector<Eigen::Index> idx = sampler(data.size(), b);
    try {
      Vector pred = fit_and_predict(select_rows(data, idx), hp, x_test);
      if (pred.size() != m || !pred.allFinite()) continue;
      draws.push_back(std::move(pred));
    } catch (const Error&) {
      continue;
    }
  }
  if (draws.size() < 2) {
    throw BootstrapError("bootstrap: fewer than two successful resamples");
  }
  Vector mean = Vector::Zero(m);
  for (const Vector& d : draws) mean += d;
  mean /= static_cast<double>(draws.size());
  Vector var = Vector::Zero(m);
  for (const Vector& d : draws) var += (d - mean).cwiseAbs2();
  return var / static_cast<double>(draws.size() - 1);
}

template <class Data, class Hyper, class FitPredict>
Vector bootstrap_variance(FitPredict&& fit_and_predict, const Data& data, const Hyper& hp,
                          const Matrix& x_test, int n_boot = kDefaultBootstrapSamples,
                          std::uint64_t seed = 0) {
  return bootstrap_variance(std::forward<FitPredict>(fit_and_predict), data, hp, x_test,
                            n_boot, seeded_index_sampler(seed));
}

struct WilcoxonResult {
  double statistic = 0.0;  // W+, sum of ranks of positive differences
  double w_minus = 0.0;
  int n_effective = 0;     // non-zero differences
  double p_value = 1.0;
  bool exact = false;
  bool reject = false;
};

inline constexpr int kWilcoxonExactMax = 20;

/// Two-sided signed-rank test on a - b. Exact null distribution (midranks
/// for ties) up to 20 non-zero differences, normal approximation with
/// continuity and tie corrections above.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                                    double alpha = 0.05);

}  // namespace dgp
