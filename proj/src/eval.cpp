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

#include "dgp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dgp {

namespace {

void require_non_empty(const PredictionSet& p) {
  p.validate();
  if (p.size() == 0) throw InputError("prediction set is empty");
}

}  // namespace

PredictionSet PredictionSet::make(Vector mean, Vector variance, Vector truth) {
  PredictionSet p{std::move(mean), std::move(variance), std::move(truth)};
  if (p.mean.size() != p.variance.size() || p.mean.size() != p.truth.size()) {
    throw InputError("prediction set: lengths differ");
  }
  for (Eigen::Index i = 0; i < p.variance.size(); ++i) {
    double& v = p.variance[i];
    if (v < 0.0 && v >= kVarianceFloor) v = 0.0;
  }
  p.validate();
  return p;
}

void PredictionSet::validate() const {
  if (mean.size() != variance.size() || mean.size() != truth.size()) {
    throw InputError("prediction set: lengths differ");
  }
  if (!mean.allFinite() || !variance.allFinite() || !truth.allFinite()) {
    throw InputError("prediction set: non-finite entries");
  }
  if (variance.size() > 0 && variance.minCoeff() < 0.0) {
    throw InputError("prediction set: negative variance");
  }
}

double mse(const PredictionSet& p) {
  require_non_empty(p);
  return (p.mean - p.truth).squaredNorm() / static_cast<double>(p.size());
}

double normalized_mse(const PredictionSet& p) {
  require_non_empty(p);
  const double mu = p.truth.mean();
  const double var = (p.truth.array() - mu).square().mean();
  if (!(var > 0.0)) throw DegenerateInputError("normalized MSE: truth is constant");
  return mse(p) / var;
}

double coverage95(const PredictionSet& p) {
  require_non_empty(p);
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (std::abs(p.truth[i] - p.mean[i]) <= kZ975 * std::sqrt(p.variance[i])) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(p.size());
}

std::vector<double> default_rejection_grid() {
  std::vector<double> g(20);
  for (int i = 0; i < 20; ++i) g[i] = 0.95 * i / 19.0;
  g.back() = 0.95;
  return g;
}

std::vector<double> default_quantile_levels() { return {0.65, 0.75, 0.85}; }

double nearest_rank_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile of an empty set");
  if (!(q > 0.0 && q < 1.0)) throw InputError("quantile level must lie in (0, 1)");
  const auto m = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * m - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                   values.end());
  return values[rank - 1];
}

ArcCurve delta_arc(const PredictionSet& p, double quantile_level,
                   const std::vector<double>& rejection_grid) {
  require_non_empty(p);
  if (!(quantile_level > 0.0 && quantile_level < 1.0)) {
    throw InputError("ARC: quantile level must lie in (0, 1)");
  }
  if (rejection_grid.empty()) throw InputError("ARC: empty rejection grid");
  for (std::size_t i = 0; i < rejection_grid.size(); ++i) {
    const double r = rejection_grid[i];
    if (!(r >= 0.0 && r <= 0.95)) throw InputError("ARC: rejection rate outside [0, 0.95]");
    if (i > 0 && !(r > rejection_grid[i - 1])) {
      throw InputError("ARC: rejection grid must be increasing");
    }
  }
  const Eigen::Index m = p.size();
  std::vector<double> err(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) err[i] = std::abs(p.truth[i] - p.mean[i]);

  ArcCurve curve;
  curve.quantile_level = quantile_level;
  curve.delta = nearest_rank_quantile(err, quantile_level);
  curve.rejection_rates = rejection_grid;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return p.variance[a] > p.variance[b];
  });
  // hits in the suffix of `order` that survives rejection
  std::vector<Eigen::Index> suffix_hits(static_cast<std::size_t>(m) + 1, 0);
  for (Eigen::Index k = m - 1; k >= 0; --k) {
    suffix_hits[k] = suffix_hits[k + 1] + (err[order[k]] <= curve.delta ? 1 : 0);
  }
  for (double r : rejection_grid) {
    auto rejected = static_cast<Eigen::Index>(std::ceil(r * static_cast<double>(m) - 1e-9));
    rejected = std::clamp<Eigen::Index>(rejected, 0, m - 1);
    const Eigen::Index kept = m - rejected;
    curve.accuracies.push_back(static_cast<double>(suffix_hits[rejected]) /
                               static_cast<double>(kept));
  }
  return curve;
}

double auc_arc(const ArcCurve& curve) {
  const auto& r = curve.rejection_rates;
  const auto& a = curve.accuracies;
  if (r.size() < 2 || r.size() != a.size()) throw InputError("AUC: need at least two points");
  const double span = r.back() - r.front();
  if (!(span > 0.0)) throw InputError("AUC: degenerate rejection grid");
  double area = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) area += 0.5 * (a[i] + a[i - 1]) * (r[i] - r[i - 1]);
  return area / span;
}

IndexSampler seeded_index_sampler(std::uint64_t seed) {
  return [seed](Eigen::Index n, int b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    for (auto& i : idx) i = static_cast<Eigen::Index>(rng.uniform_int(0, n - 1));
    return idx;
  };
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                                    double alpha) {
  if (a.size() != b.size()) throw InputError("Wilcoxon: samples differ in length");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("Wilcoxon: alpha must lie in (0, 1)");
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double v = a[i] - b[i];
    if (!std::isfinite(v)) throw InputError("Wilcoxon: non-finite difference");
    if (v != 0.0) d.push_back(v);
  }
  const int n = static_cast<int>(d.size());
  if (n < 5) throw StatTestError("Wilcoxon: fewer than 5 non-zero differences");

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::abs(d[i]) < std::abs(d[j]); });
  // doubled midranks stay integral
  std::vector<int> rank2(static_cast<std::size_t>(n));
  double tie_term = 0.0;
  for (int s = 0; s < n;) {
    int e = s;
    while (e + 1 < n && std::abs(d[order[e + 1]]) == std::abs(d[order[s]])) ++e;
    const int r2 = (s + 1) + (e + 1);
    for (int k = s; k <= e; ++k) rank2[order[k]] = r2;
    const double t = e - s + 1;
    tie_term += t * t * t - t;
    s = e + 1;
  }
  long plus2 = 0, total2 = 0;
  for (int i = 0; i < n; ++i) {
    total2 += rank2[i];
    if (d[i] > 0.0) plus2 += rank2[i];
  }
  WilcoxonResult res;
  res.n_effective = n;
  res.statistic = plus2 / 2.0;
  res.w_minus = (total2 - plus2) / 2.0;

  if (n <= kWilcoxonExactMax) {
    std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
    count[0] = 1.0;
    long reach = 0;
    for (int i = 0; i < n; ++i) {
      for (long s = reach; s >= 0; --s) {
        if (count[s] != 0.0) count[s + rank2[i]] += count[s];
      }
      reach += rank2[i];
    }
    const double all = std::ldexp(1.0, n);
    double lower = 0.0, upper = 0.0;
    for (long s = 0; s <= total2; ++s) {
      if (s <= plus2) lower += count[s];
      if (s >= plus2) upper += count[s];
    }
    res.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / all);
    res.exact = true;
  } else {
    const double nn = n;
    const double mu = nn * (nn + 1.0) / 4.0;
    const double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;
    if (!(var > 0.0)) throw StatTestError("Wilcoxon: zero null variance");
    const double z = std::max(0.0, std::abs(res.statistic - mu) - 0.5) / std::sqrt(var);
    res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  }
  res.reject = res.p_value < alpha;
  return res;
}

}  // namespace dgp
