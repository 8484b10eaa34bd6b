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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgp/datagen.hpp"
#include "dgp/eval.hpp"
#include "dgp/gpiv.hpp"
#include "dgp/gpproxy.hpp"

namespace dgp {

enum class Method { gpiv, gpproxy, div, dproxy, gpiv_bootstrap, gpproxy_bootstrap };

std::string to_string(Method method);
Method parse_method(std::string_view name);
bool is_iv(Method method);
/// IV methods pair with IV designs, proxy methods with proxy designs.
bool compatible(Method method, DesignFamily family);

/// Per-column centering and scaling fitted on training data. Columns with
/// zero spread keep unit scale.
struct ColumnScaler {
  Vector mean;
  Vector scale;

  static ColumnScaler fit(const Matrix& m);
  Matrix apply(const Matrix& m) const;
};

struct Standardizer {
  ColumnScaler x, z, w;
  double y_mean = 0.0;
  double y_scale = 1.0;

  /// Identity transform for the given column counts.
  static Standardizer identity(Eigen::Index dx, Eigen::Index dz, Eigen::Index dw = 0);
  static Standardizer fit(const IVDataset& data);
  static Standardizer fit(const ProxyDataset& data);
  IVDataset apply(const IVDataset& data) const;
  ProxyDataset apply(const ProxyDataset& data) const;
  Matrix apply_x(const Matrix& x_test) const { return x.apply(x_test); }
  Vector unscale_mean(const Vector& m) const;
  Vector unscale_variance(const Vector& v) const;
};

struct FitOptions {
  HyperparamSchedule schedule;
  double eta = kDefaultEta;
  // Inputs (x, z, w) are centred and scaled per column; the outcome only when
  // standardize_y is set.
  bool standardize = true;
  bool standardize_y = false;
  int n_boot = kDefaultBootstrapSamples;
};

/// Posterior summary on original scale. Point-estimate baselines carry zero
/// variance.
struct MethodPrediction {
  Vector mean;
  Vector variance;
  double sigma2 = 0.0;
  Vector l_x;
  int evaluations = 0;
};

MethodPrediction fit_predict(Method method, const IVDataset& data, const Matrix& x_test,
                             const FitOptions& options, std::uint64_t seed);
MethodPrediction fit_predict(Method method, const ProxyDataset& data, const Matrix& x_test,
                             const FitOptions& options, std::uint64_t seed);

struct ArcPoint {
  double quantile = 0.0;
  double rejection_rate = 0.0;
  double accuracy = 0.0;
};

struct ReplicationRecord {
  std::string design;
  Eigen::Index n = 0;
  std::string method;
  std::uint64_t seed = 0;
  bool ok = false;
  double mse = 0.0;
  double nmse = 0.0;
  double coverage = 0.0;
  std::vector<double> auc;  // one per quantile level
  double sigma2 = 0.0;
  std::string error;
  std::vector<ArcPoint> arc;
};

struct ReplicationOptions {
  FitOptions fit;
  // Unset: outcome scaling only for the demand designs.
  std::optional<bool> standardize_y;
  double rho = 0.5;
  std::vector<double> quantiles = default_quantile_levels();
  std::vector<double> rejection_grid = default_rejection_grid();
};

bool default_standardize_y(DesignFamily family);

/// Generates the design at `seed`, fits `method` and scores it on the grid.
/// Library errors are caught and reported in the record.
ReplicationRecord run_replication(DesignFamily family, Eigen::Index n, Method method,
                                  std::uint64_t seed, const ReplicationOptions& options);

}  // namespace dgp
