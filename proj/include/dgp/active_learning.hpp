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
#include <string>
#include <string_view>
#include <vector>

#include "dgp/pipeline.hpp"

namespace dgp {

enum class AcquisitionStrategy { max_variance, random };

std::string to_string(AcquisitionStrategy s);
AcquisitionStrategy parse_strategy(std::string_view name);

struct CurvePoint {
  int acquired = 0;
  double mse = 0.0;
};

struct AcquisitionRun {
  std::vector<CurvePoint> curve;  // budget + 1 entries
  std::vector<Eigen::Index> acquired_pool_indices;
  AcquisitionStrategy strategy = AcquisitionStrategy::max_variance;
  int budget = 0;
  std::uint64_t seed = 0;
};

struct AcquisitionOptions {
  int budget = 100;
  AcquisitionStrategy strategy = AcquisitionStrategy::max_variance;
  std::uint64_t seed = 0;
  FitOptions fit;
  /// Re-run the marginal-likelihood search after every acquisition instead of
  /// keeping the initial hyperparameters.
  bool reoptimize_each_step = false;
};

/// Greedy pool acquisition. Each step fits on the current training set, scores
/// the remaining pool points by posterior variance at their x (or draws one
/// uniformly) and moves the chosen point into training. The curve records the
/// test MSE after 0, 1, ..., budget acquisitions.
AcquisitionRun run_acquisition(const IVDataset& train, const IVDataset& pool,
                               const Matrix& test_grid, const Vector& truth,
                               const AcquisitionOptions& options);
AcquisitionRun run_acquisition(const ProxyDataset& train, const ProxyDataset& pool,
                               const Matrix& test_grid, const Vector& truth,
                               const AcquisitionOptions& options);

struct ActiveExperiment {
  DesignFamily family = DesignFamily::iv_log;
  Eigen::Index n_train = 30;
  Eigen::Index n_pool = 300;
  double rho = 0.5;
};

/// Draws train and pool from one design sample at `options.seed` and runs the
/// loop.
AcquisitionRun run_active_experiment(const ActiveExperiment& exp,
                                     const AcquisitionOptions& options);

}  // namespace dgp
