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

#include "dgp/embeddings.hpp"

namespace dgp {

/// Controls marginal-likelihood hyperparameter selection.
///
/// Free parameters are searched in log space with Nelder-Mead. By default the
/// instrument lengthscale and eta stay at their initial values.
struct HyperparamSchedule {
  int max_evaluations = 200;
  double f_tolerance = 1e-5;
  double initial_step = 0.5;
  bool optimize_l_x = true;
  bool optimize_l_z = false;
  bool optimize_l_w = true;  // proxy only
  bool optimize_sigma2 = true;
  double sigma2_floor = 1e-6;
  double lengthscale_min = 1e-3;
  double lengthscale_max = 1e3;
};

// Initial noise variance for marginal-likelihood search.
inline constexpr double kInitialSigma2 = 0.25;

}  // namespace dgp
