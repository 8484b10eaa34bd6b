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

#include <functional>

#include "dgp/errors.hpp"

namespace dgp {

struct NelderMeadOptions {
  int max_evaluations = 200;
  // Stop once max f - min f over the simplex falls to this value.
  double f_tolerance = 1e-5;
  // Offset of each initial vertex from the starting point along one axis.
  double initial_step = 0.5;
};

struct NelderMeadResult {
  Vector best_point;
  double best_value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Minimizes `objective` with the Nelder-Mead simplex method.
///
/// Evaluations that throw or return a non-finite value count as +inf. The
/// returned point is the best one ever evaluated, so a budget of one
/// evaluation returns `start`. Deterministic for a deterministic objective.
/// Throws OptimizationError when every evaluation failed.
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& objective,
                             const Vector& start,
                             const NelderMeadOptions& options = {});

}  // namespace dgp
