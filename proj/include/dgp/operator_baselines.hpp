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

#include "dgp/gpiv.hpp"
#include "dgp/gpproxy.hpp"

namespace dgp {

/// Point estimate of a deconditional-operator estimator. Predictions are
/// K_{xX} coefficients, a finite combination of kernels against basis_x.
struct OperatorEstimate {
  Vector coefficients;
  Matrix stage_one_gram;
  Matrix mediation;
  double lambda = 0.0;
  Matrix basis_x;
  Lengthscales l_x;

  Vector predict(const Matrix& x_test) const;
};

/// f(x) = K_{xX} A (A^T K_xx A + n lambda I)^{-1} y with lambda = sigma2 / n.
OperatorEstimate fit_div(const IVDataset& data, const IVHyperparams& hp);
Vector div_mean(const IVDataset& data, const IVHyperparams& hp, const Matrix& x_test);

/// f(x) = (K_{xX} (.) K_{wbar w}) B [B^T (K_xx (.) K_ww) B + n lambda I]^{-1} y.
OperatorEstimate fit_dproxy(const ProxyDataset& data, const ProxyHyperparams& hp);
Vector dproxy_mean(const ProxyDataset& data, const ProxyHyperparams& hp,
                   const Matrix& x_test);

}  // namespace dgp
