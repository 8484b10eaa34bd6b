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

#include "dgp/kernels.hpp"

namespace dgp {

// Default first-stage (conditional mean operator) regularizer.
inline constexpr double kDefaultEta = 0.1;

// eta = 0.001 * n, an alternative for standardized data.
inline double standardized_eta(Eigen::Index n) { return 0.001 * static_cast<double>(n); }

/// (G + eta I)^{-1} G_cross for a stage-one Gram matrix G.
///
/// With G_cross = G this is the usual square mediation matrix, whose
/// eigenvalues are lambda / (lambda + eta) for the eigenvalues lambda of G.
struct MediationMatrix {
  Matrix entries;
  double regularizer_eta = 0.0;
};

/// Empirical kernel mean summary of the outcome proxy W.
struct KmeSummary {
  /// n^{-2} sum_ij k(w_i, w_j): squared RKHS norm of the empirical mean.
  double c_w_hat = 0.0;
  /// <mu_hat_W, k(w_j, .)> = n^{-1} sum_i k(w_i, w_j), one entry per sample.
  Vector k_wbar_w;
};

MediationMatrix mediation_iv(const GramMatrix& K_zz, double eta);

/// Mediation for the proxy first stage, with G = K_xx (.) K_zz.
MediationMatrix mediation_proxy(const GramMatrix& K_xx, const GramMatrix& K_zz,
                                double eta);

KmeSummary kme_summary(const GramMatrix& K_ww);

/// (K_zz + eta I)^{-1} K_{z ztilde}: first stage on one split, columns indexed
/// by the second split.
MediationMatrix split_mediation_iv(const GramMatrix& K_zz,
                                   const GramMatrix& K_z_ztilde, double eta);

/// (K_xx (.) K_zz + eta I)^{-1} (K_{x xtilde} (.) K_{z ztilde}).
MediationMatrix split_mediation_proxy(const GramMatrix& K_xx,
                                      const GramMatrix& K_zz,
                                      const GramMatrix& K_x_xtilde,
                                      const GramMatrix& K_z_ztilde, double eta);

}  // namespace dgp
