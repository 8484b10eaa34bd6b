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

#include <optional>

#include "dgp/datasets.hpp"
#include "dgp/embeddings.hpp"
#include "dgp/hyperparams.hpp"
#include "dgp/psd_linalg.hpp"

namespace dgp {

struct IVHyperparams {
  Lengthscales l_x;
  Lengthscales l_z;
  double eta = kDefaultEta;
  double sigma2 = kInitialSigma2;

  void validate() const;
};

/// Isotropic median heuristic for x, one median per column of z (held fixed
/// during the likelihood search), eta = 0.1, sigma2 = 0.25.
IVHyperparams default_iv_hyperparams(const IVDataset& data);

/// GPIV posterior for a fitted dataset.
///
/// With mediation A = (K_zz + eta I)^{-1} K_{z z2} and Q = A^T K_xx A + sigma2 I:
///   mean(x)     = K_{xX} A Q^{-1} y
///   cov(x, x')  = k(x, x') - K_{xX} A Q^{-1} A^T K_{Xx'}
/// where X is the stage-one treatment sample. Without splitting z2 = z.
/// Immutable after construction; queries are thread-safe.
class FittedGPIV {
 public:
  const IVHyperparams& hyperparams() const { return hp_; }
  const Matrix& basis_x() const { return basis_x_; }
  const MediationMatrix& mediation() const { return mediation_; }
  const PsdFactorization& q_tilde_factor() const { return q_factor_; }
  /// Q^{-1} y.
  const Vector& alpha() const { return alpha_; }
  /// A^T K_xx A + sigma2 I before factorization.
  const Matrix& q_tilde() const { return q_tilde_; }

  Vector posterior_mean(const Matrix& x_test) const;
  Matrix posterior_cov(const Matrix& x_test) const;
  /// Diagonal of posterior_cov, computed without the m x m matrix.
  Vector posterior_var(const Matrix& x_test) const;

 private:
  friend FittedGPIV fit_gpiv(const IVDataset&, const IVHyperparams&);
  friend FittedGPIV fit_gpiv_split(const IVDataset&, const IVDataset&,
                                   const IVHyperparams&);
  FittedGPIV(IVHyperparams hp, Matrix basis_x, MediationMatrix mediation,
             Matrix q_tilde, PsdFactorization q_factor, Vector alpha);

  Matrix cross_features(const Matrix& x_test) const;

  IVHyperparams hp_;
  Matrix basis_x_;
  MediationMatrix mediation_;
  Matrix q_tilde_;
  PsdFactorization q_factor_;
  Vector alpha_;
  Vector weights_;  // A alpha
};

/// Throws InputError for invalid data and FitError when Q cannot be factored.
FittedGPIV fit_gpiv(const IVDataset& data, const IVHyperparams& hp);

/// First stage (conditional mean embedding) on `stage_one`, second-stage GP
/// regression on the targets of `stage_two`. Identical splits reproduce
/// fit_gpiv.
FittedGPIV fit_gpiv_split(const IVDataset& stage_one, const IVDataset& stage_two,
                          const IVHyperparams& hp);

/// log N(y; 0, Q) = -1/2 log|Q| - 1/2 y^T Q^{-1} y - n/2 log(2 pi).
double log_marginal_likelihood(const IVDataset& data, const IVHyperparams& hp);

struct IVOptimizationResult {
  IVHyperparams hyperparams;
  double log_marginal_likelihood = 0.0;
  int evaluations = 0;
};

/// Maximizes the log marginal likelihood over the schedule's free parameters
/// (by default the per-dimension l_x and sigma2) starting at `init`.
IVOptimizationResult optimize_iv_hyperparams(const IVDataset& data,
                                             const IVHyperparams& init,
                                             const HyperparamSchedule& schedule = {});

inline IVHyperparams optimize_hyperparams(const IVDataset& data,
                                          const IVHyperparams& init,
                                          const HyperparamSchedule& schedule = {}) {
  return optimize_iv_hyperparams(data, init, schedule).hyperparams;
}

}  // namespace dgp
