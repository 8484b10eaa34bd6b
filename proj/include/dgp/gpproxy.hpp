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

#include "dgp/datasets.hpp"
#include "dgp/embeddings.hpp"
#include "dgp/hyperparams.hpp"
#include "dgp/psd_linalg.hpp"

namespace dgp {

struct ProxyHyperparams {
  Lengthscales l_x;
  Lengthscales l_z;
  Lengthscales l_w;
  double eta = kDefaultEta;
  double sigma2 = kInitialSigma2;

  void validate() const;
};

ProxyHyperparams default_proxy_hyperparams(const ProxyDataset& data);

/// GPProxy posterior of the marginalized bridge function f(x) = E_W h(x, W).
///
/// With B the proxy mediation matrix, r = K_{wbar w} B and
/// Q = K_xx (.) (B^T K_ww B) + sigma2 I:
///   mean(x)    = {K_{xX} (.) r} Q^{-1} y
///   cov(x, x') = c_W k(x, x') - {K_{xX} (.) r} Q^{-1} {K_{x'X} (.) r}^T
/// X is the second-stage treatment sample (the full sample without
/// splitting). Immutable after construction.
class FittedGPProxy {
 public:
  const ProxyHyperparams& hyperparams() const { return hp_; }
  const Matrix& basis_x() const { return basis_x_; }
  const MediationMatrix& mediation() const { return mediation_; }
  const KmeSummary& kme() const { return kme_; }
  /// K_{wbar w} B, shared by all test points.
  const Vector& mediated_kme() const { return mediated_kme_; }
  const Matrix& q_tilde() const { return q_tilde_; }
  const PsdFactorization& q_tilde_factor() const { return q_factor_; }
  const Vector& alpha() const { return alpha_; }

  Vector posterior_mean(const Matrix& x_test) const;
  Matrix posterior_cov(const Matrix& x_test) const;
  Vector posterior_var(const Matrix& x_test) const;
  /// c_W k(x, x): the prior variance of f, identical at every x.
  double prior_variance() const { return kme_.c_w_hat; }

 private:
  friend FittedGPProxy fit_gpproxy(const ProxyDataset&, const ProxyHyperparams&);
  friend FittedGPProxy fit_gpproxy_split(const ProxyDataset&, const ProxyDataset&,
                                         const ProxyHyperparams&);
  FittedGPProxy(ProxyHyperparams hp, Matrix basis_x, MediationMatrix mediation,
                KmeSummary kme, Vector mediated_kme, Matrix q_tilde,
                PsdFactorization q_factor, Vector alpha);

  Matrix cross_features(const Matrix& x_test) const;

  ProxyHyperparams hp_;
  Matrix basis_x_;
  MediationMatrix mediation_;
  KmeSummary kme_;
  Vector mediated_kme_;
  Matrix q_tilde_;
  PsdFactorization q_factor_;
  Vector alpha_;
  Vector weights_;  // mediated_kme (.) alpha
};

FittedGPProxy fit_gpproxy(const ProxyDataset& data, const ProxyHyperparams& hp);

/// Conditional mean operator of W and the kernel mean of W from `stage_one`,
/// second-stage regression on `stage_two`.
FittedGPProxy fit_gpproxy_split(const ProxyDataset& stage_one,
                                const ProxyDataset& stage_two,
                                const ProxyHyperparams& hp);

double log_marginal_likelihood(const ProxyDataset& data, const ProxyHyperparams& hp);

struct ProxyOptimizationResult {
  ProxyHyperparams hyperparams;
  double log_marginal_likelihood = 0.0;
  int evaluations = 0;
};

/// Free parameters by default: per-dimension l_x, l_w and sigma2.
ProxyOptimizationResult optimize_proxy_hyperparams(
    const ProxyDataset& data, const ProxyHyperparams& init,
    const HyperparamSchedule& schedule = {});

inline ProxyHyperparams optimize_hyperparams(const ProxyDataset& data,
                                             const ProxyHyperparams& init,
                                             const HyperparamSchedule& schedule = {}) {
  return optimize_proxy_hyperparams(data, init, schedule).hyperparams;
}

}  // namespace dgp
