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

#include "dgp/gpproxy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "dgp/optim.hpp"

namespace dgp {

namespace {

struct ProxyStages {
  MediationMatrix mediation;
  KmeSummary kme;
  Vector mediated_kme;
  Matrix q_tilde;
  PsdFactorization factor;
  Vector alpha;
};

// K_x2x2 (.) (B^T K_ww B) + sigma2 I and its factorization.
ProxyStages second_stage(MediationMatrix B, const Matrix& K_ww,
                         const Matrix& K_x2x2, const Vector& y, double sigma2) {
  const Matrix& Bm = B.entries;
  const Matrix KB = K_ww * Bm;
  Matrix inner = Bm.transpose() * KB;
  inner = 0.5 * (inner + inner.transpose()).eval();
  Matrix q = hadamard(K_x2x2, inner);
  q.diagonal().array() += sigma2;
  KmeSummary kme = kme_summary(K_ww);
  Vector r = Bm.transpose() * kme.k_wbar_w;
  try {
    PsdFactorization F = factor_psd(q);
    Vector alpha = F.solve(y);
    return ProxyStages{std::move(B),        std::move(kme),   std::move(r),
                       std::move(q),        std::move(F),     std::move(alpha)};
  } catch (const SingularMatrixError& e) {
    throw FitError(std::string("GPProxy: ") + e.what());
  }
}

double gaussian_log_density(const PsdFactorization& F, const Vector& y,
                            const Vector& alpha) {
  const double n = static_cast<double>(y.size());
  return -0.5 * F.logdet() - 0.5 * y.dot(alpha) -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

void check_dims(const ProxyDataset& data, const ProxyHyperparams& hp) {
  if (hp.l_x.dim() != data.x.cols()) throw InputError("GPProxy: l_x dimension does not match x");
  if (hp.l_z.dim() != data.z.cols()) throw InputError("GPProxy: l_z dimension does not match z");
  if (hp.l_w.dim() != data.w.cols()) throw InputError("GPProxy: l_w dimension does not match w");
}

ProxyStages full_fit(const ProxyDataset& data, const ProxyHyperparams& hp,
                     const Matrix& K_zz) {
  const Matrix K_xx = gram(data.x, hp.l_x);
  MediationMatrix B = mediation_proxy(K_xx, K_zz, hp.eta);
  return second_stage(std::move(B), gram(data.w, hp.l_w), K_xx, data.y, hp.sigma2);
}

}  // namespace

void ProxyHyperparams::validate() const {
  if (l_x.dim() == 0 || l_z.dim() == 0 || l_w.dim() == 0) {
    throw ParameterError("proxy hyperparameters: lengthscales not set");
  }
  if (!std::isfinite(eta) || eta <= 0.0) {
    throw ParameterError("proxy hyperparameters: eta must be positive");
  }
  if (!std::isfinite(sigma2) || sigma2 <= 0.0) {
    throw ParameterError("proxy hyperparameters: sigma2 must be positive");
  }
}

ProxyHyperparams default_proxy_hyperparams(const ProxyDataset& data) {
  data.validate();
  return ProxyHyperparams{
      Lengthscales::isotropic(median_heuristic(data.x), static_cast<int>(data.x.cols())),
      median_heuristic_per_column(data.z),
      Lengthscales::isotropic(median_heuristic(data.w), static_cast<int>(data.w.cols())),
      kDefaultEta, kInitialSigma2};
}

FittedGPProxy::FittedGPProxy(ProxyHyperparams hp, Matrix basis_x,
                             MediationMatrix mediation, KmeSummary kme,
                             Vector mediated_kme, Matrix q_tilde,
                             PsdFactorization q_factor, Vector alpha)
    : hp_(std::move(hp)),
      basis_x_(std::move(basis_x)),
      mediation_(std::move(mediation)),
      kme_(std::move(kme)),
      mediated_kme_(std::move(mediated_kme)),
      q_tilde_(std::move(q_tilde)),
      q_factor_(std::move(q_factor)),
      alpha_(std::move(alpha)) {
  weights_ = mediated_kme_.cwiseProduct(alpha_);
}

Matrix FittedGPProxy::cross_features(const Matrix& x_test) const {
  if (x_test.cols() != basis_x_.cols()) {
    throw InputError("GPProxy: test points have " + std::to_string(x_test.cols()) +
                     " columns, model expects " + std::to_string(basis_x_.cols()));
  }
  return gram(x_test, basis_x_, hp_.l_x) * mediated_kme_.asDiagonal();
}

Vector FittedGPProxy::posterior_mean(const Matrix& x_test) const {
  if (x_test.cols() != basis_x_.cols()) throw InputError("GPProxy: test dimension mismatch");
  return gram(x_test, basis_x_, hp_.l_x) * weights_;
}

Matrix FittedGPProxy::posterior_cov(const Matrix& x_test) const {
  const Matrix V = cross_features(x_test);
  const Matrix W = q_factor_.half_solve(V.transpose());
  Matrix cov = kme_.c_w_hat * gram(x_test, hp_.l_x);
  cov.noalias() -= W.transpose() * W;
  return 0.5 * (cov + cov.transpose());
}

Vector FittedGPProxy::posterior_var(const Matrix& x_test) const {
  const Matrix V = cross_features(x_test);
  const Matrix W = q_factor_.half_solve(V.transpose());
  return (kme_.c_w_hat - W.colwise().squaredNorm().array()).matrix().transpose();
}

FittedGPProxy fit_gpproxy(const ProxyDataset& data, const ProxyHyperparams& hp) {
  data.validate();
  hp.validate();
  check_dims(data, hp);
  ProxyStages s = full_fit(data, hp, gram(data.z, hp.l_z));
  return FittedGPProxy(hp, data.x, std::move(s.mediation), std::move(s.kme),
                       std::move(s.mediated_kme), std::move(s.q_tilde),
                       std::move(s.factor), std::move(s.alpha));
}

FittedGPProxy fit_gpproxy_split(const ProxyDataset& stage_one,
                                const ProxyDataset& stage_two,
                                const ProxyHyperparams& hp) {
  stage_one.validate();
  stage_two.validate();
  hp.validate();
  check_dims(stage_one, hp);
  check_dims(stage_two, hp);
  MediationMatrix B = split_mediation_proxy(
      gram(stage_one.x, hp.l_x), gram(stage_one.z, hp.l_z),
      gram(stage_one.x, stage_two.x, hp.l_x), gram(stage_one.z, stage_two.z, hp.l_z),
      hp.eta);
  ProxyStages s = second_stage(std::move(B), gram(stage_one.w, hp.l_w),
                               gram(stage_two.x, hp.l_x), stage_two.y, hp.sigma2);
  return FittedGPProxy(hp, stage_two.x, std::move(s.mediation), std::move(s.kme),
                       std::move(s.mediated_kme), std::move(s.q_tilde),
                       std::move(s.factor), std::move(s.alpha));
}

double log_marginal_likelihood(const ProxyDataset& data, const ProxyHyperparams& hp) {
  data.validate();
  hp.validate();
  check_dims(data, hp);
  const ProxyStages s = full_fit(data, hp, gram(data.z, hp.l_z));
  return gaussian_log_density(s.factor, data.y, s.alpha);
}

ProxyOptimizationResult optimize_proxy_hyperparams(const ProxyDataset& data,
                                                   const ProxyHyperparams& init,
                                                   const HyperparamSchedule& schedule) {
  data.validate();
  init.validate();
  check_dims(data, init);
  const int dx = init.l_x.dim();
  const int dz = init.l_z.dim();
  const int dw = init.l_w.dim();

  // Search vector: [log l_x..., log l_z..., log l_w..., log sigma2].
  std::vector<double> start;
  auto push = [&](bool on, const Lengthscales& l) {
    if (!on) return;
    for (int d = 0; d < l.dim(); ++d) start.push_back(std::log(l[d]));
  };
  push(schedule.optimize_l_x, init.l_x);
  push(schedule.optimize_l_z, init.l_z);
  push(schedule.optimize_l_w, init.l_w);
  if (schedule.optimize_sigma2) start.push_back(std::log(init.sigma2));

  auto decode = [&](const Vector& theta) {
    ProxyHyperparams hp = init;
    Eigen::Index k = 0;
    auto take = [&](bool on, int dim, Lengthscales& target) {
      if (!on) return;
      Vector l(dim);
      for (int d = 0; d < dim; ++d) {
        l[d] = std::clamp(std::exp(theta[k++]), schedule.lengthscale_min,
                          schedule.lengthscale_max);
      }
      target = Lengthscales(l);
    };
    take(schedule.optimize_l_x, dx, hp.l_x);
    take(schedule.optimize_l_z, dz, hp.l_z);
    take(schedule.optimize_l_w, dw, hp.l_w);
    if (schedule.optimize_sigma2) {
      hp.sigma2 = std::max(std::exp(theta[k++]), schedule.sigma2_floor);
    }
    return hp;
  };

  ProxyHyperparams start_hp = init;
  start_hp.sigma2 = std::max(init.sigma2, schedule.sigma2_floor);
  if (start.empty()) {
    return ProxyOptimizationResult{start_hp, log_marginal_likelihood(data, start_hp), 1};
  }

  std::optional<Matrix> fixed_K_zz;
  if (!schedule.optimize_l_z) fixed_K_zz = gram(data.z, init.l_z);
  auto objective = [&](const Vector& theta) {
    const ProxyHyperparams hp = decode(theta);
    const ProxyStages s =
        full_fit(data, hp, fixed_K_zz ? *fixed_K_zz : gram(data.z, hp.l_z));
    return -gaussian_log_density(s.factor, data.y, s.alpha);
  };

  Vector theta0 = Eigen::Map<const Vector>(start.data(),
                                           static_cast<Eigen::Index>(start.size()));
  NelderMeadOptions options;
  options.max_evaluations = schedule.max_evaluations;
  options.f_tolerance = schedule.f_tolerance;
  options.initial_step = schedule.initial_step;
  const NelderMeadResult r = nelder_mead(objective, theta0, options);
  return ProxyOptimizationResult{decode(r.best_point), -r.best_value, r.evaluations};
}

}  // namespace dgp
