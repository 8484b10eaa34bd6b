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

#include "dgp/gpiv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "dgp/optim.hpp"

namespace dgp {

namespace {

struct SecondStage {
  Matrix q_tilde;
  PsdFactorization factor;
  Vector alpha;
};

void check_sigma2(double sigma2) {
  if (!std::isfinite(sigma2) || sigma2 <= 0.0) {
    throw ParameterError("sigma2 must be positive and finite");
  }
}

// Q = A^T K_xx A + sigma2 I, symmetrized against product round-off.
SecondStage second_stage(const Matrix& K_xx, const Matrix& A, const Vector& y,
                         double sigma2) {
  const Matrix KA = K_xx * A;
  Matrix q = A.transpose() * KA;
  q = 0.5 * (q + q.transpose()).eval();
  q.diagonal().array() += sigma2;
  try {
    PsdFactorization F = factor_psd(q);
    Vector alpha = F.solve(y);
    return SecondStage{std::move(q), std::move(F), std::move(alpha)};
  } catch (const SingularMatrixError& e) {
    throw FitError(std::string("GPIV: ") + e.what());
  }
}

double gaussian_log_density(const PsdFactorization& F, const Vector& y,
                            const Vector& alpha) {
  const double n = static_cast<double>(y.size());
  return -0.5 * F.logdet() - 0.5 * y.dot(alpha) -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

void check_dims(const IVDataset& data, const IVHyperparams& hp) {
  if (hp.l_x.dim() != data.x.cols()) {
    throw InputError("GPIV: l_x dimension does not match x");
  }
  if (hp.l_z.dim() != data.z.cols()) {
    throw InputError("GPIV: l_z dimension does not match z");
  }
}

}  // namespace

void IVHyperparams::validate() const {
  if (l_x.dim() == 0 || l_z.dim() == 0) {
    throw ParameterError("IV hyperparameters: lengthscales not set");
  }
  if (!std::isfinite(eta) || eta <= 0.0) {
    throw ParameterError("IV hyperparameters: eta must be positive");
  }
  check_sigma2(sigma2);
}

IVHyperparams default_iv_hyperparams(const IVDataset& data) {
  data.validate();
  return IVHyperparams{
      Lengthscales::isotropic(median_heuristic(data.x), static_cast<int>(data.x.cols())),
      median_heuristic_per_column(data.z), kDefaultEta, kInitialSigma2};
}

FittedGPIV::FittedGPIV(IVHyperparams hp, Matrix basis_x,
                       MediationMatrix mediation, Matrix q_tilde,
                       PsdFactorization q_factor, Vector alpha)
    : hp_(std::move(hp)),
      basis_x_(std::move(basis_x)),
      mediation_(std::move(mediation)),
      q_tilde_(std::move(q_tilde)),
      q_factor_(std::move(q_factor)),
      alpha_(std::move(alpha)) {
  weights_ = mediation_.entries * alpha_;
}

Matrix FittedGPIV::cross_features(const Matrix& x_test) const {
  if (x_test.cols() != basis_x_.cols()) {
    throw InputError("GPIV: test points have " + std::to_string(x_test.cols()) +
                     " columns, model expects " +
                     std::to_string(basis_x_.cols()));
  }
  return gram(x_test, basis_x_, hp_.l_x) * mediation_.entries;
}

Vector FittedGPIV::posterior_mean(const Matrix& x_test) const {
  if (x_test.cols() != basis_x_.cols()) {
    throw InputError("GPIV: test dimension mismatch");
  }
  return gram(x_test, basis_x_, hp_.l_x) * weights_;
}

Matrix FittedGPIV::posterior_cov(const Matrix& x_test) const {
  const Matrix V = cross_features(x_test);
  const Matrix W = q_factor_.half_solve(V.transpose());
  Matrix cov = gram(x_test, hp_.l_x);
  cov.noalias() -= W.transpose() * W;
  return 0.5 * (cov + cov.transpose());
}

Vector FittedGPIV::posterior_var(const Matrix& x_test) const {
  const Matrix V = cross_features(x_test);
  const Matrix W = q_factor_.half_solve(V.transpose());
  // Prior variance of the unit-amplitude RBF kernel is 1.
  return (1.0 - W.colwise().squaredNorm().array()).matrix().transpose();
}

FittedGPIV fit_gpiv(const IVDataset& data, const IVHyperparams& hp) {
  data.validate();
  hp.validate();
  check_dims(data, hp);
  const Matrix K_xx = gram(data.x, hp.l_x);
  MediationMatrix A = mediation_iv(gram(data.z, hp.l_z), hp.eta);
  SecondStage s = second_stage(K_xx, A.entries, data.y, hp.sigma2);
  return FittedGPIV(hp, data.x, std::move(A), std::move(s.q_tilde),
                    std::move(s.factor), std::move(s.alpha));
}

FittedGPIV fit_gpiv_split(const IVDataset& stage_one, const IVDataset& stage_two,
                          const IVHyperparams& hp) {
  stage_one.validate();
  stage_two.validate();
  hp.validate();
  check_dims(stage_one, hp);
  check_dims(stage_two, hp);
  const Matrix K_xx = gram(stage_one.x, hp.l_x);
  MediationMatrix A = split_mediation_iv(
      gram(stage_one.z, hp.l_z), gram(stage_one.z, stage_two.z, hp.l_z), hp.eta);
  SecondStage s = second_stage(K_xx, A.entries, stage_two.y, hp.sigma2);
  return FittedGPIV(hp, stage_one.x, std::move(A), std::move(s.q_tilde),
                    std::move(s.factor), std::move(s.alpha));
}

double log_marginal_likelihood(const IVDataset& data, const IVHyperparams& hp) {
  data.validate();
  hp.validate();
  check_dims(data, hp);
  const Matrix K_xx = gram(data.x, hp.l_x);
  const MediationMatrix A = mediation_iv(gram(data.z, hp.l_z), hp.eta);
  const SecondStage s = second_stage(K_xx, A.entries, data.y, hp.sigma2);
  return gaussian_log_density(s.factor, data.y, s.alpha);
}

IVOptimizationResult optimize_iv_hyperparams(const IVDataset& data,
                                             const IVHyperparams& init,
                                             const HyperparamSchedule& schedule) {
  data.validate();
  init.validate();
  check_dims(data, init);
  const int dx = init.l_x.dim();
  const int dz = init.l_z.dim();

  // Layout of the search vector: [log l_x..., log l_z..., log sigma2].
  std::vector<double> start;
  if (schedule.optimize_l_x) {
    for (int d = 0; d < dx; ++d) start.push_back(std::log(init.l_x[d]));
  }
  if (schedule.optimize_l_z) {
    for (int d = 0; d < dz; ++d) start.push_back(std::log(init.l_z[d]));
  }
  if (schedule.optimize_sigma2) start.push_back(std::log(init.sigma2));

  auto clamp_l = [&](double t) {
    return std::clamp(std::exp(t), schedule.lengthscale_min,
                      schedule.lengthscale_max);
  };
  auto decode = [&](const Vector& theta) {
    IVHyperparams hp = init;
    Eigen::Index k = 0;
    if (schedule.optimize_l_x) {
      Vector l(dx);
      for (int d = 0; d < dx; ++d) l[d] = clamp_l(theta[k++]);
      hp.l_x = Lengthscales(l);
    }
    if (schedule.optimize_l_z) {
      Vector l(dz);
      for (int d = 0; d < dz; ++d) l[d] = clamp_l(theta[k++]);
      hp.l_z = Lengthscales(l);
    }
    if (schedule.optimize_sigma2) {
      hp.sigma2 = std::max(std::exp(theta[k++]), schedule.sigma2_floor);
    }
    return hp;
  };

  IVHyperparams start_hp = init;
  start_hp.sigma2 = std::max(init.sigma2, schedule.sigma2_floor);
  if (start.empty()) {
    return IVOptimizationResult{start_hp, log_marginal_likelihood(data, start_hp), 1};
  }

  // The first stage depends only on (l_z, eta); reuse it when l_z is fixed.
  std::optional<Matrix> fixed_mediation;
  if (!schedule.optimize_l_z) {
    fixed_mediation = mediation_iv(gram(data.z, init.l_z), init.eta).entries;
  }
  auto objective = [&](const Vector& theta) {
    const IVHyperparams hp = decode(theta);
    const Matrix K_xx = gram(data.x, hp.l_x);
    const Matrix A = fixed_mediation
                         ? *fixed_mediation
                         : mediation_iv(gram(data.z, hp.l_z), hp.eta).entries;
    const SecondStage s = second_stage(K_xx, A, data.y, hp.sigma2);
    return -gaussian_log_density(s.factor, data.y, s.alpha);
  };

  Vector theta0 = Eigen::Map<const Vector>(start.data(),
                                           static_cast<Eigen::Index>(start.size()));
  NelderMeadOptions options;
  options.max_evaluations = schedule.max_evaluations;
  options.f_tolerance = schedule.f_tolerance;
  options.initial_step = schedule.initial_step;
  const NelderMeadResult r = nelder_mead(objective, theta0, options);
  return IVOptimizationResult{decode(r.best_point), -r.best_value, r.evaluations};
}

}  // namespace dgp
