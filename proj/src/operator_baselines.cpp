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

#include "dgp/operator_baselines.hpp"

#include <string>

#include "dgp/psd_linalg.hpp"

namespace dgp {

namespace {

Matrix ridge_solve(const Matrix& G, const Matrix& rhs, double ridge, const char* who) {
  Matrix M = 0.5 * (G + G.transpose());
  M.diagonal().array() += ridge;
  try {
    return factor_psd(M).solve(rhs);
  } catch (const SingularMatrixError& e) {
    throw EstimationError(std::string(who) + ": " + e.what());
  }
}

}  // namespace

Vector OperatorEstimate::predict(const Matrix& x_test) const {
  if (x_test.cols() != basis_x.cols()) {
    throw InputError("operator estimate: test dimension mismatch");
  }
  return gram(x_test, basis_x, l_x) * coefficients;
}

OperatorEstimate fit_div(const IVDataset& data, const IVHyperparams& hp) {
  data.validate();
  hp.validate();
  if (hp.l_x.dim() != data.x.cols() || hp.l_z.dim() != data.z.cols()) {
    throw InputError("DIV: lengthscale dimension mismatch");
  }
  const double n = static_cast<double>(data.size());
  const double lambda = hp.sigma2 / n;
  const Matrix K_zz = gram(data.z, hp.l_z);
  const Matrix K_xx = gram(data.x, hp.l_x);
  Matrix A = ridge_solve(K_zz, K_zz, hp.eta, "DIV");
  const Matrix S = A.transpose() * K_xx * A;
  const Vector beta = ridge_solve(S, data.y, n * lambda, "DIV");
  OperatorEstimate est;
  est.coefficients = A * beta;
  est.stage_one_gram = K_zz;
  est.mediation = std::move(A);
  est.lambda = lambda;
  est.basis_x = data.x;
  est.l_x = hp.l_x;
  return est;
}

Vector div_mean(const IVDataset& data, const IVHyperparams& hp, const Matrix& x_test) {
  return fit_div(data, hp).predict(x_test);
}

OperatorEstimate fit_dproxy(const ProxyDataset& data, const ProxyHyperparams& hp) {
  data.validate();
  hp.validate();
  if (hp.l_x.dim() != data.x.cols() || hp.l_z.dim() != data.z.cols() ||
      hp.l_w.dim() != data.w.cols()) {
    throw InputError("DProxy: lengthscale dimension mismatch");
  }
  const double n = static_cast<double>(data.size());
  const double lambda = hp.sigma2 / n;
  const Matrix K_xx = gram(data.x, hp.l_x);
  const Matrix K_ww = gram(data.w, hp.l_w);
  const Matrix G = K_xx.cwiseProduct(gram(data.z, hp.l_z));
  Matrix B = ridge_solve(G, G, hp.eta, "DProxy");
  const Vector kbar = K_ww.colwise().mean().transpose();
  const Matrix S = B.transpose() * K_xx.cwiseProduct(K_ww) * B;
  const Vector beta = ridge_solve(S, data.y, n * lambda, "DProxy");
  OperatorEstimate est;
  est.coefficients = kbar.cwiseProduct(B * beta);
  est.stage_one_gram = G;
  est.mediation = std::move(B);
  est.lambda = lambda;
  est.basis_x = data.x;
  est.l_x = hp.l_x;
  return est;
}

Vector dproxy_mean(const ProxyDataset& data, const ProxyHyperparams& hp,
                   const Matrix& x_test) {
  return fit_dproxy(data, hp).predict(x_test);
}

}  // namespace dgp
