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

#include "dgp/embeddings.hpp"

#include <cmath>

#include "dgp/psd_linalg.hpp"

namespace dgp {

namespace {

void check_eta(double eta) {
  if (!std::isfinite(eta) || eta <= 0.0) {
    throw ParameterError("mediation: eta must be positive and finite");
  }
}

MediationMatrix regularized_solve(const GramMatrix& G, const GramMatrix& rhs,
                                  double eta) {
  check_eta(eta);
  if (G.rows() != G.cols()) throw InputError("mediation: Gram matrix not square");
  if (rhs.rows() != G.rows()) {
    throw InputError("mediation: cross-Gram rows do not match stage-one size");
  }
  Matrix reg = G;
  reg.diagonal().array() += eta;
  const PsdFactorization F = factor_psd(reg);
  return MediationMatrix{F.solve(rhs), eta};
}

}  // namespace

MediationMatrix mediation_iv(const GramMatrix& K_zz, double eta) {
  return regularized_solve(K_zz, K_zz, eta);
}

MediationMatrix mediation_proxy(const GramMatrix& K_xx, const GramMatrix& K_zz,
                                double eta) {
  const GramMatrix G = hadamard(K_xx, K_zz);
  return regularized_solve(G, G, eta);
}

KmeSummary kme_summary(const GramMatrix& K_ww) {
  if (K_ww.size() == 0) throw InputError("kme_summary: empty Gram matrix");
  if (K_ww.rows() != K_ww.cols()) {
    throw InputError("kme_summary: Gram matrix not square");
  }
  const double n = static_cast<double>(K_ww.rows());
  KmeSummary out;
  out.k_wbar_w = K_ww.colwise().sum().transpose() / n;
  out.c_w_hat = out.k_wbar_w.sum() / n;
  return out;
}

MediationMatrix split_mediation_iv(const GramMatrix& K_zz,
                                   const GramMatrix& K_z_ztilde, double eta) {
  return regularized_solve(K_zz, K_z_ztilde, eta);
}

MediationMatrix split_mediation_proxy(const GramMatrix& K_xx,
                                      const GramMatrix& K_zz,
                                      const GramMatrix& K_x_xtilde,
                                      const GramMatrix& K_z_ztilde, double eta) {
  return regularized_solve(hadamard(K_xx, K_zz), hadamard(K_x_xtilde, K_z_ztilde),
                           eta);
}

}  // namespace dgp
