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

#include "dgp/psd_linalg.hpp"

#include <algorithm>
#include <cmath>

namespace dgp {

namespace {

constexpr double kSymmetryTolerance = 1e-10;
// Pivots below this fraction of the largest diagonal entry are treated as a
// failed factorization: they are round-off, not curvature.
constexpr double kRelativePivotFloor = 16.0 * 2.220446049250313e-16;

void check_rows(const PsdFactorization& F, Eigen::Index rows) {
  if (rows != F.size()) {
    throw InputError("psd solve: right-hand side has " + std::to_string(rows) +
                     " rows, factorization is " + std::to_string(F.size()));
  }
}

}  // namespace

double relative_asymmetry(const Matrix& M) {
  const double scale = M.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (M - M.transpose()).cwiseAbs().maxCoeff() / scale;
}

PsdFactorization PsdFactorization::factor(const Matrix& M, double base_jitter) {
  if (M.rows() != M.cols()) throw InputError("factor_psd: matrix not square");
  if (M.rows() == 0) throw InputError("factor_psd: empty matrix");
  if (!(base_jitter >= 0.0) || !std::isfinite(base_jitter)) {
    throw ParameterError("factor_psd: base jitter must be non-negative");
  }
  if (!M.allFinite()) throw InputError("factor_psd: non-finite entries");
  if (relative_asymmetry(M) > kSymmetryTolerance) {
    throw InputError("factor_psd: matrix is not symmetric");
  }
  const Eigen::Index n = M.rows();
  const double diag_scale = std::max(M.diagonal().cwiseAbs().maxCoeff(), 1e-300);
  double jitter = base_jitter;
  while (true) {
    Matrix work = M;
    if (jitter > 0.0) work.diagonal().array() += jitter;
    Eigen::LLT<Matrix> llt(work);
    if (llt.info() == Eigen::Success &&
        llt.matrixLLT().diagonal().allFinite() &&
        (llt.matrixLLT().diagonal().array().square() >
         kRelativePivotFloor * diag_scale)
            .all()) {
      return PsdFactorization(std::move(llt), jitter);
    }
    const double next = jitter == 0.0 ? kFirstJitter : jitter * 10.0;
    // Small tolerance so that 1e-10 * 10^8 still counts as reaching 1e-2.
    if (next > kMaxJitter * (1.0 + 1e-9)) break;
    jitter = next;
  }
  throw SingularMatrixError("factor_psd: Cholesky failed for a " +
                            std::to_string(n) + "x" + std::to_string(n) +
                            " matrix up to jitter 1e-2");
}

Matrix PsdFactorization::solve(const Matrix& B) const {
  check_rows(*this, B.rows());
  return llt_.solve(B);
}

Vector PsdFactorization::solve(const Vector& b) const {
  check_rows(*this, b.rows());
  return llt_.solve(b);
}

Matrix PsdFactorization::half_solve(const Matrix& B) const {
  check_rows(*this, B.rows());
  return llt_.matrixL().solve(B);
}

double PsdFactorization::logdet() const {
  return 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
}

}  // namespace dgp
