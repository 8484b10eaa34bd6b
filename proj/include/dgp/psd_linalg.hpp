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

#include <Eigen/Cholesky>

#include "dgp/errors.hpp"

namespace dgp {

/// Cholesky factor of M + jitter * I for a symmetric PSD matrix M.
///
/// The jitter starts at `base_jitter` and is raised by factors of ten (from
/// 1e-10 when the base is zero) until the factorization succeeds or the
/// ladder passes 1e-2. jitter_used() reports the value that succeeded.
/// Instances are immutable and safe to share between threads.
class PsdFactorization {
 public:
  static constexpr double kMaxJitter = 1e-2;
  static constexpr double kFirstJitter = 1e-10;

  static PsdFactorization factor(const Matrix& M, double base_jitter = 0.0);

  Eigen::Index size() const { return llt_.rows(); }
  double jitter_used() const { return jitter_; }
  Matrix lower_triangular_factor() const { return llt_.matrixL(); }

  /// X with (M + jitter I) X = B.
  Matrix solve(const Matrix& B) const;
  Vector solve(const Vector& b) const;
  /// L^{-1} B, so that B^T (M + jitter I)^{-1} B = (L^{-1}B)^T (L^{-1}B).
  Matrix half_solve(const Matrix& B) const;
  /// log|M + jitter I| = 2 sum_i log L_ii.
  double logdet() const;

 private:
  PsdFactorization(Eigen::LLT<Matrix> llt, double jitter)
      : llt_(std::move(llt)), jitter_(jitter) {}

  Eigen::LLT<Matrix> llt_;
  double jitter_ = 0.0;
};

inline PsdFactorization factor_psd(const Matrix& M, double base_jitter = 0.0) {
  return PsdFactorization::factor(M, base_jitter);
}
inline Matrix solve(const PsdFactorization& F, const Matrix& B) {
  return F.solve(B);
}
inline double logdet(const PsdFactorization& F) { return F.logdet(); }

// Largest |M_ij - M_ji| relative to the largest |M_ij|.
double relative_asymmetry(const Matrix& M);

}  // namespace dgp
