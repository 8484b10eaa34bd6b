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

#include <span>

#include "dgp/errors.hpp"

namespace dgp {

using GramMatrix = Matrix;

// A strictly positive, finite RBF lengthscale.
class Lengthscale {
 public:
  explicit Lengthscale(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Per-dimension lengthscales of an anisotropic RBF kernel.
class Lengthscales {
 public:
  Lengthscales() = default;
  explicit Lengthscales(Vector values);
  static Lengthscales isotropic(Lengthscale l, int dim);
  static Lengthscales isotropic(double l, int dim) {
    return isotropic(Lengthscale(l), dim);
  }

  int dim() const { return static_cast<int>(values_.size()); }
  double operator[](int d) const { return values_[d]; }
  const Vector& values() const { return values_; }

 private:
  Vector values_;
};

/// exp(-sum_d (x1_d - x2_d)^2 / (2 l_d^2)). Unit amplitude.
double rbf_eval(std::span<const double> x1, std::span<const double> x2,
                const Lengthscales& l);
double rbf_eval(const Vector& x1, const Vector& x2, const Lengthscales& l);

/// Cross-Gram matrix between the rows of X (n x d) and X2 (m x d).
///
/// Entries are evaluated pairwise, so gram(X, X, l) is exactly symmetric with
/// an exact unit diagonal.
GramMatrix gram(const Matrix& X, const Matrix& X2, const Lengthscales& l);
GramMatrix gram(const Matrix& X, const Lengthscales& l);

/// Elementwise product of equally shaped matrices.
GramMatrix hadamard(const GramMatrix& A, const GramMatrix& B);

/// Median Euclidean distance over all unordered pairs i < j of rows of X.
/// Even pair counts average the two middle distances.
Lengthscale median_heuristic(const Matrix& X);

/// One median heuristic per column. A column whose median distance is zero
/// falls back to the median over all columns jointly.
Lengthscales median_heuristic_per_column(const Matrix& X);

}  // namespace dgp
