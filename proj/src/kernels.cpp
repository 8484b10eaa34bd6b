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

#include "dgp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace dgp {

Lengthscale::Lengthscale(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ParameterError("lengthscale must be positive and finite, got " +
                         std::to_string(value));
  }
}

Lengthscales::Lengthscales(Vector values) : values_(std::move(values)) {
  if (values_.size() == 0) throw InputError("lengthscales must be non-empty");
  for (Eigen::Index d = 0; d < values_.size(); ++d) {
    Lengthscale check(values_[d]);
    (void)check;
  }
}

Lengthscales Lengthscales::isotropic(Lengthscale l, int dim) {
  if (dim <= 0) throw InputError("lengthscale dimension must be positive");
  return Lengthscales(Vector::Constant(dim, l.value()));
}

double rbf_eval(std::span<const double> x1, std::span<const double> x2,
                const Lengthscales& l) {
  if (x1.size() != x2.size() || static_cast<int>(x1.size()) != l.dim()) {
    throw InputError("rbf_eval: dimension mismatch");
  }
  double r = 0.0;
  for (size_t d = 0; d < x1.size(); ++d) {
    const double u = (x1[d] - x2[d]) / l[static_cast<int>(d)];
    r += u * u;
  }
  return std::exp(-0.5 * r);
}

double rbf_eval(const Vector& x1, const Vector& x2, const Lengthscales& l) {
  return rbf_eval(std::span<const double>(x1.data(), x1.size()),
                  std::span<const double>(x2.data(), x2.size()), l);
}

GramMatrix gram(const Matrix& X, const Matrix& X2, const Lengthscales& l) {
  if (X.cols() != l.dim() || X2.cols() != l.dim()) {
    throw InputError("gram: input columns (" + std::to_string(X.cols()) + ", " +
                     std::to_string(X2.cols()) +
                     ") do not match lengthscale dimension " +
                     std::to_string(l.dim()));
  }
  // Rows scaled by 1/l and stored column-wise so each point is contiguous.
  const Eigen::Index d = X.cols();
  const Vector inv = l.values().cwiseInverse();
  const Matrix a = (X * inv.asDiagonal()).transpose();
  const Matrix b = (X2 * inv.asDiagonal()).transpose();
  GramMatrix K(X.rows(), X2.rows());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const double* bj = b.col(j).data();
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
      const double* ai = a.col(i).data();
      double r = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double u = ai[k] - bj[k];
        r += u * u;
      }
      K(i, j) = std::exp(-0.5 * r);
    }
  }
  return K;
}

GramMatrix gram(const Matrix& X, const Lengthscales& l) { return gram(X, X, l); }

GramMatrix hadamard(const GramMatrix& A, const GramMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw InputError("hadamard: shape mismatch");
  }
  return A.cwiseProduct(B);
}

Lengthscale median_heuristic(const Matrix& X) {
  const Eigen::Index n = X.rows();
  if (n < 2) throw InputError("median_heuristic needs at least two points");
  std::vector<double> dist;
  dist.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      dist.push_back((X.row(i) - X.row(j)).norm());
    }
  }
  const size_t m = dist.size();
  const size_t mid = m / 2;
  std::nth_element(dist.begin(), dist.begin() + mid, dist.end());
  double med = dist[mid];
  if (m % 2 == 0) {
    const double below = *std::max_element(dist.begin(), dist.begin() + mid);
    med = 0.5 * (med + below);
  }
  if (!(med > 0.0)) {
    throw DegenerateInputError(
        "median_heuristic: median pairwise distance is zero");
  }
  return Lengthscale(med);
}

Lengthscales median_heuristic_per_column(const Matrix& X) {
  if (X.cols() == 1) return Lengthscales::isotropic(median_heuristic(X), 1);
  Vector l(X.cols());
  std::optional<double> joint;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    try {
      l[j] = median_heuristic(X.col(j)).value();
    } catch (const DegenerateInputError&) {
      if (!joint) joint = median_heuristic(X).value();
      l[j] = *joint;
    }
  }
  return Lengthscales(l);
}

}  // namespace dgp
