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

#include "dgp/datasets.hpp"

#include <string>

namespace dgp {

namespace {

void check_block(const Matrix& m, Eigen::Index n, const char* name) {
  if (m.rows() != n) {
    throw InputError(std::string("dataset: ") + name + " has " +
                     std::to_string(m.rows()) + " rows, expected " +
                     std::to_string(n));
  }
  if (m.cols() < 1) throw InputError(std::string("dataset: ") + name + " has no columns");
  if (!m.allFinite()) {
    throw InputError(std::string("dataset: ") + name + " has non-finite entries");
  }
}

Matrix pick(const Matrix& m, std::span<const Eigen::Index> idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= m.rows()) throw InputError("select_rows: index out of range");
    out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  }
  return out;
}

Vector pick(const Vector& v, std::span<const Eigen::Index> idx) {
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] < 0 || idx[i] >= v.size()) throw InputError("select_rows: index out of range");
    out[static_cast<Eigen::Index>(i)] = v[idx[i]];
  }
  return out;
}

Matrix stack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw InputError("concat: column mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

Vector stack(const Vector& a, const Vector& b) {
  Vector out(a.size() + b.size());
  out << a, b;
  return out;
}

}  // namespace

void IVDataset::validate() const {
  const Eigen::Index n = y.size();
  if (n < 2) throw InputError("IV dataset needs at least 2 samples");
  if (!y.allFinite()) throw InputError("dataset: y has non-finite entries");
  check_block(x, n, "x");
  check_block(z, n, "z");
}

void ProxyDataset::validate() const {
  const Eigen::Index n = y.size();
  if (n < 2) throw InputError("proxy dataset needs at least 2 samples");
  if (!y.allFinite()) throw InputError("dataset: y has non-finite entries");
  check_block(x, n, "x");
  check_block(z, n, "z");
  check_block(w, n, "w");
}

IVDataset select_rows(const IVDataset& data, std::span<const Eigen::Index> idx) {
  return IVDataset{pick(data.x, idx), pick(data.y, idx), pick(data.z, idx)};
}

ProxyDataset select_rows(const ProxyDataset& data,
                         std::span<const Eigen::Index> idx) {
  return ProxyDataset{pick(data.x, idx), pick(data.y, idx), pick(data.z, idx),
                      pick(data.w, idx)};
}

IVDataset concat(const IVDataset& a, const IVDataset& b) {
  return IVDataset{stack(a.x, b.x), stack(a.y, b.y), stack(a.z, b.z)};
}

ProxyDataset concat(const ProxyDataset& a, const ProxyDataset& b) {
  return ProxyDataset{stack(a.x, b.x), stack(a.y, b.y), stack(a.z, b.z),
                      stack(a.w, b.w)};
}

}  // namespace dgp
