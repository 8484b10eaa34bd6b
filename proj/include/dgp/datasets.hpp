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

/// Observed instrumental-variable samples: treatment x, outcome y, instrument z.
struct IVDataset {
  Matrix x;  // n x d_x
  Vector y;  // n
  Matrix z;  // n x d_z

  Eigen::Index size() const { return y.size(); }
  /// Throws InputError unless counts agree, n >= 2 and entries are finite.
  void validate() const;
};

/// Observed proximal samples: treatment x, outcome y, treatment proxy z and
/// outcome proxy w.
struct ProxyDataset {
  Matrix x;
  Vector y;
  Matrix z;
  Matrix w;

  Eigen::Index size() const { return y.size(); }
  void validate() const;
};

/// Rows `idx` of every column block, in the given order (repeats allowed).
IVDataset select_rows(const IVDataset& data, std::span<const Eigen::Index> idx);
ProxyDataset select_rows(const ProxyDataset& data,
                         std::span<const Eigen::Index> idx);

/// Row-wise concatenation.
IVDataset concat(const IVDataset& a, const IVDataset& b);
ProxyDataset concat(const ProxyDataset& a, const ProxyDataset& b);

}  // namespace dgp
