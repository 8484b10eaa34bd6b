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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "dgp/datasets.hpp"

namespace dgp {

enum class DesignFamily { iv_sine, iv_log, iv_linear, iv_demand, proxy_synthetic, proxy_demand };

std::string to_string(DesignFamily family);
/// Throws InputError on an unknown name.
DesignFamily parse_family(std::string_view name);
bool is_iv(DesignFamily family);

struct DesignSpec {
  DesignFamily family = DesignFamily::iv_sine;
  Eigen::Index n = 200;
  double rho = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Causal target on a design's evaluation grid.
struct GroundTruth {
  /// f at a single treatment point (one row of the grid).
  std::function<double(const Vector&)> evaluate;
  Matrix test_grid;

  Vector at(const Matrix& x) const;
  Vector on_grid() const { return at(test_grid); }
};

struct IVDesign {
  IVDataset data;
  GroundTruth truth;
};

struct ProxyDesign {
  ProxyDataset data;
  GroundTruth truth;
};

/// Standard normal CDF.
double normal_cdf(double x);

/// h(T) of the demand designs, 2((t-5)^4/600 + exp(-4(t-5)^2) + t/10 - 2).
double demand_h(double t);

IVDesign gen_iv_synthetic(const DesignSpec& spec);
IVDesign gen_iv_demand(const DesignSpec& spec);
ProxyDesign gen_proxy_synthetic(const DesignSpec& spec);
ProxyDesign gen_proxy_demand(const DesignSpec& spec);

/// Truth and grid only; no sampling.
GroundTruth ground_truth(DesignFamily family);

inline constexpr std::size_t kTruthDraws = 1'000'000;
inline constexpr std::uint64_t kTruthSeed = 20240521;

/// Monte Carlo truth of the proxy synthetic design at x with an explicit
/// confounder sample (seed, draws).
double proxy_synthetic_truth(double x, std::uint64_t mc_seed, std::size_t draws);
/// Monte Carlo truth of the proxy demand design at x.
double proxy_demand_truth(double x, std::uint64_t mc_seed, std::size_t draws);

/// Evenly spaced points, endpoints included.
Vector linspace(double lo, double hi, Eigen::Index count);

/// CSV with a header row; columns x1.., y, z1.. (and w1.. for proxy data).
void write_csv(std::ostream& out, const IVDataset& data);
void write_csv(std::ostream& out, const ProxyDataset& data);

}  // namespace dgp
