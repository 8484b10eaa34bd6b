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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgp/active_learning.hpp"
#include "dgp/datagen.hpp"
#include "dgp/pipeline.hpp"

namespace dgp {

/// Flat key/value settings. Section headers in the file only group keys.
using Settings = std::map<std::string, std::string>;

/// key = value file with optional [section] headers. Comments start with ';'
/// or '#'. Throws ParseError with the offending line.
Settings read_settings_file(const std::string& path);
Settings read_settings(std::istream& in);

struct ExperimentConfig {
  std::vector<DesignFamily> designs{DesignFamily::iv_log};
  std::vector<Method> methods{Method::gpiv};
  std::vector<Eigen::Index> sample_sizes{200};
  std::vector<std::uint64_t> seeds;
  double rho = 0.5;
  double eta = kDefaultEta;
  std::vector<double> quantiles = default_quantile_levels();
  int n_boot = kDefaultBootstrapSamples;
  int max_evaluations = 200;
  std::optional<bool> standardize_y;
  std::string output_dir = "out";
  int jobs = 1;
  // active acquisition
  int budget = 100;
  Eigen::Index n_train = 30;
  Eigen::Index n_pool = 300;
  std::vector<AcquisitionStrategy> strategies{AcquisitionStrategy::max_variance,
                                              AcquisitionStrategy::random};

  /// InputError for incompatible design/method pairs or empty lists.
  void validate(bool check_methods = true) const;
  ReplicationOptions replication_options() const;
};

/// Recognized keys, identical to the command-line flag names.
const std::vector<std::string>& config_keys();

/// Applies `settings` on top of `base`. Unknown keys and malformed values
/// raise InputError.
ExperimentConfig apply_settings(ExperimentConfig base, const Settings& settings);

/// "20" means 20 seeds from root_seed, "3-7" an inclusive range, "1,4,9" a list.
std::vector<std::uint64_t> parse_seeds(const std::string& text, std::uint64_t root_seed);

}  // namespace dgp
