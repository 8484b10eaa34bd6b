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

#include <iosfwd>
#include <string>

#include "dgp/config.hpp"

namespace dgp {

/// Output directory used when neither --out nor the config sets one.
std::string default_output_dir();

struct BenchOutputs {
  std::string results_csv;
  std::string arc_csv;
  std::string summary_json;
  int failures = 0;
};

/// Every (design, n, method, seed) replication, run on config.jobs workers.
/// Rows are written in configuration order regardless of scheduling.
BenchOutputs run_benchmark(const ExperimentConfig& config, std::ostream& log);

/// Dumps one CSV per (design, n, seed) into the output directory.
int run_gen(const ExperimentConfig& config, std::ostream& log);

/// Acquisition curves for every (design, strategy, seed), written to
/// curve.csv together with active.svg.
int run_active(const ExperimentConfig& config, std::ostream& log);

/// Fits the first method on the first design, size and seed and writes the
/// fit dump (fit.csv) and its plot (fit.svg). Needs a one-dimensional
/// treatment.
int run_plot_fit(const ExperimentConfig& config, std::ostream& log);

}  // namespace dgp
