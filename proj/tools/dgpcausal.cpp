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

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "dgp/cli.hpp"
#include "dgp/svg.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
};

void add_setting_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "key = value settings file");
  for (const std::string& key : dgp::config_keys()) {
    cmd->add_option("--" + key, flags.values[key], "overrides '" + key + "' from the config");
  }
}

dgp::ExperimentConfig resolve(const CLI::App* cmd, const CommonFlags& flags) {
  dgp::Settings settings;
  if (!flags.config_path.empty()) settings = dgp::read_settings_file(flags.config_path);
  for (const auto& [key, value] : flags.values) {
    if (cmd->count("--" + key) > 0) settings[key] = value;
  }
  dgp::ExperimentConfig base;
  base.output_dir = dgp::default_output_dir();
  base.seeds = dgp::parse_seeds("20", 0);
  return dgp::apply_settings(base, settings);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-process estimators for instrumental-variable and proxy designs"};
  app.require_subcommand(1);

  CommonFlags bench_flags, gen_flags, active_flags, fit_flags;
  CLI::App* bench = app.add_subcommand("bench", "run replications and write reports");
  add_setting_flags(bench, bench_flags);
  CLI::App* gen = app.add_subcommand("gen", "dump generated datasets as CSV");
  add_setting_flags(gen, gen_flags);
  CLI::App* active = app.add_subcommand("active", "variance-driven acquisition curves");
  add_setting_flags(active, active_flags);
  CLI::App* fit = app.add_subcommand("plot-fit", "fit one design and plot mean and band");
  add_setting_flags(fit, fit_flags);
  std::string fit_input, fit_output;
  fit->add_option("--input", fit_input, "existing fit dump to render instead of fitting");
  fit->add_option("--output", fit_output, "SVG path for --input");

  CLI::App* arc = app.add_subcommand("arc", "plot accuracy-rejection curves from arc.csv");
  std::string arc_input, arc_output, arc_out_dir = dgp::default_output_dir();
  arc->add_option("--input", arc_input, "ARC CSV (default <out>/arc.csv)");
  arc->add_option("--output", arc_output, "SVG path (default <out>/arc.svg)");
  arc->add_option("--out", arc_out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      const dgp::ExperimentConfig c = resolve(bench, bench_flags);
      const dgp::BenchOutputs out = dgp::run_benchmark(c, std::cerr);
      std::cout << out.results_csv << '\n' << out.arc_csv << '\n' << out.summary_json << '\n';
      if (out.failures > 0) {
        std::cerr << out.failures << " replication(s) failed\n";
        return 1;
      }
      return 0;
    }
    if (gen->parsed()) return dgp::run_gen(resolve(gen, gen_flags), std::cout);
    if (active->parsed()) return dgp::run_active(resolve(active, active_flags), std::cout);
    if (fit->parsed()) {
      if (!fit_input.empty()) {
        const std::string out =
            fit_output.empty()
                ? std::filesystem::path(fit_input).replace_extension(".svg").string()
                : fit_output;
        dgp::plot_fit(fit_input, out);
        std::cout << out << '\n';
        return 0;
      }
      return dgp::run_plot_fit(resolve(fit, fit_flags), std::cout);
    }
    if (arc->parsed()) {
      namespace fs = std::filesystem;
      const std::string in = arc_input.empty() ? (fs::path(arc_out_dir) / "arc.csv").string()
                                               : arc_input;
      const std::string out =
          arc_output.empty() ? (fs::path(arc_out_dir) / "arc.svg").string() : arc_output;
      dgp::plot_arc(in, out);
      std::cout << out << '\n';
      return 0;
    }
  } catch (const dgp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
