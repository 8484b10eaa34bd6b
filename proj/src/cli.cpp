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

#include "dgp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "dgp/parallel.hpp"
#include "dgp/report.hpp"
#include "dgp/svg.hpp"

namespace dgp {

namespace fs = std::filesystem;

namespace {

std::string prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace

std::string default_output_dir() {
  if (const char* env = std::getenv("DGP_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "out";
}

BenchOutputs run_benchmark(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  struct Task {
    DesignFamily design;
    Eigen::Index n;
    Method method;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (DesignFamily d : config.designs) {
    for (Eigen::Index n : config.sample_sizes) {
      for (Method m : config.methods) {
        for (std::uint64_t s : config.seeds) tasks.push_back({d, n, m, s});
      }
    }
  }
  const ReplicationOptions options = config.replication_options();
  std::vector<ReplicationRecord> records(tasks.size());
  std::mutex log_mu;
  parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    const Task& t = tasks[i];
    records[i] = run_replication(t.design, t.n, t.method, t.seed, options);
    std::lock_guard<std::mutex> lock(log_mu);
    const ReplicationRecord& r = records[i];
    log << r.design << " n=" << r.n << ' ' << r.method << " seed=" << r.seed << ": "
        << (r.ok ? "mse=" + format_number(r.mse) : "FAILED " + r.error) << '\n';
  });

  const std::string dir = prepare_dir(config.output_dir);
  BenchOutputs out;
  out.results_csv = (fs::path(dir) / "results.csv").string();
  out.arc_csv = (fs::path(dir) / "arc.csv").string();
  out.summary_json = (fs::path(dir) / "summary.json").string();
  std::ostringstream csv, arc, json;
  write_records_csv(csv, records, config.quantiles);
  write_arc_csv(arc, records);
  write_summary_json(json, records, config.quantiles);
  write_text(out.results_csv, csv.str());
  write_text(out.arc_csv, arc.str());
  write_text(out.summary_json, json.str());
  for (const ReplicationRecord& r : records) out.failures += r.ok ? 0 : 1;
  return out;
}

int run_gen(const ExperimentConfig& config, std::ostream& log) {
  config.validate(false);
  const std::string dir = prepare_dir(config.output_dir);
  for (DesignFamily d : config.designs) {
    for (Eigen::Index n : config.sample_sizes) {
      for (std::uint64_t seed : config.seeds) {
        const DesignSpec spec{d, n, config.rho, seed};
        std::ostringstream text;
        switch (d) {
          case DesignFamily::iv_demand: write_csv(text, gen_iv_demand(spec).data); break;
          case DesignFamily::proxy_synthetic: write_csv(text, gen_proxy_synthetic(spec).data); break;
          case DesignFamily::proxy_demand: write_csv(text, gen_proxy_demand(spec).data); break;
          default: write_csv(text, gen_iv_synthetic(spec).data); break;
        }
        const std::string path = (fs::path(dir) / (to_string(d) + "_n" + std::to_string(n) +
                                                   "_seed" + std::to_string(seed) + ".csv"))
                                     .string();
        write_text(path, text.str());
        log << path << '\n';
      }
    }
  }
  return 0;
}

int run_active(const ExperimentConfig& config, std::ostream& log) {
  config.validate(false);
  if (config.strategies.empty()) throw InputError("active: no strategy");
  struct Task {
    DesignFamily design;
    AcquisitionStrategy strategy;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (DesignFamily d : config.designs) {
    for (AcquisitionStrategy s : config.strategies) {
      for (std::uint64_t seed : config.seeds) tasks.push_back({d, s, seed});
    }
  }
  std::vector<AcquisitionRun> runs(tasks.size());
  std::vector<std::string> errors(tasks.size());
  parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    ActiveExperiment exp{tasks[i].design, config.n_train, config.n_pool, config.rho};
    AcquisitionOptions o;
    o.budget = config.budget;
    o.strategy = tasks[i].strategy;
    o.seed = tasks[i].seed;
    o.fit.eta = config.eta;
    o.fit.schedule.max_evaluations = config.max_evaluations;
    try {
      runs[i] = run_active_experiment(exp, o);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  const std::string dir = prepare_dir(config.output_dir);
  std::ostringstream csv;
  csv << "design,";
  write_curve_header(csv);
  int failures = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) {
      ++failures;
      log << to_string(tasks[i].design) << ' ' << to_string(tasks[i].strategy)
          << " seed=" << tasks[i].seed << ": FAILED " << errors[i] << '\n';
      continue;
    }
    std::ostringstream rows;
    write_curve_rows(rows, runs[i]);
    std::istringstream lines(rows.str());
    for (std::string line; std::getline(lines, line);) {
      csv << to_string(tasks[i].design) << ',' << line << '\n';
    }
    log << to_string(tasks[i].design) << ' ' << to_string(tasks[i].strategy)
        << " seed=" << tasks[i].seed << ": final mse=" << format_number(runs[i].curve.back().mse)
        << '\n';
  }
  const std::string curve_path = (fs::path(dir) / "curve.csv").string();
  write_text(curve_path, csv.str());
  plot_active(curve_path, (fs::path(dir) / "active.svg").string());
  return failures == 0 ? 0 : 1;
}

int run_plot_fit(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  const DesignFamily d = config.designs.front();
  const Method m = config.methods.front();
  const DesignSpec spec{d, config.sample_sizes.front(), config.rho, config.seeds.front()};
  ReplicationOptions ro = config.replication_options();
  FitOptions fit = ro.fit;
  fit.standardize_y = ro.standardize_y.value_or(default_standardize_y(d));
  MethodPrediction pred;
  GroundTruth truth;
  if (is_iv(d)) {
    IVDesign g = d == DesignFamily::iv_demand ? gen_iv_demand(spec) : gen_iv_synthetic(spec);
    truth = std::move(g.truth);
    pred = fit_predict(m, g.data, truth.test_grid, fit, spec.seed);
  } else {
    ProxyDesign g = d == DesignFamily::proxy_synthetic ? gen_proxy_synthetic(spec)
                                                       : gen_proxy_demand(spec);
    truth = std::move(g.truth);
    pred = fit_predict(m, g.data, truth.test_grid, fit, spec.seed);
  }
  if (truth.test_grid.cols() != 1) {
    throw InputError("plot-fit needs a one-dimensional treatment; " + to_string(d) + " has " +
                     std::to_string(truth.test_grid.cols()));
  }
  const std::string dir = prepare_dir(config.output_dir);
  std::ostringstream dump;
  write_fit_dump(dump, truth.test_grid.col(0), truth.on_grid(), pred.mean, pred.variance);
  const std::string dump_path = (fs::path(dir) / "fit.csv").string();
  write_text(dump_path, dump.str());
  const std::string svg_path = (fs::path(dir) / "fit.svg").string();
  plot_fit(dump_path, svg_path);
  log << dump_path << '\n' << svg_path << '\n';
  return 0;
}

}  // namespace dgp
