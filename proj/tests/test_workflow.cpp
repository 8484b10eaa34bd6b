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
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "dgp/active_learning.hpp"
#include "dgp/cli.hpp"
#include "dgp/config.hpp"
#include "dgp/pipeline.hpp"
#include "dgp/report.hpp"
#include "dgp/svg.hpp"
#include "json.hpp"

#ifndef DGP_GOLDEN_DIR
#define DGP_GOLDEN_DIR "golden"
#endif

namespace fs = std::filesystem;

namespace {

using dgp::DesignFamily;
using dgp::Matrix;
using dgp::Method;
using dgp::Vector;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t c = 0;
  for (std::size_t p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++c;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dgp_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

dgp::CsvTable table(const std::string& text) {
  std::istringstream in(text);
  return dgp::read_csv(in);
}

// ---- pipeline ----

TEST(Pipeline, MethodNamesAndCompatibility) {
  for (Method m : {Method::gpiv, Method::gpproxy, Method::div, Method::dproxy,
                   Method::gpiv_bootstrap, Method::gpproxy_bootstrap}) {
    EXPECT_EQ(dgp::parse_method(dgp::to_string(m)), m);
  }
  EXPECT_TRUE(dgp::compatible(Method::div, DesignFamily::iv_demand));
  EXPECT_FALSE(dgp::compatible(Method::gpiv, DesignFamily::proxy_synthetic));
  EXPECT_FALSE(dgp::compatible(Method::dproxy, DesignFamily::iv_log));
  EXPECT_THROW(dgp::parse_method("kiv"), dgp::InputError);
}

TEST(Pipeline, StandardizerRoundTrip) {
  const auto d = dgp::gen_iv_demand(dgp::DesignSpec{DesignFamily::iv_demand, 100, 0.5, 1}).data;
  dgp::Standardizer s = dgp::Standardizer::fit(d);
  const dgp::IVDataset t = s.apply(d);
  for (Eigen::Index j = 0; j < 3; ++j) {
    EXPECT_NEAR(t.x.col(j).mean(), 0.0, 1e-12);
    EXPECT_NEAR((t.x.col(j).array() - t.x.col(j).mean()).square().sum() / 99.0, 1.0, 1e-12);
  }
  EXPECT_NEAR(t.y.mean(), 0.0, 1e-12);
  EXPECT_LT((s.unscale_mean(t.y) - d.y).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(s.unscale_variance(Vector::Ones(1))[0], s.y_scale * s.y_scale, 1e-12);
  const dgp::Standardizer id = dgp::Standardizer::identity(3, 3);
  EXPECT_EQ(id.apply(d).x, d.x);
}

TEST(Pipeline, ReplicationProducesFiniteMetrics) {
  dgp::ReplicationOptions o;
  o.fit.schedule.max_evaluations = 30;
  const dgp::ReplicationRecord r = dgp::run_replication(DesignFamily::iv_sine, 60, Method::gpiv, 3, o);
  ASSERT_TRUE(r.ok) << r.error;
  EXPECT_GT(r.mse, 0.0);
  EXPECT_GE(r.coverage, 0.0);
  EXPECT_LE(r.coverage, 1.0);
  EXPECT_EQ(r.auc.size(), 3u);
  EXPECT_EQ(r.arc.size(), 3u * 20u);
  const dgp::ReplicationRecord again =
      dgp::run_replication(DesignFamily::iv_sine, 60, Method::gpiv, 3, o);
  EXPECT_EQ(r.mse, again.mse);
}

TEST(Pipeline, IncompatibleMethodIsRecordedAsError) {
  const dgp::ReplicationRecord r =
      dgp::run_replication(DesignFamily::iv_log, 30, Method::gpproxy, 0, {});
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.error.empty());
}

TEST(Pipeline, BootstrapMethodsShareGpMean) {
  const auto d = dgp::gen_iv_synthetic(dgp::DesignSpec{DesignFamily::iv_log, 40, 0.5, 2});
  dgp::FitOptions f;
  f.schedule.max_evaluations = 20;
  f.n_boot = 5;
  const Matrix xt = d.truth.test_grid.topRows(10);
  const dgp::MethodPrediction a = dgp::fit_predict(Method::gpiv, d.data, xt, f, 4);
  const dgp::MethodPrediction b = dgp::fit_predict(Method::gpiv_bootstrap, d.data, xt, f, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_NE(a.variance, b.variance);
  EXPECT_GE(b.variance.minCoeff(), 0.0);
}

// ---- active learning ----

dgp::AcquisitionOptions quick(int budget, dgp::AcquisitionStrategy s) {
  dgp::AcquisitionOptions o;
  o.budget = budget;
  o.strategy = s;
  o.seed = 5;
  o.fit.schedule.max_evaluations = 20;
  return o;
}

TEST(Active, ZeroBudgetGivesInitialMse) {
  dgp::ActiveExperiment e;
  e.n_pool = 20;
  const dgp::AcquisitionRun r =
      dgp::run_active_experiment(e, quick(0, dgp::AcquisitionStrategy::max_variance));
  ASSERT_EQ(r.curve.size(), 1u);
  EXPECT_EQ(r.curve[0].acquired, 0);
  EXPECT_GT(r.curve[0].mse, 0.0);
  EXPECT_TRUE(r.acquired_pool_indices.empty());
}

TEST(Active, DuplicatePoolMakesStrategiesAgree) {
  const auto d = dgp::gen_iv_synthetic(dgp::DesignSpec{DesignFamily::iv_log, 31, 0.5, 6});
  const std::vector<Eigen::Index> first{0};
  std::vector<Eigen::Index> train_idx(30);
  for (Eigen::Index i = 0; i < 30; ++i) train_idx[i] = i + 1;
  const dgp::IVDataset train = dgp::select_rows(d.data, train_idx);
  const std::vector<Eigen::Index> dup(15, 0);
  const dgp::IVDataset pool = dgp::select_rows(d.data, dup);
  const Matrix grid = d.truth.test_grid;
  const Vector truth = d.truth.on_grid();
  const auto a = dgp::run_acquisition(train, pool, grid, truth,
                                      quick(8, dgp::AcquisitionStrategy::max_variance));
  const auto b =
      dgp::run_acquisition(train, pool, grid, truth, quick(8, dgp::AcquisitionStrategy::random));
  EXPECT_EQ(a.curve.back().mse, b.curve.back().mse);
}

TEST(Active, NoPoolPointAcquiredTwice) {
  dgp::ActiveExperiment e;
  e.n_pool = 25;
  for (auto s : {dgp::AcquisitionStrategy::max_variance, dgp::AcquisitionStrategy::random}) {
    const dgp::AcquisitionRun r = dgp::run_active_experiment(e, quick(25, s));
    EXPECT_EQ(r.curve.size(), 26u);
    const std::set<Eigen::Index> uniq(r.acquired_pool_indices.begin(),
                                      r.acquired_pool_indices.end());
    EXPECT_EQ(uniq.size(), 25u);
  }
  e.n_pool = 5;
  EXPECT_THROW(dgp::run_active_experiment(e, quick(6, dgp::AcquisitionStrategy::random)),
               dgp::InputError);
}

TEST(Active, ProxyDesignRuns) {
  dgp::ActiveExperiment e;
  e.family = DesignFamily::proxy_synthetic;
  e.n_pool = 10;
  const dgp::AcquisitionRun r =
      dgp::run_active_experiment(e, quick(3, dgp::AcquisitionStrategy::max_variance));
  EXPECT_EQ(r.curve.size(), 4u);
}

// ---- config ----

TEST(Config, SettingsAndSeeds) {
  std::istringstream in("design = iv_log, iv_sine\n[run]\nn = 50\nseeds = 3-5\n");
  const dgp::ExperimentConfig c = dgp::apply_settings({}, dgp::read_settings(in));
  EXPECT_EQ(c.designs.size(), 2u);
  EXPECT_EQ(c.sample_sizes, std::vector<Eigen::Index>{50});
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{3, 4, 5}));
  EXPECT_EQ(dgp::parse_seeds("3", 10), (std::vector<std::uint64_t>{10, 11, 12}));
  EXPECT_EQ(dgp::parse_seeds("1,4,9", 0), (std::vector<std::uint64_t>{1, 4, 9}));
  EXPECT_THROW(dgp::apply_settings({}, {{"bogus", "1"}}), dgp::InputError);
}

TEST(Config, ParseErrorReportsLine) {
  std::istringstream in("design = iv_log\nn = 50\nthis line is broken\n");
  try {
    dgp::read_settings(in);
    FAIL() << "expected ParseError";
  } catch (const dgp::ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(Config, CsvParseErrorReportsLine) {
  const dgp::CsvTable t = table("a,b\n1,2\n3,oops\n");
  EXPECT_EQ(t.number(0, 1), 2.0);
  try {
    t.number(1, 1);
    FAIL() << "expected ParseError";
  } catch (const dgp::ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(table("a,b\n1,2,3\n"), dgp::ParseError);
}

// ---- benchmark driver ----

dgp::ExperimentConfig small_bench(const fs::path& dir, int jobs) {
  dgp::ExperimentConfig c;
  c.designs = {DesignFamily::iv_log};
  c.methods = {Method::gpiv};
  c.sample_sizes = {50};
  c.seeds = {0};
  c.max_evaluations = 30;
  c.output_dir = dir.string();
  c.jobs = jobs;
  return c;
}

TEST(Bench, SingleSeedWritesOneRowAndSummary) {
  const fs::path dir = scratch("bench1");
  std::ostringstream log;
  const dgp::BenchOutputs out = dgp::run_benchmark(small_bench(dir, 1), log);
  EXPECT_EQ(out.failures, 0);
  const dgp::CsvTable t = dgp::read_csv_file(out.results_csv);
  EXPECT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.header.front(), "design");
  EXPECT_EQ(t.rows[0][t.column("status")], "ok");
  const nlohmann::json j = nlohmann::json::parse(slurp(out.summary_json));
  ASSERT_EQ(j["groups"].size(), 1u);
  EXPECT_EQ(j["groups"][0]["replications"], 1);
  EXPECT_EQ(dgp::read_csv_file(out.arc_csv).rows.size(), 60u);
}

TEST(Bench, OutputIndependentOfJobCount) {
  const fs::path a = scratch("bench_a"), b = scratch("bench_b");
  dgp::ExperimentConfig ca = small_bench(a, 1), cb = small_bench(b, 3);
  ca.seeds = cb.seeds = {0, 1, 2};
  ca.designs = cb.designs = {DesignFamily::iv_log, DesignFamily::iv_linear};
  std::ostringstream log;
  const dgp::BenchOutputs oa = dgp::run_benchmark(ca, log);
  const dgp::BenchOutputs ob = dgp::run_benchmark(cb, log);
  EXPECT_EQ(slurp(oa.results_csv), slurp(ob.results_csv));
  EXPECT_EQ(slurp(oa.arc_csv), slurp(ob.arc_csv));
  EXPECT_EQ(slurp(oa.summary_json), slurp(ob.summary_json));
}

// ---- plots ----

const char* kArcHeader = "design,n,method,seed,quantile,rejection_rate,accuracy\n";

TEST(Svg, EmptyReportGivesAxesOnly) {
  const std::string svg = dgp::arc_svg(table(kArcHeader));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<line"), std::string::npos);
  EXPECT_EQ(count(svg, "<polyline"), 0u);
}

std::string toy_arc() {
  std::ostringstream s;
  s << kArcHeader;
  const double acc[] = {0.75, 0.8, 0.86, 0.9, 0.97};
  for (int i = 0; i < 5; ++i) {
    s << "iv_log,200,gpiv,0,0.75," << 0.2 * i << ',' << acc[i] << '\n';
  }
  return s.str();
}

TEST(Svg, SingleCurveGivesOnePolyline) {
  EXPECT_EQ(count(dgp::arc_svg(table(toy_arc())), "<polyline"), 1u);
}

TEST(Svg, ToyReportMatchesGolden) {
  std::ostringstream s;
  s << toy_arc();
  for (int i = 0; i < 5; ++i) {
    s << "iv_log,200,gpiv_bootstrap,0,0.75," << 0.2 * i << ',' << 0.75 + 0.02 * i << '\n';
    s << "iv_log,200,gpiv,0,0.85," << 0.2 * i << ',' << 0.85 + 0.03 * i << '\n';
  }
  const std::string golden = slurp(std::string(DGP_GOLDEN_DIR) + "/arc_toy.svg");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(dgp::arc_svg(table(s.str())), golden);
}

TEST(Svg, PlotFilesFromCsv) {
  const fs::path dir = scratch("svg");
  {
    std::ofstream f(dir / "arc.csv");
    f << kArcHeader;
  }
  dgp::plot_arc((dir / "arc.csv").string(), (dir / "arc.svg").string());
  EXPECT_TRUE(fs::exists(dir / "arc.svg"));
  {
    std::ofstream f(dir / "fit.csv");
    dgp::write_fit_dump(f, Vector::LinSpaced(5, 0, 1), Vector::Zero(5), Vector::Ones(5),
                        Vector::Constant(5, 0.1));
  }
  const std::string fit = dgp::fit_svg(dgp::read_csv_file((dir / "fit.csv").string()));
  EXPECT_EQ(count(fit, "<polygon"), 1u);
  EXPECT_EQ(count(fit, "<polyline"), 2u);
  EXPECT_THROW(dgp::plot_arc((dir / "missing.csv").string(), (dir / "x.svg").string()),
               dgp::Error);
}

}  // namespace
