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

#include <string>
#include <vector>

#include "dgp/report.hpp"

namespace dgp {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotBand {
  std::vector<double> x;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::vector<PlotSeries> series;
  std::vector<PlotBand> bands;
};

/// Panels laid out left to right. Each series becomes one polyline, each band
/// one polygon; axes and ticks use plain lines. Output depends only on the
/// input values.
std::string render_svg(const std::vector<PlotPanel>& panels);

/// One panel per quantile level, one curve per (design, n, method) averaged
/// over seeds. Input columns as written by write_arc_csv.
std::string arc_svg(const CsvTable& arc);
/// Truth, posterior mean and 95% band from a write_fit_dump table.
std::string fit_svg(const CsvTable& dump);
/// Mean MSE against acquisitions, one curve per strategy.
std::string active_svg(const CsvTable& curve);

void plot_arc(const std::string& report_csv, const std::string& out_svg);
void plot_fit(const std::string& dump_csv, const std::string& out_svg);
void plot_active(const std::string& curve_csv, const std::string& out_svg);

}  // namespace dgp
