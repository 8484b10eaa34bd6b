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

#include "dgp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace dgp {

namespace {

constexpr double kPanelW = 360.0;
constexpr double kPanelH = 280.0;
constexpr double kLeft = 55.0, kRight = 15.0, kTop = 30.0, kBottom = 45.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Frame {
  double ox, x_min, x_max, y_min, y_max;
  double px(double x) const {
    const double span = x_max > x_min ? x_max - x_min : 1.0;
    return ox + kLeft + (x - x_min) / span * (kPanelW - kLeft - kRight);
  }
  double py(double y) const {
    const double span = y_max > y_min ? y_max - y_min : 1.0;
    return kTop + (1.0 - (y - y_min) / span) * (kPanelH - kTop - kBottom);
  }
};

void draw_panel(std::ostringstream& s, const PlotPanel& p, double ox) {
  const Frame f{ox, p.x_min, p.x_max, p.y_min, p.y_max};
  const double x0 = ox + kLeft, x1 = ox + kPanelW - kRight;
  const double y0 = kPanelH - kBottom, y1 = kTop;
  s << "<g>\n";
  s << "<text x=\"" << fmt(ox + kPanelW / 2) << "\" y=\"18\" text-anchor=\"middle\" "
    << "font-size=\"13\">" << escape(p.title) << "</text>\n";
  s << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\""
    << fmt(y0) << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x0) << "\" y2=\""
    << fmt(y1) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = p.x_min + (p.x_max - p.x_min) * i / 4.0;
    const double yv = p.y_min + (p.y_max - p.y_min) * i / 4.0;
    const double tx = f.px(xv), ty = f.py(yv);
    s << "<line x1=\"" << fmt(tx) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(tx)
      << "\" y2=\"" << fmt(y0 + 4) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt(tx) << "\" y=\"" << fmt(y0 + 16)
      << "\" text-anchor=\"middle\" font-size=\"10\">" << tick_label(xv) << "</text>\n";
    s << "<line x1=\"" << fmt(x0 - 4) << "\" y1=\"" << fmt(ty) << "\" x2=\"" << fmt(x0)
      << "\" y2=\"" << fmt(ty) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt(x0 - 7) << "\" y=\"" << fmt(ty + 3)
      << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(yv) << "</text>\n";
  }
  s << "<text x=\"" << fmt((x0 + x1) / 2) << "\" y=\"" << fmt(kPanelH - 8)
    << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(p.x_label) << "</text>\n";
  s << "<text x=\"" << fmt(ox + 12) << "\" y=\"" << fmt((y0 + y1) / 2)
    << "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 " << fmt(ox + 12)
    << ' ' << fmt((y0 + y1) / 2) << ")\">" << escape(p.y_label) << "</text>\n";

  for (const PlotBand& b : p.bands) {
    if (b.x.empty()) continue;
    s << "<polygon fill=\"#1f77b4\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < b.x.size(); ++i) {
      s << (i ? " " : "") << fmt(f.px(b.x[i])) << ',' << fmt(f.py(b.upper[i]));
    }
    for (std::size_t i = b.x.size(); i-- > 0;) {
      s << ' ' << fmt(f.px(b.x[i])) << ',' << fmt(f.py(b.lower[i]));
    }
    s << "\"/>\n";
  }
  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const PlotSeries& ser = p.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      s << (i ? " " : "") << fmt(f.px(ser.x[i])) << ',' << fmt(f.py(ser.y[i]));
    }
    s << "\"/>\n";
    const double ly = kTop + 12.0 + 13.0 * static_cast<double>(k);
    s << "<text x=\"" << fmt(x1 - 4) << "\" y=\"" << fmt(ly) << "\" text-anchor=\"end\" "
      << "font-size=\"10\" fill=\"" << color << "\">" << escape(ser.label) << "</text>\n";
  }
  s << "</g>\n";
}

void fit_range(const std::vector<std::vector<double>>& cols, double& lo, double& hi) {
  bool any = false;
  for (const auto& c : cols) {
    for (double v : c) {
      if (!std::isfinite(v)) continue;
      lo = any ? std::min(lo, v) : v;
      hi = any ? std::max(hi, v) : v;
      any = true;
    }
  }
  if (!any) {
    lo = 0.0;
    hi = 1.0;
  } else if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels) {
  const std::size_t count = std::max<std::size_t>(1, panels.size());
  const double width = kPanelW * static_cast<double>(count);
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\""
    << fmt(kPanelH) << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(kPanelH) << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (panels.empty()) {
    draw_panel(s, PlotPanel{}, 0.0);
  } else {
    for (std::size_t i = 0; i < panels.size(); ++i) {
      draw_panel(s, panels[i], kPanelW * static_cast<double>(i));
    }
  }
  s << "</svg>\n";
  return s.str();
}

std::string arc_svg(const CsvTable& arc) {
  const std::size_t c_design = arc.column("design"), c_n = arc.column("n"),
                    c_method = arc.column("method"), c_q = arc.column("quantile"),
                    c_r = arc.column("rejection_rate"), c_acc = arc.column("accuracy");
  using Key = std::tuple<std::string, std::string, std::string>;
  // quantile -> curve -> rate -> (sum, count)
  std::map<double, std::map<Key, std::map<double, std::pair<double, int>>>> acc;
  for (std::size_t i = 0; i < arc.rows.size(); ++i) {
    const double q = arc.number(i, c_q), r = arc.number(i, c_r), a = arc.number(i, c_acc);
    auto& cell = acc[q][Key{arc.rows[i][c_design], arc.rows[i][c_n], arc.rows[i][c_method]}][r];
    cell.first += a;
    cell.second += 1;
  }
  std::vector<PlotPanel> panels;
  for (const auto& [q, curves] : acc) {
    PlotPanel p;
    char title[48];
    std::snprintf(title, sizeof title, "quantile %.2f", q);
    p.title = title;
    p.x_label = "rejection rate";
    p.y_label = "accuracy";
    for (const auto& [key, rates] : curves) {
      PlotSeries ser;
      ser.label = std::get<0>(key) + " n=" + std::get<1>(key) + " " + std::get<2>(key);
      for (const auto& [r, sc] : rates) {
        ser.x.push_back(r);
        ser.y.push_back(sc.first / sc.second);
      }
      p.series.push_back(std::move(ser));
    }
    panels.push_back(std::move(p));
  }
  if (panels.empty()) {
    PlotPanel p;
    p.title = "accuracy-rejection";
    p.x_label = "rejection rate";
    p.y_label = "accuracy";
    panels.push_back(std::move(p));
  }
  return render_svg(panels);
}

std::string fit_svg(const CsvTable& dump) {
  const std::size_t cx = dump.column("x"), ct = dump.column("truth"), cm = dump.column("mean"),
                    cl = dump.column("lower"), cu = dump.column("upper");
  PlotSeries truth{"truth", {}, {}}, mean{"posterior mean", {}, {}};
  PlotBand band;
  for (std::size_t i = 0; i < dump.rows.size(); ++i) {
    const double x = dump.number(i, cx);
    truth.x.push_back(x);
    truth.y.push_back(dump.number(i, ct));
    mean.x.push_back(x);
    mean.y.push_back(dump.number(i, cm));
    band.x.push_back(x);
    band.lower.push_back(dump.number(i, cl));
    band.upper.push_back(dump.number(i, cu));
  }
  PlotPanel p;
  p.title = "posterior fit";
  p.x_label = "x";
  p.y_label = "f(x)";
  fit_range({truth.x}, p.x_min, p.x_max);
  fit_range({truth.y, mean.y, band.lower, band.upper}, p.y_min, p.y_max);
  if (!band.x.empty()) p.bands.push_back(std::move(band));
  if (!truth.x.empty()) {
    p.series.push_back(std::move(truth));
    p.series.push_back(std::move(mean));
  }
  return render_svg({p});
}

std::string active_svg(const CsvTable& curve) {
  const std::size_t cs = curve.column("step"), cst = curve.column("strategy"),
                    cm = curve.column("mse");
  std::map<std::string, std::map<double, std::pair<double, int>>> acc;
  for (std::size_t i = 0; i < curve.rows.size(); ++i) {
    auto& cell = acc[curve.rows[i][cst]][curve.number(i, cs)];
    cell.first += curve.number(i, cm);
    cell.second += 1;
  }
  PlotPanel p;
  p.title = "active acquisition";
  p.x_label = "acquired points";
  p.y_label = "test MSE";
  std::vector<double> xs, ys;
  for (const auto& [name, steps] : acc) {
    PlotSeries ser;
    ser.label = name;
    for (const auto& [step, sc] : steps) {
      ser.x.push_back(step);
      ser.y.push_back(sc.first / sc.second);
    }
    xs.insert(xs.end(), ser.x.begin(), ser.x.end());
    ys.insert(ys.end(), ser.y.begin(), ser.y.end());
    p.series.push_back(std::move(ser));
  }
  fit_range({xs}, p.x_min, p.x_max);
  ys.push_back(0.0);
  fit_range({ys}, p.y_min, p.y_max);
  return render_svg({p});
}

void plot_arc(const std::string& report_csv, const std::string& out_svg) {
  write_file(out_svg, arc_svg(read_csv_file(report_csv)));
}

void plot_fit(const std::string& dump_csv, const std::string& out_svg) {
  write_file(out_svg, fit_svg(read_csv_file(dump_csv)));
}

void plot_active(const std::string& curve_csv, const std::string& out_svg) {
  write_file(out_svg, active_svg(read_csv_file(curve_csv)));
}

}  // namespace dgp
