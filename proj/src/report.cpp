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

#include "dgp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace dgp {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  }
  return s;
}

std::string quantile_label(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "auc_%.2f", q);
  return buf;
}

struct Stat {
  double sum = 0.0, sum_sq = 0.0;
  int count = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  nlohmann::json to_json() const {
    nlohmann::json j;
    if (count == 0) {
      j["mean"] = nullptr;
      j["se"] = nullptr;
      return j;
    }
    const double mean = sum / count;
    double se = 0.0;
    if (count > 1) {
      const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1));
      se = std::sqrt(var / count);
    }
    j["mean"] = mean;
    j["se"] = se;
    return j;
  }
};

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ParseError("missing column '" + name + "'", 1);
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string& f = rows.at(row).at(col);
  double v = 0.0;
  const char* end = f.data() + f.size();
  const auto [ptr, ec] = std::from_chars(f.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    const std::string name = col < header.size() ? header[col] : std::to_string(col);
    throw ParseError("bad number '" + f + "' in column " + name, row_lines.at(row));
  }
  return v;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    std::vector<std::string> f = split(line);
    if (f.size() != t.header.size()) {
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, found " +
                           std::to_string(f.size()),
                       lineno);
    }
    t.rows.push_back(std::move(f));
    t.row_lines.push_back(lineno);
  }
  if (t.header.empty()) throw ParseError("missing header row", lineno > 0 ? lineno : 1);
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_csv(in);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_records_csv(std::ostream& out, const std::vector<ReplicationRecord>& records,
                       const std::vector<double>& quantiles) {
  out << "design,n,method,seed,status,mse,nmse,coverage";
  for (double q : quantiles) out << ',' << quantile_label(q);
  out << ",sigma2,error\n";
  for (const ReplicationRecord& r : records) {
    out << r.design << ',' << r.n << ',' << r.method << ',' << r.seed << ','
        << (r.ok ? "ok" : "failed");
    if (r.ok) {
      out << ',' << format_number(r.mse) << ',' << format_number(r.nmse) << ','
          << format_number(r.coverage);
      for (std::size_t i = 0; i < quantiles.size(); ++i) {
        out << ',' << (i < r.auc.size() ? format_number(r.auc[i]) : "");
      }
      out << ',' << format_number(r.sigma2) << ",\n";
    } else {
      out << ",,,";
      for (std::size_t i = 0; i < quantiles.size(); ++i) out << ',';
      out << ",," << sanitize(r.error) << '\n';
    }
  }
}

void write_arc_csv(std::ostream& out, const std::vector<ReplicationRecord>& records) {
  out << "design,n,method,seed,quantile,rejection_rate,accuracy\n";
  for (const ReplicationRecord& r : records) {
    for (const ArcPoint& p : r.arc) {
      out << r.design << ',' << r.n << ',' << r.method << ',' << r.seed << ','
          << format_number(p.quantile) << ',' << format_number(p.rejection_rate) << ','
          << format_number(p.accuracy) << '\n';
    }
  }
}

void write_summary_json(std::ostream& out, const std::vector<ReplicationRecord>& records,
                        const std::vector<double>& quantiles) {
  struct Group {
    Stat mse, nmse, coverage;
    std::vector<Stat> auc;
    int failures = 0;
  };
  std::map<std::tuple<std::string, Eigen::Index, std::string>, Group> groups;
  for (const ReplicationRecord& r : records) {
    Group& g = groups[{r.design, r.n, r.method}];
    g.auc.resize(quantiles.size());
    if (!r.ok) {
      ++g.failures;
      continue;
    }
    g.mse.add(r.mse);
    g.nmse.add(r.nmse);
    g.coverage.add(r.coverage);
    for (std::size_t i = 0; i < quantiles.size() && i < r.auc.size(); ++i) g.auc[i].add(r.auc[i]);
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [key, g] : groups) {
    nlohmann::json j;
    j["design"] = std::get<0>(key);
    j["n"] = std::get<1>(key);
    j["method"] = std::get<2>(key);
    j["replications"] = g.mse.count;
    j["failures"] = g.failures;
    j["mse"] = g.mse.to_json();
    j["nmse"] = g.nmse.to_json();
    j["coverage"] = g.coverage.to_json();
    for (std::size_t i = 0; i < quantiles.size(); ++i) {
      j[quantile_label(quantiles[i])] = g.auc[i].to_json();
    }
    arr.push_back(std::move(j));
  }
  out << nlohmann::json{{"groups", arr}}.dump(2) << '\n';
}

void write_curve_header(std::ostream& out) { out << "step,strategy,seed,mse\n"; }

void write_curve_rows(std::ostream& out, const AcquisitionRun& run) {
  for (const CurvePoint& p : run.curve) {
    out << p.acquired << ',' << to_string(run.strategy) << ',' << run.seed << ','
        << format_number(p.mse) << '\n';
  }
}

void write_fit_dump(std::ostream& out, const Vector& x, const Vector& truth, const Vector& mean,
                    const Vector& variance) {
  if (x.size() != truth.size() || x.size() != mean.size() || x.size() != variance.size()) {
    throw InputError("fit dump: lengths differ");
  }
  out << "x,truth,mean,lower,upper\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double sd = std::sqrt(std::max(0.0, variance[i]));
    out << format_number(x[i]) << ',' << format_number(truth[i]) << ','
        << format_number(mean[i]) << ',' << format_number(mean[i] - kZ975 * sd) << ','
        << format_number(mean[i] + kZ975 * sd) << '\n';
  }
}

}  // namespace dgp
