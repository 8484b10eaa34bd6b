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
#include <vector>

#include "dgp/active_learning.hpp"
#include "dgp/pipeline.hpp"

namespace dgp {

/// Parsed comma-separated file. Fields may not contain commas or quotes.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> row_lines;  // 1-based source line of each row

  /// Column index of `name`; ParseError if absent.
  std::size_t column(const std::string& name) const;
  /// Field parsed as a double; ParseError with the row's line on failure.
  double number(std::size_t row, std::size_t col) const;
};

/// Throws ParseError (with line number) on a missing header or a row whose
/// field count differs from the header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Shortest round-trip text for a double.
std::string format_number(double v);

/// design,n,method,seed,status,mse,nmse,coverage,auc_<q>...,sigma2,error
void write_records_csv(std::ostream& out, const std::vector<ReplicationRecord>& records,
                       const std::vector<double>& quantiles);
/// design,n,method,seed,quantile,rejection_rate,accuracy
void write_arc_csv(std::ostream& out, const std::vector<ReplicationRecord>& records);
/// Mean and standard error per (design, n, method) over successful rows.
void write_summary_json(std::ostream& out, const std::vector<ReplicationRecord>& records,
                        const std::vector<double>& quantiles);

/// step,strategy,seed,mse
void write_curve_header(std::ostream& out);
void write_curve_rows(std::ostream& out, const AcquisitionRun& run);

/// x,truth,mean,lower,upper with a 95% band.
void write_fit_dump(std::ostream& out, const Vector& x, const Vector& truth, const Vector& mean,
                    const Vector& variance);

}  // namespace dgp
