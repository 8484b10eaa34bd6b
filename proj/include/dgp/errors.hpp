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

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dgp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape or dimension mismatch, empty input, malformed arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// Hyperparameter outside its admissible domain (non-positive lengthscale, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Inputs that carry no usable spread, e.g. all points identical.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Cholesky failed even at the largest jitter on the escalation ladder.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

// Frequentist operator estimator could not solve its second-stage system.
class EstimationError : public Error {
 public:
  using Error::Error;
};

class OptimizationError : public Error {
 public:
  using Error::Error;
};

class BootstrapError : public Error {
 public:
  using Error::Error;
};

// Statistical test could not be carried out (too few non-zero differences).
class StatTestError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace dgp
