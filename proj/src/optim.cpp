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

#include "dgp/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace dgp {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

class CountingObjective {
 public:
  CountingObjective(const std::function<double(const Vector&)>& f, int budget)
      : f_(f), budget_(budget) {}

  bool exhausted() const { return evaluations_ >= budget_; }
  int evaluations() const { return evaluations_; }
  const Vector& best_point() const { return best_point_; }
  double best_value() const { return best_value_; }

  double operator()(const Vector& x) {
    ++evaluations_;
    double value = std::numeric_limits<double>::infinity();
    try {
      value = f_(x);
    } catch (const Error&) {
      value = std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
    if (value < best_value_ || best_point_.size() == 0) {
      if (value < best_value_) best_value_ = value;
      best_point_ = x;
    }
    return value;
  }

 private:
  const std::function<double(const Vector&)>& f_;
  int budget_;
  int evaluations_ = 0;
  Vector best_point_;
  double best_value_ = std::numeric_limits<double>::infinity();
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& objective,
                             const Vector& start,
                             const NelderMeadOptions& options) {
  if (start.size() == 0) throw InputError("nelder_mead: empty start point");
  if (options.max_evaluations < 1) {
    throw InputError("nelder_mead: evaluation budget must be at least 1");
  }
  const Eigen::Index dim = start.size();
  CountingObjective f(objective, options.max_evaluations);

  std::vector<Vector> simplex;
  std::vector<double> values;
  simplex.push_back(start);
  values.push_back(f(start));
  for (Eigen::Index i = 0; i < dim && !f.exhausted(); ++i) {
    Vector v = start;
    v[i] += options.initial_step;
    simplex.push_back(v);
    values.push_back(f(v));
  }

  bool converged = false;
  std::vector<size_t> order(simplex.size());
  while (simplex.size() == static_cast<size_t>(dim + 1) && !f.exhausted()) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second_worst = order[order.size() - 2];
    if (std::isfinite(values[worst]) &&
        values[worst] - values[best] <= options.f_tolerance) {
      converged = true;
      break;
    }

    Vector centroid = Vector::Zero(dim);
    for (size_t k = 0; k + 1 < order.size(); ++k) centroid += simplex[order[k]];
    centroid /= static_cast<double>(dim);

    const Vector reflected = centroid + kReflect * (centroid - simplex[worst]);
    const double f_reflected = f(reflected);
    if (f_reflected < values[best]) {
      if (f.exhausted()) {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
        break;
      }
      const Vector expanded = centroid + kExpand * (reflected - centroid);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    if (f.exhausted()) break;

    // Outside contraction when the reflection improved on the worst vertex,
    // inside contraction otherwise.
    const bool outside = f_reflected < values[worst];
    const Vector contracted =
        outside ? Vector(centroid + kContract * (reflected - centroid))
                : Vector(centroid + kContract * (simplex[worst] - centroid));
    const double f_contracted = f(contracted);
    if (f_contracted < std::min(f_reflected, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }

    for (size_t k = 1; k < order.size() && !f.exhausted(); ++k) {
      const size_t idx = order[k];
      simplex[idx] = simplex[best] + kShrink * (simplex[idx] - simplex[best]);
      values[idx] = f(simplex[idx]);
    }
  }

  if (!std::isfinite(f.best_value())) {
    throw OptimizationError("nelder_mead: every objective evaluation failed");
  }
  return NelderMeadResult{f.best_point(), f.best_value(), f.evaluations(),
                          converged};
}

}  // namespace dgp
