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

#include "dgp/active_learning.hpp"

#include <numeric>
#include <type_traits>

#include "dgp/random.hpp"

namespace dgp {

namespace {

constexpr std::uint64_t kRandomStream = 0xAC0;

IVHyperparams initial_hp(const IVDataset& d, const FitOptions& o) {
  IVHyperparams hp = default_iv_hyperparams(d);
  hp.eta = o.eta;
  return optimize_iv_hyperparams(d, hp, o.schedule).hyperparams;
}

ProxyHyperparams initial_hp(const ProxyDataset& d, const FitOptions& o) {
  ProxyHyperparams hp = default_proxy_hyperparams(d);
  hp.eta = o.eta;
  return optimize_proxy_hyperparams(d, hp, o.schedule).hyperparams;
}

auto fit_model(const IVDataset& d, const IVHyperparams& hp) { return fit_gpiv(d, hp); }
auto fit_model(const ProxyDataset& d, const ProxyHyperparams& hp) { return fit_gpproxy(d, hp); }

template <class Data>
AcquisitionRun run_loop(const Data& train, const Data& pool, const Matrix& test_grid,
                        const Vector& truth, const AcquisitionOptions& options) {
  train.validate();
  if (options.budget < 0) throw InputError("acquisition: negative budget");
  if (options.budget > pool.size()) {
    throw InputError("acquisition: budget exceeds pool size");
  }
  if (test_grid.rows() != truth.size()) throw InputError("acquisition: truth length mismatch");
  if (pool.x.cols() != train.x.cols()) throw InputError("acquisition: pool dimension mismatch");

  Standardizer s;
  if (options.fit.standardize) {
    s = Standardizer::fit(train);
    if (!options.fit.standardize_y) {
      s.y_mean = 0.0;
      s.y_scale = 1.0;
    }
  } else if constexpr (std::is_same_v<Data, ProxyDataset>) {
    s = Standardizer::identity(train.x.cols(), train.z.cols(), train.w.cols());
  } else {
    s = Standardizer::identity(train.x.cols(), train.z.cols());
  }
  const Data pool_s = s.apply(pool);
  const Matrix grid_s = s.apply_x(test_grid);
  Data current = s.apply(train);
  auto hp = initial_hp(current, options.fit);

  AcquisitionRun run;
  run.strategy = options.strategy;
  run.budget = options.budget;
  run.seed = options.seed;
  std::vector<Eigen::Index> remaining(static_cast<std::size_t>(pool.size()));
  std::iota(remaining.begin(), remaining.end(), Eigen::Index{0});
  Rng rng(derive_seed(options.seed, kRandomStream));

  for (int step = 0;; ++step) {
    if (options.reoptimize_each_step && step > 0) hp = initial_hp(current, options.fit);
    const auto model = fit_model(current, hp);
    const Vector mean = s.unscale_mean(model.posterior_mean(grid_s));
    run.curve.push_back({step, (mean - truth).squaredNorm() / static_cast<double>(truth.size())});
    if (step == options.budget) break;
    if (remaining.empty()) throw InputError("acquisition: pool exhausted before budget");

    std::size_t pick = 0;
    if (options.strategy == AcquisitionStrategy::random) {
      pick = static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(remaining.size()) - 1));
    } else {
      Matrix cand(static_cast<Eigen::Index>(remaining.size()), pool_s.x.cols());
      for (std::size_t k = 0; k < remaining.size(); ++k) {
        cand.row(static_cast<Eigen::Index>(k)) = pool_s.x.row(remaining[k]);
      }
      const Vector var = model.posterior_var(cand);
      for (std::size_t k = 1; k < remaining.size(); ++k) {
        if (var[static_cast<Eigen::Index>(k)] > var[static_cast<Eigen::Index>(pick)]) pick = k;
      }
    }
    const Eigen::Index chosen = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    run.acquired_pool_indices.push_back(chosen);
    const Eigen::Index one[] = {chosen};
    current = concat(current, select_rows(pool_s, one));
  }
  return run;
}

}  // namespace

std::string to_string(AcquisitionStrategy s) {
  return s == AcquisitionStrategy::random ? "random" : "max_variance";
}

AcquisitionStrategy parse_strategy(std::string_view name) {
  if (name == "max_variance") return AcquisitionStrategy::max_variance;
  if (name == "random") return AcquisitionStrategy::random;
  throw InputError("unknown acquisition strategy: " + std::string(name));
}

AcquisitionRun run_acquisition(const IVDataset& train, const IVDataset& pool,
                               const Matrix& test_grid, const Vector& truth,
                               const AcquisitionOptions& options) {
  return run_loop(train, pool, test_grid, truth, options);
}

AcquisitionRun run_acquisition(const ProxyDataset& train, const ProxyDataset& pool,
                               const Matrix& test_grid, const Vector& truth,
                               const AcquisitionOptions& options) {
  return run_loop(train, pool, test_grid, truth, options);
}

AcquisitionRun run_active_experiment(const ActiveExperiment& exp,
                                     const AcquisitionOptions& options) {
  const DesignSpec spec{exp.family, exp.n_train + exp.n_pool, exp.rho, options.seed};
  std::vector<Eigen::Index> head(static_cast<std::size_t>(exp.n_train));
  std::vector<Eigen::Index> tail(static_cast<std::size_t>(exp.n_pool));
  std::iota(head.begin(), head.end(), Eigen::Index{0});
  std::iota(tail.begin(), tail.end(), exp.n_train);
  AcquisitionOptions o = options;
  o.fit.standardize_y = default_standardize_y(exp.family);
  switch (exp.family) {
    case DesignFamily::iv_demand: {
      const IVDesign d = gen_iv_demand(spec);
      return run_acquisition(select_rows(d.data, head), select_rows(d.data, tail),
                             d.truth.test_grid, d.truth.on_grid(), o);
    }
    case DesignFamily::proxy_synthetic:
    case DesignFamily::proxy_demand: {
      const ProxyDesign d = exp.family == DesignFamily::proxy_synthetic ? gen_proxy_synthetic(spec)
                                                                        : gen_proxy_demand(spec);
      return run_acquisition(select_rows(d.data, head), select_rows(d.data, tail),
                             d.truth.test_grid, d.truth.on_grid(), o);
    }
    default: {
      const IVDesign d = gen_iv_synthetic(spec);
      return run_acquisition(select_rows(d.data, head), select_rows(d.data, tail),
                             d.truth.test_grid, d.truth.on_grid(), o);
    }
  }
}

}  // namespace dgp
