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

#include "dgp/pipeline.hpp"

#include <cmath>
#include <type_traits>

#include "dgp/operator_baselines.hpp"

namespace dgp {

namespace {

constexpr std::uint64_t kBootstrapStream = 0xB0075742;

ColumnScaler identity_scaler(Eigen::Index cols) {
  return ColumnScaler{Vector::Zero(cols), Vector::Ones(cols)};
}

template <class Data>
Standardizer make_standardizer(const Data& data, const FitOptions& options) {
  if (options.standardize) {
    Standardizer s = Standardizer::fit(data);
    if (!options.standardize_y) {
      s.y_mean = 0.0;
      s.y_scale = 1.0;
    }
    return s;
  }
  if constexpr (std::is_same_v<Data, ProxyDataset>) {
    return Standardizer::identity(data.x.cols(), data.z.cols(), data.w.cols());
  } else {
    return Standardizer::identity(data.x.cols(), data.z.cols());
  }
}

MethodPrediction finish(const Standardizer& s, Vector mean, Vector var, double sigma2,
                        const Lengthscales& l_x, int evaluations) {
  MethodPrediction out;
  out.mean = s.unscale_mean(mean);
  out.variance = s.unscale_variance(var);
  out.sigma2 = sigma2 * s.y_scale * s.y_scale;
  out.l_x = l_x.values();
  out.evaluations = evaluations;
  return out;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::gpiv: return "gpiv";
    case Method::gpproxy: return "gpproxy";
    case Method::div: return "div";
    case Method::dproxy: return "dproxy";
    case Method::gpiv_bootstrap: return "gpiv_bootstrap";
    case Method::gpproxy_bootstrap: return "gpproxy_bootstrap";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::gpiv, Method::gpproxy, Method::div, Method::dproxy,
                   Method::gpiv_bootstrap, Method::gpproxy_bootstrap}) {
    if (to_string(m) == name) return m;
  }
  throw InputError("unknown method: " + std::string(name));
}

bool is_iv(Method method) {
  return method == Method::gpiv || method == Method::div || method == Method::gpiv_bootstrap;
}

bool compatible(Method method, DesignFamily family) { return is_iv(method) == is_iv(family); }

ColumnScaler ColumnScaler::fit(const Matrix& m) {
  if (m.rows() < 2) throw InputError("scaler: need at least two rows");
  ColumnScaler s;
  s.mean = m.colwise().mean().transpose();
  s.scale.resize(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double var = (m.col(j).array() - s.mean[j]).square().sum() /
                       static_cast<double>(m.rows() - 1);
    const double sd = std::sqrt(var);
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Matrix ColumnScaler::apply(const Matrix& m) const {
  if (m.cols() != mean.size()) throw InputError("scaler: column count mismatch");
  return ((m.rowwise() - mean.transpose()).array().rowwise() / scale.transpose().array())
      .matrix();
}

Standardizer Standardizer::identity(Eigen::Index dx, Eigen::Index dz, Eigen::Index dw) {
  Standardizer s;
  s.x = identity_scaler(dx);
  s.z = identity_scaler(dz);
  s.w = identity_scaler(dw);
  return s;
}

Standardizer Standardizer::fit(const IVDataset& data) {
  data.validate();
  Standardizer s;
  s.x = ColumnScaler::fit(data.x);
  s.z = ColumnScaler::fit(data.z);
  const ColumnScaler ys = ColumnScaler::fit(Matrix(data.y));
  s.y_mean = ys.mean[0];
  s.y_scale = ys.scale[0];
  return s;
}

Standardizer Standardizer::fit(const ProxyDataset& data) {
  data.validate();
  Standardizer s;
  s.x = ColumnScaler::fit(data.x);
  s.z = ColumnScaler::fit(data.z);
  s.w = ColumnScaler::fit(data.w);
  const ColumnScaler ys = ColumnScaler::fit(Matrix(data.y));
  s.y_mean = ys.mean[0];
  s.y_scale = ys.scale[0];
  return s;
}

IVDataset Standardizer::apply(const IVDataset& data) const {
  return IVDataset{x.apply(data.x), ((data.y.array() - y_mean) / y_scale).matrix(),
                   z.apply(data.z)};
}

ProxyDataset Standardizer::apply(const ProxyDataset& data) const {
  return ProxyDataset{x.apply(data.x), ((data.y.array() - y_mean) / y_scale).matrix(),
                      z.apply(data.z), w.apply(data.w)};
}

Vector Standardizer::unscale_mean(const Vector& m) const {
  return (m.array() * y_scale + y_mean).matrix();
}

Vector Standardizer::unscale_variance(const Vector& v) const {
  return v * (y_scale * y_scale);
}

MethodPrediction fit_predict(Method method, const IVDataset& raw, const Matrix& x_test,
                             const FitOptions& options, std::uint64_t seed) {
  if (!is_iv(method)) throw InputError("method " + to_string(method) + " needs proxy data");
  raw.validate();
  const Standardizer s = make_standardizer(raw, options);
  const IVDataset data = s.apply(raw);
  const Matrix xt = s.apply_x(x_test);
  IVHyperparams init = default_iv_hyperparams(data);
  init.eta = options.eta;
  const IVOptimizationResult opt = optimize_iv_hyperparams(data, init, options.schedule);
  const IVHyperparams& hp = opt.hyperparams;
  const Eigen::Index m = x_test.rows();
  switch (method) {
    case Method::div:
      return finish(s, div_mean(data, hp, xt), Vector::Zero(m), hp.sigma2, hp.l_x,
                    opt.evaluations);
    case Method::gpiv_bootstrap: {
      const Vector mean = fit_gpiv(data, hp).posterior_mean(xt);
      const Vector var = bootstrap_variance(
          [](const IVDataset& d, const IVHyperparams& h, const Matrix& x) {
            return fit_gpiv(d, h).posterior_mean(x);
          },
          data, hp, xt, options.n_boot, derive_seed(seed, kBootstrapStream));
      return finish(s, mean, var, hp.sigma2, hp.l_x, opt.evaluations);
    }
    default: {
      const FittedGPIV model = fit_gpiv(data, hp);
      return finish(s, model.posterior_mean(xt), model.posterior_var(xt), hp.sigma2, hp.l_x,
                    opt.evaluations);
    }
  }
}

MethodPrediction fit_predict(Method method, const ProxyDataset& raw, const Matrix& x_test,
                             const FitOptions& options, std::uint64_t seed) {
  if (is_iv(method)) throw InputError("method " + to_string(method) + " needs IV data");
  raw.validate();
  const Standardizer s = make_standardizer(raw, options);
  const ProxyDataset data = s.apply(raw);
  const Matrix xt = s.apply_x(x_test);
  ProxyHyperparams init = default_proxy_hyperparams(data);
  init.eta = options.eta;
  const ProxyOptimizationResult opt = optimize_proxy_hyperparams(data, init, options.schedule);
  const ProxyHyperparams& hp = opt.hyperparams;
  const Eigen::Index m = x_test.rows();
  switch (method) {
    case Method::dproxy:
      return finish(s, dproxy_mean(data, hp, xt), Vector::Zero(m), hp.sigma2, hp.l_x,
                    opt.evaluations);
    case Method::gpproxy_bootstrap: {
      const Vector mean = fit_gpproxy(data, hp).posterior_mean(xt);
      const Vector var = bootstrap_variance(
          [](const ProxyDataset& d, const ProxyHyperparams& h, const Matrix& x) {
            return fit_gpproxy(d, h).posterior_mean(x);
          },
          data, hp, xt, options.n_boot, derive_seed(seed, kBootstrapStream));
      return finish(s, mean, var, hp.sigma2, hp.l_x, opt.evaluations);
    }
    default: {
      const FittedGPProxy model = fit_gpproxy(data, hp);
      return finish(s, model.posterior_mean(xt), model.posterior_var(xt), hp.sigma2, hp.l_x,
                    opt.evaluations);
    }
  }
}

bool default_standardize_y(DesignFamily family) {
  return family == DesignFamily::iv_demand || family == DesignFamily::proxy_demand;
}

ReplicationRecord run_replication(DesignFamily family, Eigen::Index n, Method method,
                                  std::uint64_t seed, const ReplicationOptions& options) {
  ReplicationRecord rec;
  rec.design = to_string(family);
  rec.n = n;
  rec.method = to_string(method);
  rec.seed = seed;
  try {
    if (!compatible(method, family)) {
      throw InputError("method " + rec.method + " does not apply to design " + rec.design);
    }
    const DesignSpec spec{family, n, options.rho, seed};
    FitOptions fit = options.fit;
    fit.standardize_y = options.standardize_y.value_or(default_standardize_y(family));
    MethodPrediction pred;
    GroundTruth truth;
    switch (family) {
      case DesignFamily::iv_demand: {
        IVDesign d = gen_iv_demand(spec);
        truth = std::move(d.truth);
        pred = fit_predict(method, d.data, truth.test_grid, fit, seed);
        break;
      }
      case DesignFamily::proxy_synthetic: {
        ProxyDesign d = gen_proxy_synthetic(spec);
        truth = std::move(d.truth);
        pred = fit_predict(method, d.data, truth.test_grid, fit, seed);
        break;
      }
      case DesignFamily::proxy_demand: {
        ProxyDesign d = gen_proxy_demand(spec);
        truth = std::move(d.truth);
        pred = fit_predict(method, d.data, truth.test_grid, fit, seed);
        break;
      }
      default: {
        IVDesign d = gen_iv_synthetic(spec);
        truth = std::move(d.truth);
        pred = fit_predict(method, d.data, truth.test_grid, fit, seed);
        break;
      }
    }
    const PredictionSet p = PredictionSet::make(pred.mean, pred.variance, truth.on_grid());
    rec.mse = mse(p);
    rec.nmse = normalized_mse(p);
    rec.coverage = coverage95(p);
    for (double q : options.quantiles) {
      const ArcCurve c = delta_arc(p, q, options.rejection_grid);
      rec.auc.push_back(auc_arc(c));
      for (std::size_t i = 0; i < c.rejection_rates.size(); ++i) {
        rec.arc.push_back({q, c.rejection_rates[i], c.accuracies[i]});
      }
    }
    rec.sigma2 = pred.sigma2;
    rec.ok = true;
  } catch (const Error& e) {
    rec.ok = false;
    rec.error = e.what();
    rec.auc.assign(options.quantiles.size(), 0.0);
    rec.arc.clear();
  }
  return rec;
}

}  // namespace dgp
