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

#include "dgp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "dgp/random.hpp"

namespace dgp {

namespace {

constexpr double kPi = std::numbers::pi;

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

double iv_function(DesignFamily family, double x) {
  switch (family) {
    case DesignFamily::iv_sine:
      return 2.0 * std::sin(2.0 * kPi * x);
    case DesignFamily::iv_log:
      return std::log(std::abs(16.0 * x - 8.0) + 1.0) * sgn(x - 0.5);
    case DesignFamily::iv_linear:
      return 4.0 * x - 2.0;
    default:
      throw InputError("not a synthetic IV family: " + to_string(family));
  }
}

double demand_f(double p, double t, double s) {
  return 100.0 + s * (10.0 + p) * demand_h(t) - 2.0 * p;
}

Matrix column(const Vector& v) { return Matrix(v); }

// E cos c(U) and E sin c(U) for c(U) = 2(0.3 U1 + 0.3 U2 + 0.2).
struct SyntheticMoments {
  double mean_cos = 0.0;
  double mean_sin = 0.0;
};

void draw_synthetic_u(Rng& rng, double& u1, double& u2) {
  u2 = rng.uniform(-1.0, 2.0);
  u1 = rng.uniform() - ((u2 >= 0.0 && u2 <= 1.0) ? 1.0 : 0.0);
}

SyntheticMoments synthetic_moments(std::uint64_t seed, std::size_t draws) {
  Rng rng(seed);
  double sc = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    double u1, u2;
    draw_synthetic_u(rng, u1, u2);
    const double c = 2.0 * (0.3 * u1 + 0.3 * u2 + 0.2);
    sc += std::cos(c);
    ss += std::sin(c);
  }
  const double d = static_cast<double>(draws);
  return {sc / d, ss / d};
}

const SyntheticMoments& default_synthetic_moments() {
  static const SyntheticMoments m = synthetic_moments(kTruthSeed, kTruthDraws);
  return m;
}

double synthetic_truth(const SyntheticMoments& m, double x) {
  return 3.0 * (m.mean_cos * std::cos(1.5 * x) - m.mean_sin * std::sin(1.5 * x));
}

// Sorted exp(W_i / 10) with prefix sums, plus E g(U).
struct DemandTable {
  std::vector<double> e;
  std::vector<double> prefix;
  double mean_g = 0.0;

  double operator()(double x) const {
    // min(e_i exp(-x/10), 2) = 2 exactly when e_i >= 2 exp(x/10)
    const double t = 2.0 * std::exp(x / 10.0);
    const auto k = static_cast<std::size_t>(std::lower_bound(e.begin(), e.end(), t) - e.begin());
    const double n = static_cast<double>(e.size());
    const double s = std::exp(-x / 10.0) * prefix[k] + 2.0 * static_cast<double>(e.size() - k);
    return x * s / n - 5.0 * mean_g;
  }
};

DemandTable demand_table(std::uint64_t seed, std::size_t draws) {
  Rng rng(seed);
  DemandTable tab;
  tab.e.resize(draws);
  double sg = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double u = rng.uniform(0.0, 10.0);
    const double g = demand_h(u);
    const double w = 7.0 * g + 45.0 + rng.normal();
    tab.e[i] = std::exp(w / 10.0);
    sg += g;
  }
  tab.mean_g = sg / static_cast<double>(draws);
  std::sort(tab.e.begin(), tab.e.end());
  tab.prefix.assign(draws + 1, 0.0);
  for (std::size_t i = 0; i < draws; ++i) tab.prefix[i + 1] = tab.prefix[i] + tab.e[i];
  return tab;
}

const DemandTable& default_demand_table() {
  static const DemandTable t = demand_table(kTruthSeed, kTruthDraws);
  return t;
}

void header(std::ostream& out, const char* name, Eigen::Index cols, bool& first) {
  for (Eigen::Index j = 0; j < cols; ++j) {
    out << (first ? "" : ",") << name << (j + 1);
    first = false;
  }
}

void row(std::ostream& out, const Matrix& m, Eigen::Index i, bool& first) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    out << (first ? "" : ",") << m(i, j);
    first = false;
  }
}

}  // namespace

std::string to_string(DesignFamily family) {
  switch (family) {
    case DesignFamily::iv_sine: return "iv_sine";
    case DesignFamily::iv_log: return "iv_log";
    case DesignFamily::iv_linear: return "iv_linear";
    case DesignFamily::iv_demand: return "iv_demand";
    case DesignFamily::proxy_synthetic: return "proxy_synthetic";
    case DesignFamily::proxy_demand: return "proxy_demand";
  }
  return "unknown";
}

DesignFamily parse_family(std::string_view name) {
  for (DesignFamily f : {DesignFamily::iv_sine, DesignFamily::iv_log, DesignFamily::iv_linear,
                         DesignFamily::iv_demand, DesignFamily::proxy_synthetic,
                         DesignFamily::proxy_demand}) {
    if (to_string(f) == name) return f;
  }
  throw InputError("unknown design family: " + std::string(name));
}

bool is_iv(DesignFamily family) {
  return family == DesignFamily::iv_sine || family == DesignFamily::iv_log ||
         family == DesignFamily::iv_linear || family == DesignFamily::iv_demand;
}

void DesignSpec::validate() const {
  if (n < 2) throw InputError("design: n must be at least 2");
  if (!(rho >= 0.0 && rho < 1.0)) throw InputError("design: rho must lie in [0, 1)");
}

Vector GroundTruth::at(const Matrix& x) const {
  Vector out(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out[i] = evaluate(x.row(i).transpose());
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double demand_h(double t) {
  const double d = t - 5.0;
  return 2.0 * (d * d * d * d / 600.0 + std::exp(-4.0 * d * d) + t / 10.0 - 2.0);
}

Vector linspace(double lo, double hi, Eigen::Index count) {
  if (count < 1) throw InputError("linspace: count must be positive");
  Vector v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (Eigen::Index i = 0; i < count; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  v[count - 1] = hi;
  return v;
}

double proxy_synthetic_truth(double x, std::uint64_t mc_seed, std::size_t draws) {
  if (draws == 0) throw InputError("proxy truth: draws must be positive");
  if (mc_seed == kTruthSeed && draws == kTruthDraws) {
    return synthetic_truth(default_synthetic_moments(), x);
  }
  return synthetic_truth(synthetic_moments(mc_seed, draws), x);
}

double proxy_demand_truth(double x, std::uint64_t mc_seed, std::size_t draws) {
  if (draws == 0) throw InputError("proxy truth: draws must be positive");
  if (mc_seed == kTruthSeed && draws == kTruthDraws) return default_demand_table()(x);
  return demand_table(mc_seed, draws)(x);
}

GroundTruth ground_truth(DesignFamily family) {
  GroundTruth gt;
  switch (family) {
    case DesignFamily::iv_sine:
    case DesignFamily::iv_log:
    case DesignFamily::iv_linear:
      gt.evaluate = [family](const Vector& x) { return iv_function(family, x[0]); };
      gt.test_grid = column(linspace(0.0, 1.0, 200));
      break;
    case DesignFamily::iv_demand: {
      gt.evaluate = [](const Vector& x) { return demand_f(x[0], x[1], x[2]); };
      const Vector p = linspace(2.5, 27.5, 30);
      const Vector t = linspace(0.0, 10.0, 20);
      gt.test_grid.resize(30 * 20 * 7, 3);
      Eigen::Index k = 0;
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        for (Eigen::Index j = 0; j < t.size(); ++j) {
          for (int s = 1; s <= 7; ++s) {
            gt.test_grid.row(k++) << p[i], t[j], static_cast<double>(s);
          }
        }
      }
      break;
    }
    case DesignFamily::proxy_synthetic: {
      const SyntheticMoments m = default_synthetic_moments();
      gt.evaluate = [m](const Vector& x) { return synthetic_truth(m, x[0]); };
      gt.test_grid = column(linspace(-2.0, 4.0, 300));
      break;
    }
    case DesignFamily::proxy_demand: {
      const DemandTable* tab = &default_demand_table();
      gt.evaluate = [tab](const Vector& x) { return (*tab)(x[0]); };
      gt.test_grid = column(linspace(10.0, 40.0, 300));
      break;
    }
  }
  return gt;
}

IVDesign gen_iv_synthetic(const DesignSpec& spec) {
  spec.validate();
  if (spec.family != DesignFamily::iv_sine && spec.family != DesignFamily::iv_log &&
      spec.family != DesignFamily::iv_linear) {
    throw InputError("gen_iv_synthetic: unsupported family " + to_string(spec.family));
  }
  Rng rng(spec.seed);
  const Eigen::Index n = spec.n;
  IVDataset d{Matrix(n, 1), Vector(n), Matrix(n, 1)};
  const double tail = std::sqrt(1.0 - spec.rho * spec.rho);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = rng.normal();
    const double w = rng.normal();
    const double e = spec.rho * v + tail * rng.normal();
    const double x = normal_cdf((w + v) / 2.0);
    d.x(i, 0) = x;
    d.z(i, 0) = normal_cdf(w);
    d.y[i] = iv_function(spec.family, x) + e;
  }
  return {std::move(d), ground_truth(spec.family)};
}

IVDesign gen_iv_demand(const DesignSpec& spec) {
  spec.validate();
  if (spec.family != DesignFamily::iv_demand) {
    throw InputError("gen_iv_demand: unsupported family " + to_string(spec.family));
  }
  Rng rng(spec.seed);
  const Eigen::Index n = spec.n;
  IVDataset d{Matrix(n, 3), Vector(n), Matrix(n, 3)};
  const double tail = std::sqrt(1.0 - spec.rho * spec.rho);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = static_cast<double>(rng.uniform_int(1, 7));
    const double t = rng.uniform(0.0, 10.0);
    const double c = rng.normal();
    const double v = rng.normal();
    const double eps = spec.rho * v + tail * rng.normal();
    const double p = 25.0 + (c + 3.0) * demand_h(t) + v;
    d.x.row(i) << p, t, s;
    d.z.row(i) << c, t, s;
    d.y[i] = demand_f(p, t, s) + eps;
  }
  return {std::move(d), ground_truth(spec.family)};
}

ProxyDesign gen_proxy_synthetic(const DesignSpec& spec) {
  spec.validate();
  if (spec.family != DesignFamily::proxy_synthetic) {
    throw InputError("gen_proxy_synthetic: unsupported family " + to_string(spec.family));
  }
  Rng rng(spec.seed);
  const Eigen::Index n = spec.n;
  ProxyDataset d{Matrix(n, 1), Vector(n), Matrix(n, 2), Matrix(n, 2)};
  for (Eigen::Index i = 0; i < n; ++i) {
    double u1, u2;
    draw_synthetic_u(rng, u1, u2);
    d.w.row(i) << u1 + rng.uniform(-1.0, 1.0), u2 + rng.normal();
    d.z.row(i) << u1 + rng.normal(), u2 + rng.uniform(-1.0, 1.0);
    const double x = u2 + rng.normal();
    d.x(i, 0) = x;
    d.y[i] = 3.0 * std::cos(2.0 * (0.3 * u1 + 0.3 * u2 + 0.2) + 1.5 * x) + rng.normal();
  }
  return {std::move(d), ground_truth(spec.family)};
}

ProxyDesign gen_proxy_demand(const DesignSpec& spec) {
  spec.validate();
  if (spec.family != DesignFamily::proxy_demand) {
    throw InputError("gen_proxy_demand: unsupported family " + to_string(spec.family));
  }
  Rng rng(spec.seed);
  const Eigen::Index n = spec.n;
  ProxyDataset d{Matrix(n, 1), Vector(n), Matrix(n, 2), Matrix(n, 1)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = rng.uniform(0.0, 10.0);
    const double g = demand_h(u);
    const double z1 = 2.0 * std::sin(2.0 * kPi * u / 10.0) + rng.normal();
    const double z2 = 2.0 * std::cos(2.0 * kPi * u / 10.0) + rng.normal();
    const double w = 7.0 * g + 45.0 + rng.normal();
    const double x = 35.0 + (z1 + 3.0) * g + z2 + rng.normal();
    d.z.row(i) << z1, z2;
    d.w(i, 0) = w;
    d.x(i, 0) = x;
    d.y[i] = x * std::min(std::exp((w - x) / 10.0), 2.0) - 5.0 * g + rng.normal();
  }
  return {std::move(d), ground_truth(spec.family)};
}

void write_csv(std::ostream& out, const IVDataset& data) {
  const auto old_precision = out.precision(17);
  bool first = true;
  header(out, "x", data.x.cols(), first);
  out << ",y";
  header(out, "z", data.z.cols(), first);
  out << '\n';
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    first = true;
    row(out, data.x, i, first);
    out << ',' << data.y[i];
    row(out, data.z, i, first);
    out << '\n';
  }
  out.precision(old_precision);
}

void write_csv(std::ostream& out, const ProxyDataset& data) {
  const auto old_precision = out.precision(17);
  bool first = true;
  header(out, "x", data.x.cols(), first);
  out << ",y";
  header(out, "z", data.z.cols(), first);
  header(out, "w", data.w.cols(), first);
  out << '\n';
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    first = true;
    row(out, data.x, i, first);
    out << ',' << data.y[i];
    row(out, data.z, i, first);
    row(out, data.w, i, first);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace dgp
