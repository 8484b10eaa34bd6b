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

#include "dgp/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace dgp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> list(const std::string& key, const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      cur = trim(cur);
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (out.empty()) throw InputError("config: empty list for '" + key + "'");
  return out;
}

template <class T>
T number(const std::string& key, const std::string& text) {
  T v{};
  const std::string t = trim(text);
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) {
    throw InputError("config: bad value '" + text + "' for '" + key + "'");
  }
  return v;
}

bool boolean(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "1" || t == "true" || t == "on" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "off" || t == "no") return false;
  throw InputError("config: bad boolean '" + text + "' for '" + key + "'");
}

}  // namespace

Settings read_settings(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ParseError("config: " + e.message(), static_cast<int>(e.line()));
  }
  Settings out;
  for (const auto& [key, node] : tree) {
    if (node.empty()) {
      out[key] = node.data();
      continue;
    }
    for (const auto& [sub, leaf] : node) out[sub] = leaf.data();
  }
  return out;
}

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  return read_settings(in);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "design", "method",    "n",       "seeds",         "root_seed",       "rho",
      "eta",    "quantiles", "n_boot",  "max_evaluations", "standardize_y", "out",
      "jobs",   "budget",    "n_train", "n_pool",        "strategy"};
  return keys;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text, std::uint64_t root_seed) {
  const std::string t = trim(text);
  std::vector<std::uint64_t> out;
  if (t.find(',') != std::string::npos) {
    for (const std::string& s : list("seeds", t)) out.push_back(number<std::uint64_t>("seeds", s));
  } else if (const auto dash = t.find('-'); dash != std::string::npos) {
    const auto lo = number<std::uint64_t>("seeds", t.substr(0, dash));
    const auto hi = number<std::uint64_t>("seeds", t.substr(dash + 1));
    if (hi < lo) throw InputError("config: empty seed range '" + t + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
  } else {
    const auto count = number<std::uint64_t>("seeds", t);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(root_seed + i);
  }
  if (out.empty()) throw InputError("config: no seeds");
  return out;
}

ExperimentConfig apply_settings(ExperimentConfig c, const Settings& settings) {
  const auto& keys = config_keys();
  for (const auto& [key, _] : settings) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError("config: unknown key '" + key + "'");
    }
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = settings.find(key);
    return it == settings.end() ? nullptr : &it->second;
  };
  if (auto v = get("design")) {
    c.designs.clear();
    for (const auto& s : list("design", *v)) c.designs.push_back(parse_family(s));
  }
  if (auto v = get("method")) {
    c.methods.clear();
    for (const auto& s : list("method", *v)) c.methods.push_back(parse_method(s));
  }
  if (auto v = get("n")) {
    c.sample_sizes.clear();
    for (const auto& s : list("n", *v)) c.sample_sizes.push_back(number<Eigen::Index>("n", s));
  }
  std::uint64_t root = 0;
  if (auto v = get("root_seed")) root = number<std::uint64_t>("root_seed", *v);
  if (auto v = get("seeds")) {
    c.seeds = parse_seeds(*v, root);
  } else if (get("root_seed") && !c.seeds.empty()) {
    const std::size_t count = c.seeds.size();
    c.seeds.clear();
    for (std::size_t i = 0; i < count; ++i) c.seeds.push_back(root + i);
  }
  if (auto v = get("rho")) c.rho = number<double>("rho", *v);
  if (auto v = get("eta")) c.eta = number<double>("eta", *v);
  if (auto v = get("quantiles")) {
    c.quantiles.clear();
    for (const auto& s : list("quantiles", *v)) c.quantiles.push_back(number<double>("quantiles", s));
  }
  if (auto v = get("n_boot")) c.n_boot = number<int>("n_boot", *v);
  if (auto v = get("max_evaluations")) c.max_evaluations = number<int>("max_evaluations", *v);
  if (auto v = get("standardize_y")) {
    if (trim(*v) == "auto") {
      c.standardize_y.reset();
    } else {
      c.standardize_y = boolean("standardize_y", *v);
    }
  }
  if (auto v = get("out")) c.output_dir = trim(*v);
  if (auto v = get("jobs")) c.jobs = number<int>("jobs", *v);
  if (auto v = get("budget")) c.budget = number<int>("budget", *v);
  if (auto v = get("n_train")) c.n_train = number<Eigen::Index>("n_train", *v);
  if (auto v = get("n_pool")) c.n_pool = number<Eigen::Index>("n_pool", *v);
  if (auto v = get("strategy")) {
    c.strategies.clear();
    for (const auto& s : list("strategy", *v)) c.strategies.push_back(parse_strategy(s));
  }
  return c;
}

void ExperimentConfig::validate(bool check_methods) const {
  if (designs.empty()) throw InputError("config: no design");
  if (sample_sizes.empty()) throw InputError("config: no sample size");
  if (seeds.empty()) throw InputError("config: no seeds");
  if (!(rho >= 0.0 && rho < 1.0)) throw InputError("config: rho must lie in [0, 1)");
  if (!(eta > 0.0)) throw InputError("config: eta must be positive");
  if (n_boot < 2) throw InputError("config: n_boot must be at least 2");
  if (max_evaluations < 1) throw InputError("config: max_evaluations must be positive");
  if (jobs < 0) throw InputError("config: jobs must be non-negative");
  for (Eigen::Index n : sample_sizes) {
    if (n < 2) throw InputError("config: sample sizes must be at least 2");
  }
  for (double q : quantiles) {
    if (!(q > 0.0 && q < 1.0)) throw InputError("config: quantiles must lie in (0, 1)");
  }
  if (!check_methods) return;
  if (methods.empty()) throw InputError("config: no method");
  for (DesignFamily d : designs) {
    for (Method m : methods) {
      if (!compatible(m, d)) {
        throw InputError("config: method " + to_string(m) + " does not apply to design " +
                         to_string(d));
      }
    }
  }
}

ReplicationOptions ExperimentConfig::replication_options() const {
  ReplicationOptions o;
  o.fit.eta = eta;
  o.fit.n_boot = n_boot;
  o.fit.schedule.max_evaluations = max_evaluations;
  o.standardize_y = standardize_y;
  o.rho = rho;
  o.quantiles = quantiles;
  return o;
}

}  // namespace dgp
