#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "secucost/aggregation.hpp"
#include "secucost/normalisation.hpp"
#include "secucost/rng.hpp"
#include "secucost/simulation.hpp"
#include "secucost/types.hpp"

namespace secucost {

using ordered_json = nlohmann::ordered_json;

/// Everything a run of the tool needs: metric declarations with their
/// bounds, the normalisation range, workloads, MT0 classes per workload and
/// component, and the simulation profile.
struct Config {
  std::uint64_t seed = 1;
  NormalisationRange range;
  StdDevKind std_dev = StdDevKind::sample;
  std::vector<MetricSpec> metrics;
  std::vector<WorkloadSpec> workloads;  // seeds derived from `seed`
  std::map<std::string, std::map<std::string, ComplexityClass>> complexity;  // workload -> component -> class
  SimProfile profile;

  const MetricSpec* find_metric(const std::string& name) const {
    for (const auto& m : metrics)
      if (m.name == name) return &m;
    return nullptr;
  }

  /// First declared metric of each type is the one the simulator records.
  SimMetrics sim_metrics() const {
    SimMetrics out{std::nullopt, std::nullopt, std::nullopt};
    for (const auto& m : metrics) {
      if (m.metric_type == MetricType::MT1 && !out.duration) out.duration = m;
      if (m.metric_type == MetricType::MT2 && !out.cpu) out.cpu = m;
      if (m.metric_type == MetricType::MT3 && !out.power) out.power = m;
    }
    return out;
  }

  /// Re-derives every workload seed from the global seed.
  void set_seed(std::uint64_t s) {
    seed = s;
    for (auto& w : workloads) w.seed = derive_workload_seed(seed, w.id);
  }

  std::map<std::string, ComplexityClass> complexity_for(const std::string& workload_id) const {
    if (auto it = complexity.find(workload_id); it != complexity.end()) return it->second;
    return {};
  }
};

namespace detail {

inline const ordered_json& require(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw config_error(where + ": missing '" + key + "'");
  return j.at(key);
}

inline double require_number(const ordered_json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_number()) throw config_error(where + "." + key + ": expected a number");
  return v.get<double>();
}

inline double number_or(const ordered_json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return require_number(j, key, where);
}

inline std::string require_string(const ordered_json& j, const char* key, const std::string& where) {
  const auto& v = require(j, key, where);
  if (!v.is_string()) throw config_error(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline std::size_t count_or(const ordered_json& j, const char* key, std::size_t fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw config_error(where + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

inline TaskProfile parse_task_profile(const ordered_json& j, const std::string& where) {
  TaskProfile p;
  p.component = require_string(j, "component", where);
  p.base_ms = require_number(j, "base_ms", where);
  p.jitter = number_or(j, "jitter", 0.0, where);
  p.cpu_mean = require_number(j, "cpu_mean", where);
  p.cpu_spread = number_or(j, "cpu_spread", 0.0, where);
  p.power_mw = require_number(j, "power_mw", where);
  return p;
}

}  // namespace detail

/// Parses a config document. Throws config_error on any structural problem;
/// profile completeness is checked separately (check_profile).
inline Config parse_config(const ordered_json& root) {
  using namespace detail;
  if (!root.is_object()) throw config_error("config: top level must be an object");
  Config cfg;

  if (root.contains("seed")) {
    const auto& s = root.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      throw config_error("config.seed: expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  if (root.contains("range")) {
    const auto& r = root.at("range");
    double a = require_number(r, "a", "config.range");
    double b = require_number(r, "b", "config.range");
    if (!(a < b)) throw config_error("config.range: a must be < b");
    cfg.range = NormalisationRange(a, b);
  }

  if (root.contains("std_dev")) {
    auto s = require_string(root, "std_dev", "config");
    if (s == "sample")
      cfg.std_dev = StdDevKind::sample;
    else if (s == "population")
      cfg.std_dev = StdDevKind::population;
    else
      throw config_error("config.std_dev: expected 'sample' or 'population'");
  }

  const auto& metrics = require(root, "metrics", "config");
  if (!metrics.is_array() || metrics.empty()) throw config_error("config.metrics: expected a non-empty array");
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const std::string where = "config.metrics[" + std::to_string(i) + "]";
    MetricSpec m;
    m.name = require_string(metrics[i], "name", where);
    auto type = parse_metric_type(require_string(metrics[i], "type", where));
    if (!type) throw config_error(where + ".type: expected MT0..MT3");
    m.metric_type = *type;
    m.unit = metrics[i].contains("unit") ? require_string(metrics[i], "unit", where) : "";
    if (m.has_bounds()) {
      auto defaults = default_metric(m.metric_type);
      m.min_bound = number_or(metrics[i], "min", defaults.min_bound, where);
      m.max_bound = number_or(metrics[i], "max", defaults.max_bound, where);
      if (!(m.min_bound < m.max_bound)) throw config_error(where + ": min must be < max");
    }
    if (cfg.find_metric(m.name)) throw config_error(where + ": duplicate metric name '" + m.name + "'");
    cfg.metrics.push_back(std::move(m));
  }

  if (root.contains("workloads")) {
    const auto& wls = root.at("workloads");
    if (!wls.is_array()) throw config_error("config.workloads: expected an array");
    for (std::size_t i = 0; i < wls.size(); ++i) {
      const std::string where = "config.workloads[" + std::to_string(i) + "]";
      WorkloadSpec w;
      w.id = require_string(wls[i], "id", where);
      auto uc = parse_use_case(require_string(wls[i], "use_case", where));
      if (!uc) throw config_error(where + ".use_case: expected UC1 or UC2");
      w.use_case = *uc;
      auto proto = parse_protocol(require_string(wls[i], "protocol", where));
      if (!proto) throw config_error(where + ".protocol: expected secure or insecure");
      w.protocol = *proto;
      w.runs_below = count_or(wls[i], "runs_below", 25, where);
      w.runs_above = count_or(wls[i], "runs_above", 25, where);
      for (const auto& other : cfg.workloads)
        if (other.id == w.id) throw config_error(where + ": duplicate workload id '" + w.id + "'");
      cfg.workloads.push_back(std::move(w));
    }
  }

  if (root.contains("complexity")) {
    const auto& cx = root.at("complexity");
    if (!cx.is_object()) throw config_error("config.complexity: expected an object");
    for (const auto& [wl, comps] : cx.items()) {
      if (!comps.is_object()) throw config_error("config.complexity." + wl + ": expected an object");
      for (const auto& [comp, cls] : comps.items()) {
        auto parsed = cls.is_string() ? parse_complexity_class(cls.get<std::string>()) : std::nullopt;
        if (!parsed) throw config_error("config.complexity." + wl + "." + comp + ": unknown complexity class");
        cfg.complexity[wl][comp] = *parsed;
      }
    }
  }

  if (root.contains("profile")) {
    const auto& p = root.at("profile");
    const std::string where = "config.profile";
    cfg.profile.sample_interval_ms = number_or(p, "sample_interval_ms", 5.0, where);
    cfg.profile.tls_overhead_ms = number_or(p, "tls_overhead_ms", 0.0, where);
    cfg.profile.tls_overhead_cpu = number_or(p, "tls_overhead_cpu", 0.0, where);
    if (p.contains("tasks")) {
      const auto& tasks = p.at("tasks");
      if (!tasks.is_object()) throw config_error(where + ".tasks: expected an object");
      for (const auto& [uc_name, rows] : tasks.items()) {
        auto uc = parse_use_case(uc_name);
        if (!uc) throw config_error(where + ".tasks." + uc_name + ": unknown use case");
        if (!rows.is_object()) throw config_error(where + ".tasks." + uc_name + ": expected an object");
        for (const auto& [task_id, row] : rows.items())
          cfg.profile.tasks[*uc][task_id] = parse_task_profile(row, where + ".tasks." + uc_name + "." + task_id);
      }
    }
  }

  cfg.set_seed(cfg.seed);
  return cfg;
}

inline Config parse_config_text(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(root);
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

inline ordered_json to_json(const Config& cfg) {
  ordered_json root;
  root["seed"] = cfg.seed;
  root["range"] = {{"a", cfg.range.a}, {"b", cfg.range.b}};
  root["std_dev"] = cfg.std_dev == StdDevKind::sample ? "sample" : "population";
  root["metrics"] = ordered_json::array();
  for (const auto& m : cfg.metrics) {
    ordered_json jm{{"name", m.name}, {"type", to_string(m.metric_type)}, {"unit", m.unit}};
    if (m.has_bounds()) {
      jm["min"] = m.min_bound;
      jm["max"] = m.max_bound;
    }
    root["metrics"].push_back(jm);
  }
  root["workloads"] = ordered_json::array();
  for (const auto& w : cfg.workloads)
    root["workloads"].push_back({{"id", w.id},
                                 {"use_case", to_string(w.use_case)},
                                 {"runs_below", w.runs_below},
                                 {"runs_above", w.runs_above},
                                 {"protocol", to_string(w.protocol)}});
  root["complexity"] = ordered_json::object();
  for (const auto& [wl, comps] : cfg.complexity)
    for (const auto& [comp, cls] : comps) root["complexity"][wl][comp] = to_string(cls);

  ordered_json profile{{"sample_interval_ms", cfg.profile.sample_interval_ms},
                       {"tls_overhead_ms", cfg.profile.tls_overhead_ms},
                       {"tls_overhead_cpu", cfg.profile.tls_overhead_cpu}};
  profile["tasks"] = ordered_json::object();
  for (const auto& [uc, rows] : cfg.profile.tasks) {
    // Task table order rather than map order, so T10 follows T9.
    for (const auto& def : task_table(uc)) {
      auto it = rows.find(def.id);
      if (it == rows.end()) continue;
      const auto& p = it->second;
      profile["tasks"][std::string(to_string(uc))][it->first] = {
          {"component", p.component}, {"base_ms", p.base_ms},       {"jitter", p.jitter},
          {"cpu_mean", p.cpu_mean},   {"cpu_spread", p.cpu_spread}, {"power_mw", p.power_mw}};
    }
  }
  root["profile"] = std::move(profile);
  return root;
}

/// The four default workloads (25 runs below and 25 above the limit each) with
/// the default metrics and MT0 classes. The profile is left empty.
inline Config default_config_skeleton(std::uint64_t seed = 1) {
  Config cfg;
  cfg.metrics = {default_metric(MetricType::MT0), default_metric(MetricType::MT1),
                 default_metric(MetricType::MT2), default_metric(MetricType::MT3)};
  cfg.workloads = {{"WL1.1", UseCase::UC1, 25, 25, Protocol::secure, 0},
                   {"WL1.2", UseCase::UC1, 25, 25, Protocol::insecure, 0},
                   {"WL2.1", UseCase::UC2, 25, 25, Protocol::secure, 0},
                   {"WL2.2", UseCase::UC2, 25, 25, Protocol::insecure, 0}};
  for (const auto& w : cfg.workloads) cfg.complexity[w.id] = default_complexity(w.use_case);
  cfg.set_seed(seed);
  return cfg;
}

}  // namespace secucost
