#pragma once

#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "secucost/config.hpp"
#include "secucost/metric_engine.hpp"
#include "secucost/simulation.hpp"
#include "secucost/types.hpp"

namespace secucost {

/// Run metadata repeated on every trace line.
struct RunInfo {
  std::string workload_id;
  UseCase use_case = UseCase::UC1;
  double temperature_c = 0.0;
  Protocol protocol = Protocol::secure;
};

/// One line of a JSONL trace file.
struct TraceRecord {
  RunInfo run;
  MeasurementRecord record;
};

inline ordered_json payload_to_json(const Payload& payload) {
  struct Visitor {
    ordered_json operator()(const DifferencePayload& p) const { return {{"start", p.start}, {"end", p.end}}; }
    ordered_json operator()(const SamplesPayload& p) const { return {{"samples", p.values}}; }
    ordered_json operator()(const OverallPayload& p) const {
      return {{"total_rate", p.total_rate}, {"duration_s", p.duration_s}};
    }
  };
  return std::visit(Visitor{}, payload);
}

inline ordered_json to_json(const TraceRecord& tr) {
  const auto& r = tr.record;
  return ordered_json{{"run_id", r.run_id},
                      {"workload_id", tr.run.workload_id},
                      {"use_case", to_string(tr.run.use_case)},
                      {"temperature_c", tr.run.temperature_c},
                      {"protocol", to_string(tr.run.protocol)},
                      {"interaction_id", r.interaction_id},
                      {"component_id", r.component_id},
                      {"task_id", r.task_id},
                      {"task_class", to_string(r.task_class)},
                      {"metric", r.metric.name},
                      {"metric_type", to_string(r.metric.metric_type)},
                      {"unit", r.metric.unit},
                      {"payload", payload_to_json(r.payload)},
                      {"raw_value", r.raw_value}};
}

/// Trace lines of simulated runs, in run order.
inline std::vector<TraceRecord> flatten(std::span<const RunTrace> runs) {
  std::vector<TraceRecord> out;
  for (const auto& run : runs) {
    RunInfo info{run.workload_id, run.use_case, run.temperature_c, run.protocol};
    for (const auto& r : run.records) out.push_back({info, r});
  }
  return out;
}

inline void write_trace(std::ostream& out, std::span<const RunTrace> runs) {
  for (const auto& run : runs) {
    RunInfo info{run.workload_id, run.use_case, run.temperature_c, run.protocol};
    for (const auto& r : run.records) out << to_json(TraceRecord{info, r}).dump() << '\n';
  }
}

enum class IssueKind { schema, bounds };

struct TraceIssue {
  std::size_t line = 0;  // 1-based; 0 for file-level issues
  IssueKind kind = IssueKind::schema;
  std::string message;
};

struct ParsedTrace {
  std::vector<TraceRecord> records;
  std::vector<std::size_t> line_numbers;  // parallel to records
  std::vector<TraceIssue> issues;

  bool has(IssueKind kind) const {
    for (const auto& i : issues)
      if (i.kind == kind) return true;
    return false;
  }
};

namespace detail {

inline std::optional<Payload> parse_payload(const nlohmann::json& j, MetricType type, std::string& why) {
  if (!j.is_object()) {
    why = "payload must be an object";
    return std::nullopt;
  }
  auto num = [&](const char* key, double& out) {
    if (!j.contains(key) || !j.at(key).is_number()) return false;
    out = j.at(key).get<double>();
    return true;
  };
  switch (type) {
    case MetricType::MT1: {
      DifferencePayload p;
      if (j.size() != 2 || !num("start", p.start) || !num("end", p.end)) {
        why = "MT1 payload must be {\"start\":n,\"end\":n}";
        return std::nullopt;
      }
      return p;
    }
    case MetricType::MT2: {
      SamplesPayload p;
      if (j.size() != 1 || !j.contains("samples") || !j.at("samples").is_array()) {
        why = "MT2 payload must be {\"samples\":[...]}";
        return std::nullopt;
      }
      for (const auto& v : j.at("samples")) {
        if (!v.is_number()) {
          why = "MT2 samples must be numbers";
          return std::nullopt;
        }
        p.values.push_back(v.get<double>());
      }
      return p;
    }
    case MetricType::MT3: {
      OverallPayload p;
      if (j.size() != 2 || !num("total_rate", p.total_rate) || !num("duration_s", p.duration_s)) {
        why = "MT3 payload must be {\"total_rate\":n,\"duration_s\":n}";
        return std::nullopt;
      }
      return p;
    }
    default:
      why = "metric_type must be MT1, MT2 or MT3";
      return std::nullopt;
  }
}

}  // namespace detail

/// Parses and checks a JSONL trace against a config.
///
/// Schema issues: malformed JSON, missing or mistyped fields, payload not
/// matching metric_type, raw_value inconsistent with the payload, metric not
/// declared (or declared with another type/unit), unknown tasks or task
/// classes disagreeing with the use case's task table, and run metadata
/// that changes within a run. Bounds issues: raw_value outside the declared
/// [MIN, MAX]. Records with schema issues are dropped; records with only
/// bounds issues are kept.
inline ParsedTrace read_trace(std::istream& in, const Config& cfg) {
  ParsedTrace out;
  std::string line;
  std::size_t lineno = 0;
  std::map<std::pair<std::string, std::string>, RunInfo> runs;
  auto issue = [&](IssueKind kind, std::string msg) { out.issues.push_back({lineno, kind, std::move(msg)}); };

  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      issue(IssueKind::schema, "line is not valid JSON");
      continue;
    }
    if (!j.is_object()) {
      issue(IssueKind::schema, "line is not a JSON object");
      continue;
    }

    std::string missing;
    auto str = [&](const char* key) -> std::string {
      if (!j.contains(key) || !j.at(key).is_string()) {
        if (missing.empty()) missing = key;
        return {};
      }
      return j.at(key).get<std::string>();
    };
    auto num = [&](const char* key) -> double {
      if (!j.contains(key) || !j.at(key).is_number()) {
        if (missing.empty()) missing = key;
        return 0.0;
      }
      return j.at(key).get<double>();
    };

    TraceRecord tr;
    auto& r = tr.record;
    r.run_id = str("run_id");
    tr.run.workload_id = str("workload_id");
    auto use_case = str("use_case");
    tr.run.temperature_c = num("temperature_c");
    auto protocol = str("protocol");
    r.interaction_id = str("interaction_id");
    r.component_id = str("component_id");
    r.task_id = str("task_id");
    auto task_class = str("task_class");
    auto metric = str("metric");
    auto metric_type = str("metric_type");
    auto unit = str("unit");
    r.raw_value = num("raw_value");
    if (!j.contains("payload")) missing = missing.empty() ? "payload" : missing;
    if (!missing.empty()) {
      issue(IssueKind::schema, "missing or mistyped field '" + missing + "'");
      continue;
    }

    auto uc = parse_use_case(use_case);
    auto proto = parse_protocol(protocol);
    auto cls = parse_task_class(task_class);
    auto type = parse_metric_type(metric_type);
    if (!uc) { issue(IssueKind::schema, "use_case must be UC1 or UC2"); continue; }
    if (!proto) { issue(IssueKind::schema, "protocol must be secure or insecure"); continue; }
    if (!cls) { issue(IssueKind::schema, "task_class must be functional or security"); continue; }
    if (!type || *type == MetricType::MT0) { issue(IssueKind::schema, "metric_type must be MT1, MT2 or MT3"); continue; }
    tr.run.use_case = *uc;
    tr.run.protocol = *proto;
    r.task_class = *cls;

    std::string why;
    auto payload = detail::parse_payload(j.at("payload"), *type, why);
    if (!payload) { issue(IssueKind::schema, why); continue; }
    r.payload = std::move(*payload);

    try {
      const double recomputed = compute_raw_value(r.payload);
      if (std::abs(recomputed - r.raw_value) > 1e-9 * std::max(1.0, std::abs(recomputed))) {
        issue(IssueKind::schema, "raw_value " + format_value(r.raw_value) + " does not match payload (" +
                                     format_value(recomputed) + ")");
        continue;
      }
    } catch (const error& e) {
      issue(IssueKind::schema, std::string("payload invalid: ") + e.what());
      continue;
    }

    const MetricSpec* declared = cfg.find_metric(metric);
    if (!declared) { issue(IssueKind::schema, "metric '" + metric + "' is not declared in the config"); continue; }
    if (declared->metric_type != *type || declared->unit != unit) {
      issue(IssueKind::schema, "metric '" + metric + "' declared as " + std::string(to_string(declared->metric_type)) +
                                   " [" + declared->unit + "], line says " + metric_type + " [" + unit + "]");
      continue;
    }
    r.metric = *declared;

    bool task_ok = true;
    for (const auto& member : split_task_group(r.task_id)) {
      const TaskDefinition* def = find_task(*uc, member);
      if (!def) {
        issue(IssueKind::schema, "task '" + member + "' does not exist in " + use_case);
        task_ok = false;
      } else if (def->component != r.component_id) {
        issue(IssueKind::schema, "task '" + member + "' of " + use_case + " belongs to '" + def->component +
                                     "', not '" + r.component_id + "'");
        task_ok = false;
      } else if (def->task_class != *cls) {
        issue(IssueKind::schema, "task '" + member + "' of " + use_case + " is " +
                                     std::string(to_string(def->task_class)) + ", line says " + task_class);
        task_ok = false;
      }
      if (!task_ok) break;
    }
    if (!task_ok) continue;

    auto key = std::make_pair(tr.run.workload_id, r.run_id);
    auto [it, inserted] = runs.emplace(key, tr.run);
    if (!inserted && (it->second.use_case != tr.run.use_case || it->second.protocol != tr.run.protocol ||
                      it->second.temperature_c != tr.run.temperature_c)) {
      issue(IssueKind::schema, "run '" + r.run_id + "' changes use_case/protocol/temperature_c between lines");
      continue;
    }

    if (!(r.raw_value >= declared->min_bound && r.raw_value <= declared->max_bound))
      issue(IssueKind::bounds, "[" + record_coordinates(r) + "] value " + format_value(r.raw_value) +
                                   " outside [" + format_value(declared->min_bound) + ", " +
                                   format_value(declared->max_bound) + "]");

    out.records.push_back(std::move(tr));
    out.line_numbers.push_back(lineno);
  }
  return out;
}

}  // namespace secucost
