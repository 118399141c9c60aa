#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "secucost/aggregation.hpp"
#include "secucost/config.hpp"
#include "secucost/trace_io.hpp"
#include "secucost/types.hpp"

namespace secucost {

enum class TemperatureGroup { below, above };

inline std::string_view to_string(TemperatureGroup g) { return g == TemperatureGroup::below ? "<25C" : ">25C"; }

inline TemperatureGroup temperature_group(double temperature_c) {
  return temperature_c > kTemperatureLimitC ? TemperatureGroup::above : TemperatureGroup::below;
}

/// Costs of one run of a workload.
struct RunCost {
  std::string workload_id;
  std::string run_id;
  RunInfo info;
  CostBreakdown costs;
};

struct GroupReport {
  TemperatureGroup group = TemperatureGroup::below;
  StatSummary total;
  StatSummary security;
};

struct WorkloadReport {
  std::string workload_id;
  UseCase use_case = UseCase::UC1;
  Protocol protocol = Protocol::secure;
  std::size_t runs = 0;
  double total_sum = 0.0;     // over every run of the workload, both groups
  double security_sum = 0.0;
  std::vector<GroupReport> groups;
  std::map<std::string, ComplexityClass> complexity;
};

struct UseCaseSecuritySummary {
  UseCase use_case = UseCase::UC1;
  std::string secure_workload;
  std::string insecure_workload;
  double secure_total_sum = 0.0;
  double insecure_total_sum = 0.0;
  SecurityCostSummary summary;
};

struct ReportDocument {
  StdDevKind std_dev = StdDevKind::sample;
  std::vector<WorkloadReport> workloads;  // sorted by workload id
  std::vector<UseCaseSecuritySummary> security_summaries;
};

/// Groups trace records into runs and aggregates each run. Runs come back
/// ordered by (workload_id, run_id).
inline std::vector<RunCost> cost_runs(std::span<const TraceRecord> records, const Config& cfg) {
  std::map<std::pair<std::string, std::string>, std::pair<RunInfo, std::vector<MeasurementRecord>>> runs;
  for (const auto& tr : records) {
    auto& slot = runs[{tr.run.workload_id, tr.record.run_id}];
    if (slot.second.empty()) slot.first = tr.run;
    slot.second.push_back(tr.record);
  }
  std::vector<RunCost> out;
  out.reserve(runs.size());
  for (auto& [key, run] : runs) {
    RunCost rc{key.first, key.second, run.first, aggregate_costs(run.second, cfg.range)};
    rc.costs.complexity_constants = cfg.complexity_for(key.first);
    out.push_back(std::move(rc));
  }
  return out;
}

/// Highest MT0 class among the components that performed security-related
/// tasks; the annotation printed next to a use case's security costs.
inline ComplexityClass security_complexity(UseCase uc, const std::map<std::string, ComplexityClass>& configured) {
  auto classes = configured.empty() ? default_complexity(uc) : configured;
  std::optional<ComplexityClass> best;
  for (const auto& def : task_table(uc)) {
    if (def.task_class != TaskClass::security_related) continue;
    auto it = classes.find(def.component);
    if (it == classes.end()) continue;
    best = best ? std::max(*best, it->second) : it->second;
  }
  return best.value_or(ComplexityClass::O1);
}

/// Runs the cost pipeline over a parsed trace: raw values are already in the
/// records, each run is normalised, weighted and aggregated, per-run costs
/// are summarised per workload and temperature group, and the secure
/// protocol overhead is extracted per use case. MT0 classes ride along as
/// annotations.
inline ReportDocument build_report(std::span<const TraceRecord> records, const Config& cfg) {
  ReportDocument doc;
  doc.std_dev = cfg.std_dev;

  auto runs = cost_runs(records, cfg);
  std::map<std::string, std::vector<const RunCost*>> by_workload;
  for (const auto& rc : runs) by_workload[rc.workload_id].push_back(&rc);

  for (const auto& [wl, wl_runs] : by_workload) {
    WorkloadReport w;
    w.workload_id = wl;
    w.use_case = wl_runs.front()->info.use_case;
    w.protocol = wl_runs.front()->info.protocol;
    w.runs = wl_runs.size();
    w.complexity = cfg.complexity_for(wl);

    CompensatedSum total_sum, security_sum;
    for (auto group : {TemperatureGroup::below, TemperatureGroup::above}) {
      std::vector<double> totals, securities;
      for (const RunCost* rc : wl_runs) {
        if (temperature_group(rc->info.temperature_c) != group) continue;
        totals.push_back(rc->costs.total_costs);
        securities.push_back(rc->costs.security_costs);
      }
      if (totals.empty()) continue;
      for (double v : totals) total_sum.add(v);
      for (double v : securities) security_sum.add(v);
      w.groups.push_back({group, workload_statistics(totals, cfg.std_dev), workload_statistics(securities, cfg.std_dev)});
    }
    w.total_sum = total_sum.value();
    w.security_sum = security_sum.value();
    doc.workloads.push_back(std::move(w));
  }

  for (auto uc : {UseCase::UC1, UseCase::UC2}) {
    const WorkloadReport* secure = nullptr;
    const WorkloadReport* insecure = nullptr;
    for (const auto& w : doc.workloads) {
      if (w.use_case != uc) continue;
      if (w.protocol == Protocol::secure && !secure) secure = &w;
      if (w.protocol == Protocol::insecure && !insecure) insecure = &w;
    }
    if (!secure || !insecure) continue;
    UseCaseSecuritySummary s;
    s.use_case = uc;
    s.secure_workload = secure->workload_id;
    s.insecure_workload = insecure->workload_id;
    s.secure_total_sum = secure->total_sum;
    s.insecure_total_sum = insecure->total_sum;
    s.summary = extract_security_summary(secure->total_sum, insecure->total_sum, secure->security_sum,
                                         security_complexity(uc, secure->complexity));
    doc.security_summaries.push_back(std::move(s));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Serialisation
// ---------------------------------------------------------------------------

/// Shortest representation that parses back to the same double.
inline std::string exact_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fixed5(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

inline std::string security_expression(const UseCaseSecuritySummary& s) {
  return "(" + fixed5(s.secure_total_sum) + " - " + fixed5(s.insecure_total_sum) + ") + " +
         fixed5(s.summary.base_security_sum) + " = " + fixed5(s.summary.combined) + " + f_MT0(" +
         std::string(big_o_argument(s.summary.complexity_note)) + ")";
}

inline ordered_json to_json(const StatSummary& s) {
  return {{"n", s.n},       {"min", s.min},         {"max", s.max},         {"median", s.median},
          {"mean", s.mean}, {"std_dev", s.std_dev}, {"std_err", s.std_err}, {"sum", s.sum}};
}

inline StatSummary stat_summary_from_json(const nlohmann::json& j) {
  StatSummary s;
  s.n = j.at("n").get<std::size_t>();
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  s.median = j.at("median").get<double>();
  s.mean = j.at("mean").get<double>();
  s.std_dev = j.at("std_dev").get<double>();
  s.std_err = j.at("std_err").get<double>();
  s.sum = j.at("sum").get<double>();
  return s;
}

inline ordered_json to_json(const ReportDocument& doc) {
  ordered_json root;
  root["std_dev"] = doc.std_dev == StdDevKind::sample ? "sample" : "population";
  root["workloads"] = ordered_json::array();
  for (const auto& w : doc.workloads) {
    ordered_json jw{{"workload_id", w.workload_id},
                    {"use_case", to_string(w.use_case)},
                    {"protocol", to_string(w.protocol)},
                    {"runs", w.runs},
                    {"total_sum", w.total_sum},
                    {"security_sum", w.security_sum}};
    jw["groups"] = ordered_json::array();
    for (const auto& g : w.groups)
      jw["groups"].push_back({{"group", to_string(g.group)}, {"total", to_json(g.total)}, {"security", to_json(g.security)}});
    jw["complexity"] = ordered_json::object();
    for (const auto& [comp, cls] : w.complexity) jw["complexity"][comp] = to_string(cls);
    root["workloads"].push_back(std::move(jw));
  }
  root["security_summaries"] = ordered_json::array();
  for (const auto& s : doc.security_summaries)
    root["security_summaries"].push_back({{"use_case", to_string(s.use_case)},
                                          {"secure_workload", s.secure_workload},
                                          {"insecure_workload", s.insecure_workload},
                                          {"secure_total_sum", s.secure_total_sum},
                                          {"insecure_total_sum", s.insecure_total_sum},
                                          {"protocol_delta", s.summary.protocol_delta},
                                          {"base_security_sum", s.summary.base_security_sum},
                                          {"combined", s.summary.combined},
                                          {"complexity", to_string(s.summary.complexity_note)},
                                          {"expression", security_expression(s)}});
  return root;
}

/// Inverse of to_json(ReportDocument); throws nlohmann::json::exception or
/// config_error on malformed input.
inline ReportDocument report_from_json(const nlohmann::json& root) {
  ReportDocument doc;
  doc.std_dev = root.at("std_dev").get<std::string>() == "population" ? StdDevKind::population : StdDevKind::sample;
  for (const auto& jw : root.at("workloads")) {
    WorkloadReport w;
    w.workload_id = jw.at("workload_id").get<std::string>();
    auto uc = parse_use_case(jw.at("use_case").get<std::string>());
    auto proto = parse_protocol(jw.at("protocol").get<std::string>());
    if (!uc || !proto) throw config_error("report: bad use_case/protocol in workload " + w.workload_id);
    w.use_case = *uc;
    w.protocol = *proto;
    w.runs = jw.at("runs").get<std::size_t>();
    w.total_sum = jw.at("total_sum").get<double>();
    w.security_sum = jw.at("security_sum").get<double>();
    for (const auto& jg : jw.at("groups")) {
      GroupReport g;
      g.group = jg.at("group").get<std::string>() == "<25C" ? TemperatureGroup::below : TemperatureGroup::above;
      g.total = stat_summary_from_json(jg.at("total"));
      g.security = stat_summary_from_json(jg.at("security"));
      w.groups.push_back(g);
    }
    if (jw.contains("complexity"))
      for (const auto& [comp, cls] : jw.at("complexity").items())
        if (auto c = parse_complexity_class(cls.get<std::string>())) w.complexity[comp] = *c;
    doc.workloads.push_back(std::move(w));
  }
  if (root.contains("security_summaries")) {
    for (const auto& js : root.at("security_summaries")) {
      UseCaseSecuritySummary s;
      s.use_case = parse_use_case(js.at("use_case").get<std::string>()).value_or(UseCase::UC1);
      s.secure_workload = js.at("secure_workload").get<std::string>();
      s.insecure_workload = js.at("insecure_workload").get<std::string>();
      s.secure_total_sum = js.at("secure_total_sum").get<double>();
      s.insecure_total_sum = js.at("insecure_total_sum").get<double>();
      s.summary.protocol_delta = js.at("protocol_delta").get<double>();
      s.summary.base_security_sum = js.at("base_security_sum").get<double>();
      s.summary.combined = js.at("combined").get<double>();
      s.summary.complexity_note =
          parse_complexity_class(js.at("complexity").get<std::string>()).value_or(ComplexityClass::O1);
      doc.security_summaries.push_back(std::move(s));
    }
  }
  return doc;
}

/// Two CSV sections separated by a blank line: per-group statistics, then
/// the per-use-case security summaries. Numbers use the shortest form that
/// round-trips, so they parse to the same doubles as the JSON output.
inline void write_csv(std::ostream& out, const ReportDocument& doc) {
  out << "table,workload_id,use_case,protocol,group,n,min,max,median,mean,std_dev,std_err,sum,workload_sum\n";
  for (const char* table : {"total", "security"}) {
    const bool total = std::string_view(table) == "total";
    for (const auto& w : doc.workloads) {
      for (const auto& g : w.groups) {
        const StatSummary& s = total ? g.total : g.security;
        out << table << ',' << w.workload_id << ',' << to_string(w.use_case) << ',' << to_string(w.protocol) << ','
            << to_string(g.group) << ',' << s.n << ',' << exact_number(s.min) << ',' << exact_number(s.max) << ','
            << exact_number(s.median) << ',' << exact_number(s.mean) << ',' << exact_number(s.std_dev) << ','
            << exact_number(s.std_err) << ',' << exact_number(s.sum) << ','
            << exact_number(total ? w.total_sum : w.security_sum) << '\n';
      }
    }
  }
  out << '\n';
  out << "use_case,secure_workload,insecure_workload,secure_total_sum,insecure_total_sum,protocol_delta,"
         "base_security_sum,combined,complexity\n";
  for (const auto& s : doc.security_summaries)
    out << to_string(s.use_case) << ',' << s.secure_workload << ',' << s.insecure_workload << ','
        << exact_number(s.secure_total_sum) << ',' << exact_number(s.insecure_total_sum) << ','
        << exact_number(s.summary.protocol_delta) << ',' << exact_number(s.summary.base_security_sum) << ','
        << exact_number(s.summary.combined) << ',' << to_string(s.summary.complexity_note) << '\n';
}

/// Plain-text tables with five decimals.
inline void write_text(std::ostream& out, const ReportDocument& doc) {
  auto table = [&](const char* title, bool total) {
    char row[256];
    out << title << '\n';
    std::snprintf(row, sizeof row, "%-8s %-6s %10s %10s %10s %10s %10s %10s %12s\n", "WL", "Temp", "Min", "Max",
                  "Median", "Mean", "Std.Dev.", "Std.Err.", "Sum");
    out << row;
    for (const auto& w : doc.workloads) {
      bool first = true;
      for (const auto& g : w.groups) {
        const StatSummary& s = total ? g.total : g.security;
        const std::string sum = first ? fixed5(total ? w.total_sum : w.security_sum) : "";
        std::snprintf(row, sizeof row, "%-8s %-6s %10s %10s %10s %10s %10s %10s %12s\n",
                      first ? w.workload_id.c_str() : "", std::string(to_string(g.group)).c_str(),
                      fixed5(s.min).c_str(), fixed5(s.max).c_str(), fixed5(s.median).c_str(), fixed5(s.mean).c_str(),
                      fixed5(s.std_dev).c_str(), fixed5(s.std_err).c_str(), sum.c_str());
        out << row;
        first = false;
      }
    }
    out << '\n';
  };
  table("Total Costs per Workload", true);
  table("Security Costs per Workload", false);
  if (!doc.security_summaries.empty()) {
    out << "Security Costs per Use Case\n";
    for (const auto& s : doc.security_summaries)
      out << to_string(s.use_case) << ": " << security_expression(s) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

struct ComparisonRow {
  std::string label;
  std::string workload_a;
  std::string workload_b;
  double total_a = 0.0;
  double total_b = 0.0;
  double security_a = 0.0;
  double security_b = 0.0;

  double total_delta() const { return total_a - total_b; }
  double security_delta() const { return security_a - security_b; }
  /// (a - b) / a in percent; empty when a is zero and b is not.
  static std::optional<double> improvement(double a, double b) {
    if (a == b) return 0.0;
    if (a == 0.0) return std::nullopt;
    return (a - b) / a * 100.0;
  }
  std::optional<double> total_improvement_pct() const { return improvement(total_a, total_b); }
  std::optional<double> security_improvement_pct() const { return improvement(security_a, security_b); }
};

struct ComparisonDocument {
  std::vector<ComparisonRow> pairs;
  ComparisonRow overall;  // sums over every matched pair
};

/// Matches workloads of two reports: identical ids first; remaining
/// workloads pair up by protocol (first unmatched of each, in id order), which
/// lines up WL1.1 with WL2.1 and WL1.2 with WL2.2. Returns nullopt when
/// nothing matches.
inline std::optional<ComparisonDocument> compare_reports(const ReportDocument& a, const ReportDocument& b) {
  ComparisonDocument doc;
  std::vector<bool> used_a(a.workloads.size()), used_b(b.workloads.size());
  auto add = [&](std::size_t i, std::size_t k) {
    used_a[i] = used_b[k] = true;
    const auto& wa = a.workloads[i];
    const auto& wb = b.workloads[k];
    doc.pairs.push_back({wa.workload_id == wb.workload_id ? wa.workload_id : wa.workload_id + " vs " + wb.workload_id,
                         wa.workload_id, wb.workload_id, wa.total_sum, wb.total_sum, wa.security_sum,
                         wb.security_sum});
  };
  for (std::size_t i = 0; i < a.workloads.size(); ++i)
    for (std::size_t k = 0; k < b.workloads.size(); ++k)
      if (!used_b[k] && !used_a[i] && a.workloads[i].workload_id == b.workloads[k].workload_id) add(i, k);
  for (std::size_t i = 0; i < a.workloads.size(); ++i)
    for (std::size_t k = 0; k < b.workloads.size(); ++k)
      if (!used_a[i] && !used_b[k] && a.workloads[i].protocol == b.workloads[k].protocol) add(i, k);
  if (doc.pairs.empty()) return std::nullopt;

  CompensatedSum ta, tb, sa, sb;
  for (const auto& p : doc.pairs) {
    ta.add(p.total_a);
    tb.add(p.total_b);
    sa.add(p.security_a);
    sb.add(p.security_b);
  }
  doc.overall = {"overall", "*", "*", ta.value(), tb.value(), sa.value(), sb.value()};
  return doc;
}

inline ordered_json to_json(const ComparisonRow& r) {
  auto opt = [](std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  return {{"label", r.label},
          {"workload_a", r.workload_a},
          {"workload_b", r.workload_b},
          {"total_a", r.total_a},
          {"total_b", r.total_b},
          {"total_delta", r.total_delta()},
          {"total_improvement_pct", opt(r.total_improvement_pct())},
          {"security_a", r.security_a},
          {"security_b", r.security_b},
          {"security_delta", r.security_delta()},
          {"security_improvement_pct", opt(r.security_improvement_pct())}};
}

inline ordered_json to_json(const ComparisonDocument& doc) {
  ordered_json root;
  root["pairs"] = ordered_json::array();
  for (const auto& p : doc.pairs) root["pairs"].push_back(to_json(p));
  root["overall"] = to_json(doc.overall);
  return root;
}

inline void write_text(std::ostream& out, const ComparisonDocument& doc) {
  auto pct = [](std::optional<double> v) {
    if (!v) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", *v);
    return std::string(buf);
  };
  char row[256];
  std::snprintf(row, sizeof row, "%-18s %12s %12s %10s %12s %12s %10s\n", "Pair", "Total A", "Total B", "Improv.",
                "Security A", "Security B", "Improv.");
  out << row;
  auto line = [&](const ComparisonRow& r) {
    std::snprintf(row, sizeof row, "%-18s %12s %12s %10s %12s %12s %10s\n", r.label.c_str(), fixed5(r.total_a).c_str(),
                  fixed5(r.total_b).c_str(), pct(r.total_improvement_pct()).c_str(), fixed5(r.security_a).c_str(),
                  fixed5(r.security_b).c_str(), pct(r.security_improvement_pct()).c_str());
    out << row;
  };
  for (const auto& p : doc.pairs) line(p);
  line(doc.overall);
}

}  // namespace secucost
