#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "secucost/config.hpp"
#include "secucost/report.hpp"
#include "secucost/simulation.hpp"
#include "secucost/trace_io.hpp"

namespace secucost {

/// Process exit codes. Part of the CLI contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitProfile = 3,
  kExitSchema = 4,
  kExitBounds = 5,
  kExitNoMatch = 6,
};

enum class ReportFormat { json, csv, table };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "table" || s == "text" || s == "text-table") return ReportFormat::table;
  return std::nullopt;
}

inline constexpr const char* kConfigEnvVar = "SECUCOST_CONFIG";

/// Explicit --config wins; SECUCOST_CONFIG is the fallback.
inline std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return explicit_path;
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return std::string(env);
  return std::nullopt;
}

struct SimulateOptions {
  std::string config_path;
  std::string output_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

/// Simulates every configured workload and writes one JSONL line per record.
inline int cmd_simulate(const SimulateOptions& opt, std::ostream& err = std::cerr) {
  Config cfg;
  try {
    cfg = load_config(opt.config_path);
  } catch (const config_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (opt.seed) cfg.set_seed(*opt.seed);

  std::vector<RunTrace> all;
  try {
    for (const auto& w : cfg.workloads) check_profile(cfg.profile, w.use_case);
    const SimMetrics metrics = cfg.sim_metrics();
    for (const auto& w : cfg.workloads) {
      auto runs = run_workload(w, cfg.profile, metrics, opt.threads);
      all.insert(all.end(), std::make_move_iterator(runs.begin()), std::make_move_iterator(runs.end()));
    }
  } catch (const profile_error& e) {
    err << "error: incomplete profile: " << e.what() << '\n';
    return kExitProfile;
  }

  std::ofstream out(opt.output_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    err << "error: cannot write '" << opt.output_path << "'\n";
    return kExitIo;
  }
  write_trace(out, all);
  return out ? kExitOk : kExitIo;
}

struct ReportOptions {
  std::string trace_path;
  std::string config_path;
  std::optional<std::string> output_path;  // stdout when empty
  ReportFormat format = ReportFormat::json;
  std::optional<UseCase> use_case;         // keep only this use case's records
};

/// Runs the cost pipeline over a trace and writes the report.
inline int cmd_report(const ReportOptions& opt, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Config cfg;
  try {
    cfg = load_config(opt.config_path);
  } catch (const config_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  std::ifstream in(opt.trace_path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << opt.trace_path << "'\n";
    return kExitIo;
  }
  ParsedTrace trace = read_trace(in, cfg);
  for (const auto& issue : trace.issues) {
    if (issue.kind != IssueKind::schema) continue;
    err << "error: schema violation at line " << issue.line << ": " << issue.message << '\n';
    return kExitSchema;
  }
  if (opt.use_case)
    std::erase_if(trace.records, [&](const TraceRecord& r) { return r.run.use_case != *opt.use_case; });
  if (trace.records.empty()) {
    err << "error: no records\n";
    return kExitSchema;
  }

  ReportDocument doc;
  try {
    doc = build_report(trace.records, cfg);
  } catch (const out_of_bounds_error& e) {
    err << "error: out of bounds: " << e.what() << '\n';
    return kExitBounds;
  }

  std::ostringstream body;
  switch (opt.format) {
    case ReportFormat::json: body << to_json(doc).dump(2) << '\n'; break;
    case ReportFormat::csv: write_csv(body, doc); break;
    case ReportFormat::table: write_text(body, doc); break;
  }
  if (opt.output_path && !opt.output_path->empty()) {
    std::ofstream f(*opt.output_path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << body.str())) {
      err << "error: cannot write '" << *opt.output_path << "'\n";
      return kExitIo;
    }
  } else {
    out << body.str();
  }
  return kExitOk;
}

struct CompareOptions {
  std::string report_a;
  std::string report_b;
  std::optional<std::string> output_path;
  ReportFormat format = ReportFormat::table;  // json or table
};

inline std::optional<ReportDocument> load_report(const std::string& path, std::ostream& err, int& code) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << path << "'\n";
    code = kExitIo;
    return std::nullopt;
  }
  try {
    return report_from_json(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    err << "error: '" << path << "' is not a JSON report: " << e.what() << '\n';
    code = kExitSchema;
    return std::nullopt;
  }
}

/// Percentage improvement of report B over report A per matched workload.
inline int cmd_compare(const CompareOptions& opt, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  int code = kExitOk;
  auto a = load_report(opt.report_a, err, code);
  if (!a) return code;
  auto b = load_report(opt.report_b, err, code);
  if (!b) return code;
  auto cmp = compare_reports(*a, *b);
  if (!cmp) {
    err << "error: no matching workloads between the two reports\n";
    return kExitNoMatch;
  }
  std::ostringstream body;
  if (opt.format == ReportFormat::json)
    body << to_json(*cmp).dump(2) << '\n';
  else
    write_text(body, *cmp);
  if (opt.output_path && !opt.output_path->empty()) {
    std::ofstream f(*opt.output_path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << body.str())) {
      err << "error: cannot write '" << *opt.output_path << "'\n";
      return kExitIo;
    }
  } else {
    out << body.str();
  }
  return kExitOk;
}

/// Lists every schema, reference, bounds and task-class violation.
inline int cmd_validate(const std::string& trace_path, const std::string& config_path, std::ostream& out = std::cout,
                        std::ostream& err = std::cerr) {
  Config cfg;
  try {
    cfg = load_config(config_path);
  } catch (const config_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  std::ifstream in(trace_path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << trace_path << "'\n";
    return kExitIo;
  }
  ParsedTrace trace = read_trace(in, cfg);
  if (trace.records.empty() && trace.issues.empty()) trace.issues.push_back({0, IssueKind::schema, "no records"});
  for (const auto& issue : trace.issues)
    out << "line " << issue.line << ": " << (issue.kind == IssueKind::bounds ? "bound violation: " : "")
        << issue.message << '\n';
  out << trace.records.size() << " record(s), " << trace.issues.size() << " violation(s)\n";
  return trace.issues.empty() ? kExitOk : kExitSchema;
}

}  // namespace secucost
