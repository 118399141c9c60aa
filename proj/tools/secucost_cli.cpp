// secucost: simulate, report, compare and validate security-cost traces.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "secucost/commands.hpp"

namespace {

using namespace secucost;

int require_config(std::optional<std::string>& path) {
  path = resolve_config_path(path);
  if (!path) {
    std::cerr << "error: no config given (use --config or set " << kConfigEnvVar << ")\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Security cost modelling: simulate local-cloud traces and aggregate their costs"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  int exit_code = kExitOk;

  auto* simulate = app.add_subcommand("simulate", "Run every configured workload and write a JSONL trace");
  std::string sim_out;
  unsigned threads = 1;
  simulate->add_option("--config", config_path, "Config file (falls back to $SECUCOST_CONFIG)");
  simulate->add_option("--out", sim_out, "Trace output path")->required();
  simulate->add_option("--seed", seed, "Override the config seed");
  simulate->add_option("--threads", threads, "Worker threads per workload")->check(CLI::Range(1u, 256u));
  simulate->callback([&] {
    if ((exit_code = require_config(config_path)) != kExitOk) return;
    exit_code = cmd_simulate({*config_path, sim_out, seed, threads});
  });

  auto* report = app.add_subcommand("report", "Aggregate a trace into total and security cost tables");
  std::string trace_path;
  std::optional<std::string> report_out;
  std::string format = "json";
  std::optional<std::string> use_case;
  report->add_option("--trace", trace_path, "JSONL trace")->required();
  report->add_option("--config", config_path, "Config file (falls back to $SECUCOST_CONFIG)");
  report->add_option("--out", report_out, "Output path (stdout if omitted)");
  report->add_option("--format", format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table", "text"}));
  report->add_option("--use-case", use_case, "Only report UC1 or UC2")->check(CLI::IsMember({"UC1", "UC2"}));
  report->add_option("--seed", seed, "Accepted for symmetry; reports do not draw random numbers");
  report->callback([&] {
    if ((exit_code = require_config(config_path)) != kExitOk) return;
    ReportOptions opt{trace_path, *config_path, report_out, *parse_report_format(format), std::nullopt};
    if (use_case) opt.use_case = parse_use_case(*use_case);
    exit_code = cmd_report(opt);
  });

  auto* compare = app.add_subcommand("compare", "Percentage improvement of report B over report A");
  std::string report_a, report_b, compare_format = "table";
  std::optional<std::string> compare_out;
  compare->add_option("--a", report_a, "Baseline JSON report")->required();
  compare->add_option("--b", report_b, "Candidate JSON report")->required();
  compare->add_option("--out", compare_out, "Output path (stdout if omitted)");
  compare->add_option("--format", compare_format, "json | table")->check(CLI::IsMember({"json", "table"}));
  compare->callback([&] {
    exit_code = cmd_compare({report_a, report_b, compare_out, *parse_report_format(compare_format)});
  });

  auto* validate = app.add_subcommand("validate", "Check a trace against the schema and the config");
  std::string validate_trace;
  validate->add_option("--trace", validate_trace, "JSONL trace")->required();
  validate->add_option("--config", config_path, "Config file (falls back to $SECUCOST_CONFIG)");
  validate->callback([&] {
    if ((exit_code = require_config(config_path)) != kExitOk) return;
    exit_code = cmd_validate(validate_trace, *config_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return exit_code;
}
