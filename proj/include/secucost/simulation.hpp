#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "secucost/local_cloud.hpp"
#include "secucost/metric_engine.hpp"
#include "secucost/normalisation.hpp"
#include "secucost/rng.hpp"
#include "secucost/types.hpp"

namespace secucost {

inline constexpr const char* kInteractionId = "closed-loop-temperature-control";
inline constexpr double kTemperatureLimitC = 25.0;

// ---------------------------------------------------------------------------
// Task tables of the two use cases
// ---------------------------------------------------------------------------

/// Where a task sits relative to orchestration. Tasks after a refused
/// orchestration step are not executed.
enum class TaskPhase { initiate, lookup, authorisation, after_orchestration };

/// Whether a task runs in every run or only when the temperature is above
/// the limit.
enum class TaskCondition { always, above_limit };

struct TaskDefinition {
  const char* id;
  const char* component;
  TaskClass task_class;
  bool message_exchange;  // request/response between components; pays TLS overhead
  TaskPhase phase;
  TaskCondition condition;
  const char* description;
};

namespace detail {
using enum TaskClass;
using enum TaskPhase;
using enum TaskCondition;
namespace c = components;

// Consumer to producer: C1 looks up C2.
inline const std::vector<TaskDefinition> kUseCase1Tasks = {
    {"T1", c::kC1, functional, true, initiate, always, "C1 requests a component with a temperature sensor from the Orchestrator"},
    {"T2", c::kOrchestrator, functional, true, lookup, always, "Orchestrator forwards the request to the Service Registry"},
    {"T3", c::kServiceRegistry, functional, true, lookup, always, "Service Registry searches its database and returns C2"},
    {"T4", c::kOrchestrator, security_related, true, authorisation, always, "Orchestrator asks the Authorisation System if C1 may consume C2"},
    {"T5", c::kAuthorisation, security_related, true, authorisation, always, "Authorisation System searches its rules and returns C1 is authorised"},
    {"T6", c::kOrchestrator, functional, true, after_orchestration, always, "Orchestrator returns the endpoint of C2 to C1"},
    {"T7", c::kC1, functional, true, after_orchestration, always, "C1 requests the room temperature from C2"},
    {"T8", c::kC2, functional, false, after_orchestration, always, "C2 measures the temperature with its sensor"},
    {"T9", c::kC2, functional, true, after_orchestration, always, "C2 returns the measured value to C1"},
    {"T10", c::kC1, functional, false, after_orchestration, always, "C1 checks the value against the 25 C limit"},
    {"T11", c::kC1, functional, false, after_orchestration, above_limit, "C1 activates the air-conditioning system"},
};

// Producer to consumer: C2 measures first and only orchestrates above the limit.
inline const std::vector<TaskDefinition> kUseCase2Tasks = {
    {"T1", c::kC2, functional, false, initiate, always, "C2 measures the temperature with its sensor"},
    {"T2", c::kC2, functional, false, initiate, always, "C2 checks the value against the 25 C limit"},
    {"T3", c::kC2, functional, true, initiate, above_limit, "C2 requests a component with an air-conditioning system from the Orchestrator"},
    {"T4", c::kOrchestrator, functional, true, lookup, above_limit, "Orchestrator forwards the request to the Service Registry"},
    {"T5", c::kServiceRegistry, functional, true, lookup, above_limit, "Service Registry searches its database and returns C1"},
    {"T6", c::kOrchestrator, security_related, true, authorisation, above_limit, "Orchestrator asks the Authorisation System if C2 may consume C1"},
    {"T7", c::kAuthorisation, security_related, true, authorisation, above_limit, "Authorisation System searches its rules and returns C2 is authorised"},
    {"T8", c::kOrchestrator, functional, true, after_orchestration, above_limit, "Orchestrator returns the endpoint of C1 to C2"},
    {"T9", c::kC2, functional, true, after_orchestration, above_limit, "C2 asks C1 to start cooling down the room"},
    {"T10", c::kC1, functional, false, after_orchestration, above_limit, "C1 activates the air-conditioning system"},
};
}  // namespace detail

inline const std::vector<TaskDefinition>& task_table(UseCase uc) {
  return uc == UseCase::UC1 ? detail::kUseCase1Tasks : detail::kUseCase2Tasks;
}

/// Consumer and requested service of the orchestration step of a use case.
struct OrchestrationRequest {
  const char* consumer;
  const char* service;
};

inline OrchestrationRequest orchestration_request(UseCase uc) {
  if (uc == UseCase::UC1) return {components::kC1, services::kTemperatureMeasurement};
  return {components::kC2, services::kAirConditioning};
}

/// Default MT0 classes: the initiating component and the three core systems
/// are O(n), the passive component O(1).
inline std::map<std::string, ComplexityClass> default_complexity(UseCase uc) {
  using enum ComplexityClass;
  namespace c = components;
  return {{c::kC1, uc == UseCase::UC1 ? ON : O1},
          {c::kC2, uc == UseCase::UC1 ? O1 : ON},
          {c::kOrchestrator, ON},
          {c::kServiceRegistry, ON},
          {c::kAuthorisation, ON}};
}

/// Onion layer model of one use case: one interaction with the five
/// components in order of first appearance.
inline CpsModel closed_loop_model(UseCase uc, const std::map<std::string, ComplexityClass>& complexity = {}) {
  InteractionSpec interaction{kInteractionId, {}};
  auto classes = complexity.empty() ? default_complexity(uc) : complexity;
  for (const auto& def : task_table(uc)) {
    auto it = std::find_if(interaction.components.begin(), interaction.components.end(),
                           [&](const ComponentSpec& c) { return c.id == def.component; });
    if (it == interaction.components.end()) {
      ComponentSpec comp{def.component, {}, ComplexityClass::O1};
      if (auto cit = classes.find(def.component); cit != classes.end()) comp.complexity_class = cit->second;
      interaction.components.push_back(std::move(comp));
      it = std::prev(interaction.components.end());
    }
    it->tasks.push_back({def.id, def.task_class, def.description});
  }
  return {std::string("closed-loop-") + std::string(to_string(uc)), {std::move(interaction)}};
}

inline const TaskDefinition* find_task(UseCase uc, std::string_view task_id) {
  for (const auto& def : task_table(uc))
    if (task_id == def.id) return &def;
  return nullptr;
}

/// Task ids executed for a temperature, assuming orchestration succeeds.
inline std::vector<std::string> expected_task_sequence(UseCase uc, double temperature_c) {
  std::vector<std::string> out;
  const bool above = temperature_c > kTemperatureLimitC;
  for (const auto& def : task_table(uc))
    if (def.condition == TaskCondition::always || above) out.emplace_back(def.id);
  return out;
}

// ---------------------------------------------------------------------------
// Profile and workload
// ---------------------------------------------------------------------------

struct TaskProfile {
  std::string component;
  double base_ms = 0.0;
  double jitter = 0.0;  // fraction in [0, 1)
  double cpu_mean = 0.0;
  double cpu_spread = 0.0;
  double power_mw = 0.0;
};

struct SimProfile {
  double sample_interval_ms = 5.0;
  double tls_overhead_ms = 0.0;
  double tls_overhead_cpu = 0.0;
  std::map<UseCase, std::map<std::string, TaskProfile>> tasks;
};

/// Throws profile_error naming the first (use case, component, task) tuple
/// the profile fails to cover or describes inconsistently.
inline void check_profile(const SimProfile& profile, UseCase uc) {
  auto fail = [&](const TaskDefinition& def, const std::string& why) {
    throw profile_error("profile entry (" + std::string(to_string(uc)) + ", " + def.component + ", " + def.id +
                        ") " + why);
  };
  if (!(profile.sample_interval_ms > 0.0)) throw profile_error("sample_interval_ms must be > 0");
  if (profile.tls_overhead_ms < 0.0 || profile.tls_overhead_cpu < 0.0)
    throw profile_error("TLS overheads must be >= 0");
  auto uc_it = profile.tasks.find(uc);
  for (const auto& def : task_table(uc)) {
    if (uc_it == profile.tasks.end()) fail(def, "is missing");
    auto it = uc_it->second.find(def.id);
    if (it == uc_it->second.end()) fail(def, "is missing");
    const auto& p = it->second;
    if (p.component != def.component) fail(def, "names component '" + p.component + "'");
    if (p.base_ms < 0.0 || p.cpu_mean < 0.0 || p.cpu_spread < 0.0 || p.power_mw < 0.0)
      fail(def, "has a negative parameter");
    if (!(p.jitter >= 0.0 && p.jitter < 1.0)) fail(def, "jitter must lie in [0, 1)");
  }
}

/// Metrics the simulator records; a missing type is not recorded.
struct SimMetrics {
  std::optional<MetricSpec> duration = default_metric(MetricType::MT1);
  std::optional<MetricSpec> cpu = default_metric(MetricType::MT2);
  std::optional<MetricSpec> power = default_metric(MetricType::MT3);
};

struct WorkloadSpec {
  std::string id;
  UseCase use_case = UseCase::UC1;
  std::size_t runs_below = 25;
  std::size_t runs_above = 25;
  Protocol protocol = Protocol::secure;
  std::uint64_t seed = 0;

  std::size_t total_runs() const noexcept { return runs_below + runs_above; }
};

struct RunTrace {
  std::string run_id;
  std::string workload_id;
  UseCase use_case = UseCase::UC1;
  Protocol protocol = Protocol::secure;
  double temperature_c = 0.0;
  OrchestrationStatus orchestration = OrchestrationStatus::ok;
  std::vector<std::string> executed_tasks;
  std::vector<MeasurementRecord> records;
};

struct RunContext {
  std::string run_id = "run-1";
  std::string workload_id;
};

/// Executes one closed-loop interaction on the simulated local cloud.
///
/// Every executed task emits one MT1 record (start/end on a per-run virtual
/// clock in ms) and one MT2 record (max(1, floor(duration / interval)) CPU
/// samples). Each (component, task class) pair additionally emits one MT3
/// record over the summed duration of its tasks, attributed to the grouped
/// task id ("T1+T6+T7"). The secure protocol adds the TLS overheads to
/// every message-exchange task.
inline RunTrace run_interaction(UseCase uc, double temperature_c, Protocol protocol, const SimProfile& profile,
                                Rng& rng, const SimMetrics& metrics = {}, const LocalCloud& cloud = make_default_local_cloud(),
                                const RunContext& ctx = {}) {
  check_profile(profile, uc);

  RunTrace trace;
  trace.run_id = ctx.run_id;
  trace.workload_id = ctx.workload_id;
  trace.use_case = uc;
  trace.protocol = protocol;
  trace.temperature_c = temperature_c;

  const bool above = temperature_c > kTemperatureLimitC;
  const bool secure = protocol == Protocol::secure;
  const auto& tasks = profile.tasks.at(uc);

  std::optional<OrchestrationResult> orchestration;

  struct Group {
    std::string component;
    TaskClass task_class;
    std::vector<std::string> task_ids;
    double duration_ms = 0.0;
    double energy = 0.0;  // sum of rate * duration_ms
  };
  std::vector<Group> groups;

  auto make_record = [&](const TaskDefinition& def, std::string task_id, const MetricSpec& metric, Payload payload) {
    MeasurementRecord r;
    r.run_id = trace.run_id;
    r.interaction_id = kInteractionId;
    r.component_id = def.component;
    r.task_id = std::move(task_id);
    r.task_class = def.task_class;
    r.metric = metric;
    r.raw_value = compute_raw_value(payload);
    r.payload = std::move(payload);
    return r;
  };

  double clock_ms = 0.0;
  for (const auto& def : task_table(uc)) {
    if (def.condition == TaskCondition::above_limit && !above) break;

    if (def.phase != TaskPhase::initiate && !orchestration) {
      auto request = orchestration_request(uc);
      orchestration = orchestrate(cloud.registry, cloud.auth, request.consumer, request.service);
      trace.orchestration = orchestration->status;
    }
    if (orchestration && !orchestration->ok()) {
      const bool refused_here =
          (orchestration->status == OrchestrationStatus::service_not_found && def.phase != TaskPhase::lookup) ||
          (orchestration->status == OrchestrationStatus::not_authorised && def.phase == TaskPhase::after_orchestration);
      if (refused_here) break;
    }

    const TaskProfile& p = tasks.at(def.id);
    const bool pays_tls = secure && def.message_exchange;
    const double duration = p.base_ms * (1.0 + p.jitter * (2.0 * rng.uniform01() - 1.0)) +
                            (pays_tls ? profile.tls_overhead_ms : 0.0);
    const double start = clock_ms;
    const double end = start + duration;
    clock_ms = end;
    trace.executed_tasks.emplace_back(def.id);

    if (metrics.duration) trace.records.push_back(make_record(def, def.id, *metrics.duration, DifferencePayload{start, end}));

    const auto sample_count =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(duration / profile.sample_interval_ms)));
    SamplesPayload samples;
    samples.values.reserve(sample_count);
    const double cpu_centre = p.cpu_mean + (pays_tls ? profile.tls_overhead_cpu : 0.0);
    for (std::size_t i = 0; i < sample_count; ++i)
      samples.values.push_back(std::clamp(cpu_centre + p.cpu_spread * rng.normal(), 0.0, 100.0));
    if (metrics.cpu) trace.records.push_back(make_record(def, def.id, *metrics.cpu, std::move(samples)));

    const double rate = p.power_mw * (1.0 + p.jitter * (2.0 * rng.uniform01() - 1.0));
    auto git = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.component == def.component && g.task_class == def.task_class;
    });
    if (git == groups.end()) {
      groups.push_back({def.component, def.task_class, {}, 0.0, 0.0});
      git = std::prev(groups.end());
    }
    git->task_ids.emplace_back(def.id);
    git->duration_ms += duration;
    git->energy += rate * duration;
  }

  if (metrics.power) {
    for (const auto& g : groups) {
      std::string task_id;
      for (const auto& t : g.task_ids) task_id += (task_id.empty() ? "" : "+") + t;
      const double avg_rate = g.duration_ms > 0.0 ? g.energy / g.duration_ms : 0.0;
      const TaskDefinition& def = *find_task(uc, g.task_ids.front());
      trace.records.push_back(make_record(def, std::move(task_id), *metrics.power,
                                          OverallPayload{avg_rate, ms_to_seconds(g.duration_ms)}));
    }
  }
  return trace;
}

inline constexpr double kBelowLimitMinC = 15.0;
inline constexpr double kBelowLimitMaxC = 24.9;
inline constexpr double kAboveLimitMinC = 25.1;
inline constexpr double kAboveLimitMaxC = 35.0;

inline std::string make_run_id(const std::string& workload_id, std::size_t index) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%03zu", index + 1);
  return workload_id + "-r" + buf;
}

/// Runs one workload: the first runs_below runs measure a temperature drawn
/// uniformly from [15, 24.9] C, the remaining runs_above from [25.1, 35] C.
/// Run i uses its own stream Rng::for_run(spec.seed, i), so the output is the
/// same for any thread count.
inline std::vector<RunTrace> run_workload(const WorkloadSpec& spec, const SimProfile& profile,
                                          const SimMetrics& metrics = {}, unsigned threads = 1) {
  check_profile(profile, spec.use_case);
  const LocalCloud cloud = make_default_local_cloud();
  std::vector<RunTrace> traces(spec.total_runs());

  auto run_one = [&](std::size_t i) {
    Rng rng = Rng::for_run(spec.seed, i);
    const bool above = i >= spec.runs_below;
    const double temperature =
        above ? rng.uniform(kAboveLimitMinC, kAboveLimitMaxC) : rng.uniform(kBelowLimitMinC, kBelowLimitMaxC);
    traces[i] = run_interaction(spec.use_case, temperature, spec.protocol, profile, rng, metrics, cloud,
                                {make_run_id(spec.id, i), spec.id});
  };

  if (threads <= 1 || traces.size() < 2) {
    for (std::size_t i = 0; i < traces.size(); ++i) run_one(i);
    return traces;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < traces.size(); i = next++) {
        try {
          run_one(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
  return traces;
}

}  // namespace secucost
