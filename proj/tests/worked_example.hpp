#pragma once

// The two-task security example: component c runs security-related tasks
// s1 and s2, measured by duration (MT1), CPU (MT2, pooled over both tasks)
// and power (MT3, per task).

#include <span>
#include <vector>

#include "secucost/metric_engine.hpp"
#include "secucost/normalisation.hpp"
#include "secucost/types.hpp"

namespace worked_example {

struct Raw {
  double d1, d2, cpu, p1, p2;
};

inline Raw raw_values() {
  using namespace secucost;
  Raw r{};
  r.d1 = compute_difference(0.0, 10.0);
  r.d2 = compute_difference(10.0, 30.0);
  std::vector<std::vector<double>> samples = {{1.5, 2.0, 1.0}, {2.3, 2.1, 1.8, 2.7, 1.5}};
  r.cpu = compute_sample_mean(samples);
  r.p1 = compute_overall_result(0.5, ms_to_seconds(r.d1));
  r.p2 = compute_overall_result(0.5, ms_to_seconds(r.d2));
  return r;
}

inline std::vector<secucost::MeasurementRecord> records() {
  using namespace secucost;
  auto make = [](std::string task, MetricType type, Payload payload) {
    MeasurementRecord m;
    m.run_id = "example";
    m.interaction_id = "i";
    m.component_id = "c";
    m.task_id = std::move(task);
    m.task_class = TaskClass::security_related;
    m.metric = default_metric(type);
    m.raw_value = compute_raw_value(payload);
    m.payload = std::move(payload);
    return m;
  };
  return {
      make("s1", MetricType::MT1, DifferencePayload{0.0, 10.0}),
      make("s2", MetricType::MT1, DifferencePayload{10.0, 30.0}),
      make("s1+s2", MetricType::MT2, SamplesPayload{{1.5, 2.0, 1.0, 2.3, 2.1, 1.8, 2.7, 1.5}}),
      make("s1", MetricType::MT3, OverallPayload{0.5, 0.01}),
      make("s2", MetricType::MT3, OverallPayload{0.5, 0.02}),
  };
}

// Published total, (0.01 + 0.02 + 0.01825 + 0.0005 + 0.0010) / 3. It rests
// on a pooled CPU mean of 1.825 %, while the samples above pool to 1.8625 %.
inline constexpr double kPublishedSecurityCosts = 0.04975 / 3.0;

}  // namespace worked_example
