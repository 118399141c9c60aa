#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "secucost/normalisation.hpp"
#include "secucost/types.hpp"

namespace secucost {

/// Neumaier-compensated running sum. Keeps aggregation results independent
/// of record order to well below 1e-12 relative.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct CostBreakdown {
  double functional_costs = 0.0;
  double security_costs = 0.0;
  double total_costs = 0.0;
  // MT0 annotations; never added numerically.
  std::map<std::string, ComplexityClass> complexity_constants;

  /// Field-wise combination of two partial aggregates.
  friend CostBreakdown operator+(const CostBreakdown& lhs, const CostBreakdown& rhs) {
    CostBreakdown out;
    out.functional_costs = lhs.functional_costs + rhs.functional_costs;
    out.security_costs = lhs.security_costs + rhs.security_costs;
    out.total_costs = out.functional_costs + out.security_costs;
    out.complexity_constants = lhs.complexity_constants;
    for (const auto& [k, v] : rhs.complexity_constants) {
      auto [it, inserted] = out.complexity_constants.emplace(k, v);
      if (!inserted) it->second = std::max(it->second, v);
    }
    return out;
  }
};

inline double total_costs(const CostBreakdown& b) { return b.functional_costs + b.security_costs; }

/// Maps a record to the weight w_MT applied to its normalised value.
using WeightSource = std::function<double(const MeasurementRecord&)>;

/// Same census for every task; the simulator's setup, where every task is
/// measured by the same metric set.
inline WeightSource uniform_census_weights(const MetricCensus& census) {
  return [table = calculate_weights(census)](const MeasurementRecord& r) {
    return table[r.metric.metric_type];
  };
}

/// Builds one census per task from the metrics actually recorded against it.
/// A grouped record ("T1+T6") counts for each member task; its weight is the
/// mean of its members' weights for the record's type.
class PerTaskCensus {
 public:
  using TaskKey = std::tuple<std::string, std::string, std::string, std::string>;

  explicit PerTaskCensus(std::span<const MeasurementRecord> records) {
    std::map<TaskKey, std::set<std::pair<MetricType, std::string>>> metrics;
    for (const auto& r : records) {
      if (r.metric.metric_type == MetricType::MT0) continue;
      for (auto& task : split_task_group(r.task_id))
        metrics[key(r, task)].emplace(r.metric.metric_type, r.metric.name);
    }
    for (const auto& [k, set] : metrics) {
      MetricCensus census;
      for (const auto& [type, name] : set) ++census[type];
      tables_.emplace(k, calculate_weights(census));
    }
  }

  double operator()(const MeasurementRecord& r) const {
    auto members = split_task_group(r.task_id);
    double sum = 0.0;
    for (const auto& task : members) {
      auto it = tables_.find(key(r, task));
      if (it == tables_.end())
        throw empty_census_error("no weight census for task '" + task + "' of run '" + r.run_id + "'");
      sum += it->second[r.metric.metric_type];
    }
    return sum / static_cast<double>(members.size());
  }

 private:
  static TaskKey key(const MeasurementRecord& r, const std::string& task) {
    return {r.run_id, r.interaction_id, r.component_id, task};
  }
  std::map<TaskKey, WeightTable> tables_;
};

inline std::string record_coordinates(const MeasurementRecord& r) {
  return "run=" + r.run_id + " interaction=" + r.interaction_id + " component=" + r.component_id +
         " task=" + r.task_id + " metric=" + r.metric.name;
}

/// Normalised, weighted contribution of a single record.
inline double weighted_contribution(const MeasurementRecord& r, const WeightSource& weights,
                                    const NormalisationRange& range) {
  double normalised = 0.0;
  try {
    normalised = normalise(r.raw_value, r.metric, range);
  } catch (const out_of_bounds_error& e) {
    throw out_of_bounds_error(e.metric(), e.value(), "[" + record_coordinates(r) + "] " + e.what());
  }
  return normalised * weights(r);
}

/// Cost aggregation over the onion layers: each record is normalised,
/// weighted by its metric type and accumulated into security costs when its
/// task is security-related, functional costs otherwise.
inline CostBreakdown aggregate_costs(std::span<const MeasurementRecord> records, const WeightSource& weights,
                                     const NormalisationRange& range = {}) {
  CompensatedSum functional;
  CompensatedSum security;
  for (const auto& r : records) {
    if (r.metric.metric_type == MetricType::MT0) continue;
    const double contribution = weighted_contribution(r, weights, range);
    if (r.task_class == TaskClass::security_related)
      security.add(contribution);
    else
      functional.add(contribution);
  }
  CostBreakdown out;
  out.functional_costs = functional.value();
  out.security_costs = security.value();
  out.total_costs = out.functional_costs + out.security_costs;
  return out;
}

/// Convenience overload weighting by a census built from the records.
inline CostBreakdown aggregate_costs(std::span<const MeasurementRecord> records,
                                     const NormalisationRange& range = {}) {
  PerTaskCensus census(records);
  return aggregate_costs(records, WeightSource(std::cref(census)), range);
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

enum class StdDevKind { sample, population };

struct StatSummary {
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;
  double std_err = 0.0;
  double sum = 0.0;
  std::size_t n = 0;
};

/// Min/Max/Median/Mean/Std.Dev./Std.Err./Sum of per-run costs. The sample
/// (n-1) deviation is the default; n == 1 yields 0.
inline StatSummary workload_statistics(std::span<const double> values, StdDevKind kind = StdDevKind::sample) {
  if (values.empty()) throw domain_error("statistics over an empty collection");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  StatSummary s;
  s.n = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  const std::size_t mid = s.n / 2;
  s.median = (s.n % 2 == 1) ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;

  CompensatedSum sum;
  for (double v : sorted) sum.add(v);
  s.sum = sum.value();
  s.mean = s.sum / static_cast<double>(s.n);

  CompensatedSum squares;
  for (double v : sorted) squares.add((v - s.mean) * (v - s.mean));
  const std::size_t divisor = kind == StdDevKind::sample ? s.n - 1 : s.n;
  s.std_dev = divisor == 0 ? 0.0 : std::sqrt(squares.value() / static_cast<double>(divisor));
  s.std_err = s.std_dev / std::sqrt(static_cast<double>(s.n));
  return s;
}

// ---------------------------------------------------------------------------
// Security cost extraction
// ---------------------------------------------------------------------------

struct SecurityCostSummary {
  double protocol_delta = 0.0;
  double base_security_sum = 0.0;
  double combined = 0.0;
  ComplexityClass complexity_note = ComplexityClass::O1;
};

/// Secure-protocol overhead (secure total minus insecure total) plus the
/// security costs measured under the secure protocol. A negative delta is
/// reported as is.
inline SecurityCostSummary extract_security_summary(double secure_total_sum, double insecure_total_sum,
                                                    double secure_security_sum, ComplexityClass complexity) {
  SecurityCostSummary s;
  s.protocol_delta = secure_total_sum - insecure_total_sum;
  s.base_security_sum = secure_security_sum;
  s.combined = s.protocol_delta + s.base_security_sum;
  s.complexity_note = complexity;
  return s;
}

}  // namespace secucost
