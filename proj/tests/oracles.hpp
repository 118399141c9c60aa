#pragma once

// Reference computations used only by tests. They deliberately avoid the
// library's code paths: plain long-double loops, no compensated sums, no
// shared helpers beyond the record types.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "secucost/types.hpp"

namespace oracle {

inline long double pooled_mean(const std::vector<std::vector<double>>& lists) {
  std::vector<double> flat;
  for (const auto& l : lists) flat.insert(flat.end(), l.begin(), l.end());
  long double s = 0;
  for (double v : flat) s += v;
  return s / static_cast<long double>(flat.size());
}

struct Costs {
  long double functional = 0;
  long double security = 0;
};

/// Normalise, classify, sum; weights come from a caller-supplied per-type
/// table.
inline Costs brute_force_costs(const std::vector<secucost::MeasurementRecord>& records,
                               const std::map<secucost::MetricType, double>& weight, double a = 0.0, double b = 1.0) {
  Costs c;
  for (const auto& r : records) {
    long double span = static_cast<long double>(r.metric.max_bound) - r.metric.min_bound;
    long double xdot = a + (static_cast<long double>(r.raw_value) - r.metric.min_bound) / span * (b - a);
    long double contribution = xdot * weight.at(r.metric.metric_type);
    if (r.task_class == secucost::TaskClass::security_related)
      c.security += contribution;
    else
      c.functional += contribution;
  }
  return c;
}

struct Stats {
  double min, max, median, mean, std_dev, std_err, sum;
};

inline Stats naive_stats(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  long double sum = 0;
  for (double x : v) sum += x;
  long double mean = sum / n;
  long double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  double sd = n > 1 ? static_cast<double>(std::sqrt(ss / (n - 1))) : 0.0;
  double median = n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
  return {v.front(), v.back(), median, static_cast<double>(mean), sd, sd / std::sqrt(static_cast<double>(n)),
          static_cast<double>(sum)};
}

/// Random record with a raw value strictly inside its metric's bounds.
inline secucost::MeasurementRecord random_record(std::mt19937_64& rng, int index) {
  using namespace secucost;
  std::uniform_int_distribution<int> type_pick(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MeasurementRecord r;
  r.run_id = "run-" + std::to_string(index % 7);
  r.interaction_id = "I" + std::to_string(index % 3);
  r.component_id = "C" + std::to_string(index % 5);
  r.task_id = "T" + std::to_string(index % 11);
  r.task_class = unit(rng) < 0.3 ? TaskClass::security_related : TaskClass::functional;
  auto type = static_cast<MetricType>(type_pick(rng));
  MetricSpec m;
  m.name = std::string("m") + std::string(to_string(type));
  m.metric_type = type;
  m.min_bound = -10.0 + 20.0 * unit(rng);
  m.max_bound = m.min_bound + 1.0 + 1000.0 * unit(rng);
  r.metric = m;
  r.raw_value = m.min_bound + (m.max_bound - m.min_bound) * unit(rng);
  r.payload = DifferencePayload{0.0, r.raw_value};
  return r;
}

}  // namespace oracle
