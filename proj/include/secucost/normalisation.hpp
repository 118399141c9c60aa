#pragma once

#include <array>
#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include "secucost/types.hpp"

namespace secucost {

/// Target interval [a, b] of the Cost Unit.
struct NormalisationRange {
  double a = 0.0;
  double b = 1.0;

  NormalisationRange() = default;
  NormalisationRange(double lower, double upper) : a(lower), b(upper) {
    if (!(a < b)) throw domain_error("normalisation range needs a < b");
  }
};

/// Default MIN/MAX bounds per metric type: 1000 ms is the framework's
/// connection timeout, 100 % is a saturated CPU and 10 mWs sits far above
/// anything a single board reaches within one task.
inline MetricSpec default_metric(MetricType type) {
  switch (type) {
    case MetricType::MT0: return {"complexity", MetricType::MT0, "", 0.0, 0.0};
    case MetricType::MT1: return {"duration", MetricType::MT1, "ms", 0.0, 1000.0};
    case MetricType::MT2: return {"cpu", MetricType::MT2, "%", 0.0, 100.0};
    case MetricType::MT3: return {"power", MetricType::MT3, "mWs", 0.0, 10.0};
  }
  return {};
}

inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// MIN-MAX normalisation of a raw value into [a, b] using the metric's
/// bounds. Values outside the bounds are rejected, not clamped.
inline double normalise(double x, const MetricSpec& metric, const NormalisationRange& range = {}) {
  if (!metric.has_bounds())
    throw domain_error("metric '" + metric.name + "' (MT0) has no normalisation bounds");
  if (!(metric.min_bound < metric.max_bound))
    throw domain_error("metric '" + metric.name + "' has min_bound >= max_bound");
  if (!(x >= metric.min_bound && x <= metric.max_bound))
    throw out_of_bounds_error(metric.name, x,
                              "value " + format_value(x) + " of metric '" + metric.name +
                                  "' outside [" + format_value(metric.min_bound) + ", " +
                                  format_value(metric.max_bound) + "]");
  return range.a + (x - metric.min_bound) * (range.b - range.a) / (metric.max_bound - metric.min_bound);
}

/// Inverse of normalise.
inline double denormalise(double y, const MetricSpec& metric, const NormalisationRange& range = {}) {
  return metric.min_bound + (y - range.a) * (metric.max_bound - metric.min_bound) / (range.b - range.a);
}

/// How many metrics of each type measure one task. MT0 never counts.
using MetricCensus = std::map<MetricType, std::size_t>;

class WeightTable {
 public:
  WeightTable() = default;

  std::optional<double> weight(MetricType type) const {
    auto w = weights_[index(type)];
    if (w <= 0.0) return std::nullopt;
    return w;
  }

  /// Weight of a type, 0 when the type is absent from the census.
  double operator[](MetricType type) const { return weights_[index(type)]; }

  double sum() const { return weights_[0] + weights_[1] + weights_[2]; }

 private:
  friend WeightTable calculate_weights(const MetricCensus& census);
  static std::size_t index(MetricType type) {
    switch (type) {
      case MetricType::MT1: return 0;
      case MetricType::MT2: return 1;
      case MetricType::MT3: return 2;
      default: throw domain_error("MT0 carries no weight");
    }
  }
  std::array<double, 3> weights_{0.0, 0.0, 0.0};
};

/// w(MTj) = n(MTj) / total number of metrics measuring the task.
inline WeightTable calculate_weights(const MetricCensus& census) {
  std::size_t total = 0;
  for (const auto& [type, count] : census) {
    if (type == MetricType::MT0) continue;
    total += count;
  }
  if (total == 0) throw empty_census_error("weight census counts no MT1/MT2/MT3 metric");
  WeightTable table;
  for (const auto& [type, count] : census) {
    if (type == MetricType::MT0 || count == 0) continue;
    table.weights_[WeightTable::index(type)] = static_cast<double>(count) / static_cast<double>(total);
  }
  return table;
}

}  // namespace secucost
