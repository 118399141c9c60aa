#pragma once

#include <span>
#include <string>
#include <vector>

#include "secucost/types.hpp"

namespace secucost {

/// MT1: value after the task minus value before it.
inline double compute_difference(double start, double end) {
  if (end < start)
    throw negative_duration_error("difference capture ends before it starts (start=" +
                                  std::to_string(start) + ", end=" + std::to_string(end) + ")");
  return end - start;
}

/// MT2: pooled mean over the samples of every task, i.e. the sum of all
/// samples divided by the total sample count. Empty per-task lists are
/// allowed and simply contribute nothing.
inline double compute_sample_mean(std::span<const std::vector<double>> task_samples) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& samples : task_samples) {
    for (double v : samples) sum += v;
    count += samples.size();
  }
  if (count == 0) throw empty_samples_error("sample mean over zero samples");
  return sum / static_cast<double>(count);
}

inline double compute_sample_mean(std::span<const double> samples) {
  std::vector<double> one(samples.begin(), samples.end());
  return compute_sample_mean(std::span<const std::vector<double>>(&one, 1));
}

/// MT3: total rate attributed over the measured duration. The duration must
/// already be in seconds; callers convert from the MT1 unit explicitly.
inline double compute_overall_result(double total_rate, double duration_s) {
  if (total_rate < 0.0 || duration_s < 0.0)
    throw domain_error("overall result needs non-negative rate and duration (rate=" +
                       std::to_string(total_rate) + ", duration_s=" + std::to_string(duration_s) +
                       ")");
  return total_rate * duration_s;
}

inline constexpr double ms_to_seconds(double ms) noexcept { return ms / 1000.0; }

struct ComplexityConstant {
  ComplexityClass complexity_class = ComplexityClass::O1;
  int rank = 0;

  friend auto operator<=>(const ComplexityConstant&, const ComplexityConstant&) = default;
};

/// MT0 is never measured; the class is configuration and its rank is its
/// position in O(1) < O(log n) < O(n) < O(n log n) < O(n^2) < O(2^n) < O(n!).
inline constexpr ComplexityConstant complexity_constant(ComplexityClass c) noexcept {
  return {c, static_cast<int>(c)};
}

/// Recomputes a record's raw value from its payload.
inline double compute_raw_value(const Payload& payload) {
  struct Visitor {
    double operator()(const DifferencePayload& p) const { return compute_difference(p.start, p.end); }
    double operator()(const SamplesPayload& p) const { return compute_sample_mean(std::span<const double>(p.values)); }
    double operator()(const OverallPayload& p) const {
      return compute_overall_result(p.total_rate, p.duration_s);
    }
  };
  return std::visit(Visitor{}, payload);
}

}  // namespace secucost
