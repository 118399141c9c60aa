#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace secucost {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A difference capture whose end precedes its start (clock skew or a
/// malformed capture).
class negative_duration_error : public error {
 public:
  using error::error;
};

class empty_samples_error : public error {
 public:
  using error::error;
};

class domain_error : public error {
 public:
  using error::error;
};

/// Raised when a raw value falls outside its metric's [MIN, MAX] bounds.
class out_of_bounds_error : public error {
 public:
  out_of_bounds_error(std::string metric, double value, std::string what)
      : error(std::move(what)), metric_(std::move(metric)), value_(value) {}
  const std::string& metric() const noexcept { return metric_; }
  double value() const noexcept { return value_; }

 private:
  std::string metric_;
  double value_;
};

class empty_census_error : public error {
 public:
  using error::error;
};

class config_error : public error {
 public:
  using error::error;
};

/// Simulation profile does not cover a (use case, component, task) tuple.
class profile_error : public error {
 public:
  using error::error;
};

// ---------------------------------------------------------------------------
// Enumerations
// ---------------------------------------------------------------------------

enum class TaskClass { functional, security_related };

enum class MetricType { MT0, MT1, MT2, MT3 };

/// Big-O classes in ascending order of cost. The enumerator order is the
/// ordering chain, so the underlying value doubles as the rank.
enum class ComplexityClass : int { O1, OLogN, ON, ONLogN, ON2, O2N, OFactorial };

inline constexpr ComplexityClass kAllComplexityClasses[] = {
    ComplexityClass::O1,     ComplexityClass::OLogN, ComplexityClass::ON,
    ComplexityClass::ONLogN, ComplexityClass::ON2,   ComplexityClass::O2N,
    ComplexityClass::OFactorial};

enum class UseCase { UC1, UC2 };

enum class Protocol { secure, insecure };

// ---------------------------------------------------------------------------
// String conversions (these spellings are the wire format)
// ---------------------------------------------------------------------------

inline std::string_view to_string(TaskClass c) {
  return c == TaskClass::functional ? "functional" : "security";
}

inline std::optional<TaskClass> parse_task_class(std::string_view s) {
  if (s == "functional") return TaskClass::functional;
  if (s == "security") return TaskClass::security_related;
  return std::nullopt;
}

inline std::string_view to_string(MetricType t) {
  switch (t) {
    case MetricType::MT0: return "MT0";
    case MetricType::MT1: return "MT1";
    case MetricType::MT2: return "MT2";
    case MetricType::MT3: return "MT3";
  }
  return "?";
}

inline std::optional<MetricType> parse_metric_type(std::string_view s) {
  if (s == "MT0") return MetricType::MT0;
  if (s == "MT1") return MetricType::MT1;
  if (s == "MT2") return MetricType::MT2;
  if (s == "MT3") return MetricType::MT3;
  return std::nullopt;
}

inline std::string_view to_string(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::O1: return "O1";
    case ComplexityClass::OLogN: return "OLogN";
    case ComplexityClass::ON: return "ON";
    case ComplexityClass::ONLogN: return "ONLogN";
    case ComplexityClass::ON2: return "ON2";
    case ComplexityClass::O2N: return "O2N";
    case ComplexityClass::OFactorial: return "OFactorial";
  }
  return "?";
}

/// Argument of f_MT0(.) as printed in reports: "1", "log n", "n", ...
inline std::string_view big_o_argument(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::O1: return "1";
    case ComplexityClass::OLogN: return "log n";
    case ComplexityClass::ON: return "n";
    case ComplexityClass::ONLogN: return "n log n";
    case ComplexityClass::ON2: return "n^2";
    case ComplexityClass::O2N: return "2^n";
    case ComplexityClass::OFactorial: return "n!";
  }
  return "?";
}

inline std::optional<ComplexityClass> parse_complexity_class(std::string_view s) {
  for (auto c : kAllComplexityClasses)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

inline std::string_view to_string(UseCase u) { return u == UseCase::UC1 ? "UC1" : "UC2"; }

inline std::optional<UseCase> parse_use_case(std::string_view s) {
  if (s == "UC1") return UseCase::UC1;
  if (s == "UC2") return UseCase::UC2;
  return std::nullopt;
}

inline std::string_view to_string(Protocol p) { return p == Protocol::secure ? "secure" : "insecure"; }

inline std::optional<Protocol> parse_protocol(std::string_view s) {
  if (s == "secure") return Protocol::secure;
  if (s == "insecure") return Protocol::insecure;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Onion layer model
// ---------------------------------------------------------------------------

struct TaskSpec {
  std::string id;
  // Empty only for models assembled from untrusted input; validate_model
  // reports it.
  std::optional<TaskClass> task_class;
  std::string description;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct ComponentSpec {
  std::string id;
  std::vector<TaskSpec> tasks;
  ComplexityClass complexity_class = ComplexityClass::O1;
};

struct InteractionSpec {
  std::string id;
  std::vector<ComponentSpec> components;
};

struct CpsModel {
  std::string id;
  std::vector<InteractionSpec> interactions;
};

struct MetricSpec {
  std::string name;
  MetricType metric_type = MetricType::MT1;
  std::string unit;
  // Unused for MT0.
  double min_bound = 0.0;
  double max_bound = 0.0;

  bool has_bounds() const noexcept { return metric_type != MetricType::MT0; }

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

// ---------------------------------------------------------------------------
// Measurements
// ---------------------------------------------------------------------------

/// MT1 capture pair.
struct DifferencePayload {
  double start = 0.0;
  double end = 0.0;
  friend bool operator==(const DifferencePayload&, const DifferencePayload&) = default;
};

/// MT2 snapshots taken while the task ran.
struct SamplesPayload {
  std::vector<double> values;
  friend bool operator==(const SamplesPayload&, const SamplesPayload&) = default;
};

/// MT3 total rate over the measured duration (seconds).
struct OverallPayload {
  double total_rate = 0.0;
  double duration_s = 0.0;
  friend bool operator==(const OverallPayload&, const OverallPayload&) = default;
};

using Payload = std::variant<DifferencePayload, SamplesPayload, OverallPayload>;

inline MetricType payload_metric_type(const Payload& p) {
  switch (p.index()) {
    case 0: return MetricType::MT1;
    case 1: return MetricType::MT2;
    default: return MetricType::MT3;
  }
}

/// One raw measurement of one task by one metric.
///
/// `task_id` may name several tasks of the same component joined with '+'
/// ("T1+T6"), which is how component-level MT2/MT3 captures that span more
/// than one task are attributed.
struct MeasurementRecord {
  std::string run_id;
  std::string interaction_id;
  std::string component_id;
  std::string task_id;
  TaskClass task_class = TaskClass::functional;
  MetricSpec metric;
  Payload payload;
  double raw_value = 0.0;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

inline constexpr char kTaskGroupSeparator = '+';

/// Splits a (possibly grouped) task id into its member task ids.
inline std::vector<std::string> split_task_group(std::string_view task_id) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto next = task_id.find(kTaskGroupSeparator, pos);
    out.emplace_back(task_id.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace secucost
