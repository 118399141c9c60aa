#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "secucost/types.hpp"

namespace secucost {

struct ServiceEndpoint {
  std::string component_id;
  std::string address;
  int port = 0;

  friend bool operator==(const ServiceEndpoint&, const ServiceEndpoint&) = default;
};

/// Service Registry core system: name -> providing component and endpoint.
class ServiceRegistry {
 public:
  /// Registers (or re-registers, overwriting) a service.
  void register_service(const std::string& service_name, ServiceEndpoint endpoint) {
    if (service_name.empty()) throw domain_error("service name must not be empty");
    entries_[service_name] = std::move(endpoint);
  }

  std::optional<ServiceEndpoint> lookup(const std::string& service_name) const {
    auto it = entries_.find(service_name);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, ServiceEndpoint> entries_;
};

/// Authorisation core system. Rules are directional triples.
class AuthorisationStore {
 public:
  void add_rule(const std::string& consumer_id, const std::string& provider_id, const std::string& service_name) {
    if (consumer_id.empty() || provider_id.empty() || service_name.empty())
      throw domain_error("authorisation rule ids must not be empty");
    rules_.emplace(consumer_id, provider_id, service_name);
  }

  bool check(const std::string& consumer_id, const std::string& provider_id,
             const std::string& service_name) const {
    return rules_.count({consumer_id, provider_id, service_name}) > 0;
  }

 private:
  std::set<std::tuple<std::string, std::string, std::string>> rules_;
};

enum class OrchestrationStatus { ok, service_not_found, not_authorised };

enum class OrchestrationStep { lookup, authorisation_check };

/// Class of the task that performs each orchestration step.
inline constexpr TaskClass step_class(OrchestrationStep s) {
  return s == OrchestrationStep::lookup ? TaskClass::functional : TaskClass::security_related;
}

struct OrchestrationResult {
  OrchestrationStatus status = OrchestrationStatus::service_not_found;
  std::optional<ServiceEndpoint> endpoint;
  std::vector<OrchestrationStep> steps;  // steps performed, in order

  bool ok() const noexcept { return status == OrchestrationStatus::ok; }
};

/// Orchestrator core system: registry lookup first, then the authorisation
/// check. A failed check denies the whole request.
inline OrchestrationResult orchestrate(const ServiceRegistry& registry, const AuthorisationStore& auth,
                                       const std::string& consumer_id, const std::string& service_name) {
  OrchestrationResult result;
  result.steps.push_back(OrchestrationStep::lookup);
  auto provider = registry.lookup(service_name);
  if (!provider) {
    result.status = OrchestrationStatus::service_not_found;
    return result;
  }
  result.steps.push_back(OrchestrationStep::authorisation_check);
  if (!auth.check(consumer_id, provider->component_id, service_name)) {
    result.status = OrchestrationStatus::not_authorised;
    return result;
  }
  result.status = OrchestrationStatus::ok;
  result.endpoint = std::move(provider);
  return result;
}

namespace services {
inline constexpr const char* kTemperatureMeasurement = "temperature-measurement";
inline constexpr const char* kAirConditioning = "air-conditioning";
}  // namespace services

namespace components {
inline constexpr const char* kC1 = "C1";
inline constexpr const char* kC2 = "C2";
inline constexpr const char* kOrchestrator = "orchestrator";
inline constexpr const char* kServiceRegistry = "service-registry";
inline constexpr const char* kAuthorisation = "authorisation";
}  // namespace components

/// Local cloud as deployed for the temperature-control scenario: both services
/// registered and C1/C2 authorised to consume each other's service.
struct LocalCloud {
  ServiceRegistry registry;
  AuthorisationStore auth;
};

inline LocalCloud make_default_local_cloud() {
  LocalCloud cloud;
  cloud.registry.register_service(services::kAirConditioning, {components::kC1, "192.168.0.11", 8461});
  cloud.registry.register_service(services::kTemperatureMeasurement, {components::kC2, "192.168.0.12", 8462});
  cloud.auth.add_rule(components::kC1, components::kC2, services::kTemperatureMeasurement);
  cloud.auth.add_rule(components::kC2, components::kC1, services::kAirConditioning);
  return cloud;
}

}  // namespace secucost
