#pragma once

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "secucost/types.hpp"

namespace secucost {

struct Violation {
  std::string path;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Checks the structural invariants of an onion layer model and returns every
/// violation found. An empty report means the model is valid.
inline ValidationReport validate_model(const CpsModel& model) {
  ValidationReport report;
  auto add = [&](std::string path, std::string message) {
    report.push_back({std::move(path), std::move(message)});
  };

  std::set<std::string> interaction_ids;
  // (component, task) -> interaction that first defined it, with the task.
  std::map<std::pair<std::string, std::string>, std::pair<std::string, TaskSpec>> seen_tasks;

  for (const auto& interaction : model.interactions) {
    const std::string ipath = model.id + "/" + interaction.id;
    if (!interaction_ids.insert(interaction.id).second)
      add(ipath, "duplicate interaction id '" + interaction.id + "'");
    if (interaction.components.empty()) add(ipath, "interaction has no components");

    std::set<std::string> component_ids;
    for (const auto& component : interaction.components) {
      const std::string cpath = ipath + "/" + component.id;
      if (!component_ids.insert(component.id).second)
        add(cpath, "duplicate component id '" + component.id + "' within interaction");

      std::set<std::string> task_ids;
      for (const auto& task : component.tasks) {
        const std::string tpath = cpath + "/" + task.id;
        if (!task_ids.insert(task.id).second)
          add(tpath, "duplicate task id '" + task.id + "' within component");
        if (!task.task_class)
          add(tpath, "task has no functional/security classification");
        if (task.id.find(kTaskGroupSeparator) != std::string::npos)
          add(tpath, "task id must not contain '+'");

        auto key = std::make_pair(component.id, task.id);
        auto [it, inserted] = seen_tasks.try_emplace(key, interaction.id, task);
        if (!inserted && it->second.first != interaction.id && it->second.second == task)
          add(tpath, "task duplicates the identical definition in interaction '" +
                         it->second.first + "'");
      }
    }
  }
  return report;
}

/// Number of functional and security-related tasks of a component.
struct TaskCensus {
  std::size_t functional = 0;
  std::size_t security = 0;
};

inline TaskCensus classify_tasks(const ComponentSpec& component) {
  TaskCensus census;
  for (const auto& t : component.tasks) {
    if (t.task_class == TaskClass::security_related)
      ++census.security;
    else if (t.task_class == TaskClass::functional)
      ++census.functional;
  }
  return census;
}

}  // namespace secucost
