#include <gtest/gtest.h>

#include <random>

#include "secucost/cost_model.hpp"
#include "secucost/simulation.hpp"

using namespace secucost;

namespace {
CpsModel small_model() {
  return {"m",
          {{"i1",
            {{"A", {{"t1", TaskClass::functional, ""}, {"t2", TaskClass::security_related, ""}}},
             {"B", {{"t3", TaskClass::functional, ""}}}}}}};
}
}  // namespace

TEST(ValidateModel, ClosedLoopModelsAreValid) {
  EXPECT_TRUE(validate_model(closed_loop_model(UseCase::UC1)).empty());
  EXPECT_TRUE(validate_model(closed_loop_model(UseCase::UC2)).empty());
}

TEST(ValidateModel, DuplicateComponentId) {
  auto m = small_model();
  m.interactions[0].components[1].id = "A";
  auto report = validate_model(m);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_NE(report[0].message.find("duplicate component"), std::string::npos);
  EXPECT_EQ(report[0].path, "m/i1/A");
}

TEST(ValidateModel, UnclassifiedTask) {
  auto m = small_model();
  m.interactions[0].components[0].tasks[0].task_class.reset();
  auto report = validate_model(m);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].path, "m/i1/A/t1");
}

TEST(ValidateModel, EmptyInteractionAndGroupSeparator) {
  auto m = small_model();
  m.interactions.push_back({"i2", {}});
  m.interactions[0].components[1].tasks[0].id = "t3+t4";
  EXPECT_EQ(validate_model(m).size(), 2u);
}

TEST(ValidateModel, RepeatedIdenticalTaskAcrossInteractions) {
  auto m = small_model();
  m.interactions.push_back({"i2", {{"B", {{"t3", TaskClass::functional, ""}}}}});
  EXPECT_EQ(validate_model(m).size(), 1u);
  // Same component and task id with a different definition is allowed.
  m.interactions[1].components[0].tasks[0].description = "another role";
  EXPECT_TRUE(validate_model(m).empty());
}

TEST(ClassifyTasks, PartitionsEveryComponent) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    ComponentSpec c{"c", {}, ComplexityClass::O1};
    const std::size_t n = rng() % 20;
    std::size_t security = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool sec = rng() % 2;
      security += sec;
      c.tasks.push_back({"t" + std::to_string(i), sec ? TaskClass::security_related : TaskClass::functional, ""});
    }
    auto census = classify_tasks(c);
    ASSERT_EQ(census.functional + census.security, n);
    ASSERT_EQ(census.security, security);
  }
}

TEST(ClassifyTasks, ClosedLoopComponents) {
  auto m = closed_loop_model(UseCase::UC1);
  std::size_t security = 0, functional = 0;
  for (const auto& c : m.interactions[0].components) {
    auto census = classify_tasks(c);
    security += census.security;
    functional += census.functional;
  }
  EXPECT_EQ(security, 2u);
  EXPECT_EQ(functional, 9u);
}
