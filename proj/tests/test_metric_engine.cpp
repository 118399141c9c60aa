#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "secucost/metric_engine.hpp"

using namespace secucost;

TEST(Difference, WorkedExampleDurations) {
  EXPECT_DOUBLE_EQ(compute_difference(0.0, 10.0), 10.0);
  EXPECT_DOUBLE_EQ(compute_difference(10.0, 30.0), 20.0);
}

TEST(Difference, ZeroDuration) { EXPECT_EQ(compute_difference(5.0, 5.0), 0.0); }

TEST(Difference, NegativeDurationThrows) {
  EXPECT_THROW(compute_difference(10.0, 9.0), negative_duration_error);
}

TEST(Difference, Telescopes) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0.0, 1000.0);
  for (int i = 0; i < 1000; ++i) {
    double v[3] = {d(rng), d(rng), d(rng)};
    std::sort(v, v + 3);
    EXPECT_NEAR(compute_difference(v[0], v[1]) + compute_difference(v[1], v[2]), compute_difference(v[0], v[2]),
                1e-12 * std::max(1.0, v[2]));
  }
}

// The published figure for these samples is 1.825, but the eight values sum
// to 14.9, not 14.6. The pooled formula gives 14.9 / 8.
TEST(SampleMean, WorkedExamplePooledMean) {
  std::vector<std::vector<double>> cpu = {{1.5, 2.0, 1.0}, {2.3, 2.1, 1.8, 2.7, 1.5}};
  EXPECT_NEAR(compute_sample_mean(cpu), 1.8625, 1e-12);
}

TEST(SampleMean, IsPooledNotMeanOfMeans) {
  std::vector<std::vector<double>> lists = {{0.0}, {10.0, 10.0, 10.0}};
  EXPECT_DOUBLE_EQ(compute_sample_mean(lists), 7.5);  // mean of means would be 5
}

TEST(SampleMean, SingleSample) {
  std::vector<std::vector<double>> one = {{7.0}};
  EXPECT_EQ(compute_sample_mean(one), 7.0);
}

TEST(SampleMean, EmptyListsContributeNothing) {
  std::vector<std::vector<double>> lists = {{}, {4.0, 6.0}, {}};
  EXPECT_DOUBLE_EQ(compute_sample_mean(lists), 5.0);
}

TEST(SampleMean, ZeroSamplesThrows) {
  std::vector<std::vector<double>> none = {{}, {}};
  EXPECT_THROW(compute_sample_mean(none), empty_samples_error);
  std::vector<std::vector<double>> empty;
  EXPECT_THROW(compute_sample_mean(empty), empty_samples_error);
}

TEST(SampleMean, MatchesFlatConcatenationOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::uniform_int_distribution<int> size(0, 12);
  std::vector<std::vector<double>> lists(100);
  for (auto& l : lists) {
    l.resize(size(rng));
    for (auto& v : l) v = value(rng);
  }
  lists[0].push_back(1.0);
  EXPECT_NEAR(compute_sample_mean(lists), static_cast<double>(oracle::pooled_mean(lists)), 1e-12);
}

TEST(SampleMean, InvariantUnderRepartition) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> flat(1 + rng() % 40);
    for (auto& v : flat) v = value(rng);
    std::vector<std::vector<double>> parts(1 + rng() % 6);
    for (double v : flat) parts[rng() % parts.size()].push_back(v);
    std::vector<std::vector<double>> single = {flat};
    EXPECT_NEAR(compute_sample_mean(parts), compute_sample_mean(single), 1e-12);
  }
}

TEST(OverallResult, WorkedExamplePower) {
  EXPECT_NEAR(compute_overall_result(0.5, ms_to_seconds(10.0)), 0.005, 1e-15);
  EXPECT_NEAR(compute_overall_result(0.5, ms_to_seconds(20.0)), 0.010, 1e-15);
}

TEST(OverallResult, ZeroRate) { EXPECT_EQ(compute_overall_result(0.0, 5.0), 0.0); }

TEST(OverallResult, NegativeInputsThrow) {
  EXPECT_THROW(compute_overall_result(-1.0, 1.0), domain_error);
  EXPECT_THROW(compute_overall_result(1.0, -1.0), domain_error);
}

TEST(OverallResult, Bilinear) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(0.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    double r = d(rng), t = d(rng);
    double base = compute_overall_result(r, t);
    EXPECT_NEAR(compute_overall_result(2 * r, t), 2 * base, 1e-12 * std::max(1.0, base));
    EXPECT_NEAR(compute_overall_result(r, 2 * t), 2 * base, 1e-12 * std::max(1.0, base));
  }
}

TEST(Complexity, TableRanks) {
  EXPECT_EQ(complexity_constant(ComplexityClass::ON).rank, 2);
  EXPECT_EQ(complexity_constant(ComplexityClass::O1).rank, 0);
}

TEST(Complexity, SortingYieldsChainOrder) {
  std::vector<ComplexityClass> shuffled(std::begin(kAllComplexityClasses), std::end(kAllComplexityClasses));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<ComplexityConstant> constants;
    for (auto c : shuffled) constants.push_back(complexity_constant(c));
    std::sort(constants.begin(), constants.end());
    for (int i = 0; i < 7; ++i) {
      ASSERT_EQ(constants[i].rank, i);
      ASSERT_EQ(constants[i].complexity_class, kAllComplexityClasses[i]);
    }
  }
}

TEST(RawValue, DispatchesOnPayload) {
  EXPECT_DOUBLE_EQ(compute_raw_value(DifferencePayload{10.0, 30.0}), 20.0);
  EXPECT_DOUBLE_EQ(compute_raw_value(SamplesPayload{{1.0, 3.0}}), 2.0);
  EXPECT_DOUBLE_EQ(compute_raw_value(OverallPayload{0.5, 0.02}), 0.01);
  EXPECT_EQ(payload_metric_type(SamplesPayload{}), MetricType::MT2);
}
