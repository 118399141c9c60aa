#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "secucost/aggregation.hpp"
#include "worked_example.hpp"

using namespace secucost;

namespace {

const MetricCensus kOnePerType = {{MetricType::MT1, 1}, {MetricType::MT2, 1}, {MetricType::MT3, 1}};
const std::map<MetricType, double> kThirds = {
    {MetricType::MT1, 1.0 / 3.0}, {MetricType::MT2, 1.0 / 3.0}, {MetricType::MT3, 1.0 / 3.0}};

std::vector<MeasurementRecord> random_records(std::mt19937_64& rng, std::size_t n) {
  std::vector<MeasurementRecord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(oracle::random_record(rng, static_cast<int>(i)));
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

}  // namespace

TEST(Aggregate, WorkedExampleSecurityCosts) {
  auto records = worked_example::records();
  auto costs = aggregate_costs(records);
  // 10 ms, 20 ms, 1.8625 %, 0.005 mWs, 0.010 mWs, each weighted 1/3
  EXPECT_NEAR(costs.security_costs, (0.01 + 0.02 + 0.018625 + 0.0005 + 0.001) / 3.0, 1e-12);
  EXPECT_EQ(costs.functional_costs, 0.0);
  EXPECT_NEAR(costs.total_costs, costs.security_costs, 1e-15);
}

TEST(Aggregate, EmptyInput) {
  std::vector<MeasurementRecord> none;
  auto c = aggregate_costs(none, uniform_census_weights(kOnePerType));
  EXPECT_EQ(c.functional_costs, 0.0);
  EXPECT_EQ(c.security_costs, 0.0);
  EXPECT_EQ(c.total_costs, 0.0);
}

TEST(Aggregate, MatchesBruteForceOracle) {
  std::mt19937_64 rng(314);
  auto records = random_records(rng, 200);
  auto c = aggregate_costs(records, uniform_census_weights(kOnePerType));
  auto o = oracle::brute_force_costs(records, kThirds);
  EXPECT_NEAR(c.functional_costs, static_cast<double>(o.functional), 1e-9);
  EXPECT_NEAR(c.security_costs, static_cast<double>(o.security), 1e-9);
}

TEST(Aggregate, OutOfBoundsCarriesCoordinates) {
  auto records = worked_example::records();
  records[0].raw_value = 2000.0;
  try {
    aggregate_costs(records);
    FAIL();
  } catch (const out_of_bounds_error& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("run=example"), std::string::npos);
    EXPECT_NE(what.find("task=s1"), std::string::npos);
    EXPECT_NE(what.find("metric=duration"), std::string::npos);
  }
}

TEST(AggregateProperties, PermutationInvariance) {
  std::mt19937_64 rng(1);
  auto weights = uniform_census_weights(kOnePerType);
  for (int trial = 0; trial < 1000; ++trial) {
    auto records = random_records(rng, 1 + rng() % 60);
    auto base = aggregate_costs(records, weights);
    std::shuffle(records.begin(), records.end(), rng);
    auto shuffled = aggregate_costs(records, weights);
    ASSERT_LE(rel(base.functional_costs, shuffled.functional_costs), 1e-12);
    ASSERT_LE(rel(base.security_costs, shuffled.security_costs), 1e-12);
  }
}

TEST(AggregateProperties, Additivity) {
  std::mt19937_64 rng(2);
  auto weights = uniform_census_weights(kOnePerType);
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = random_records(rng, rng() % 40);
    auto b = random_records(rng, rng() % 40);
    auto joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    auto sum = aggregate_costs(a, weights) + aggregate_costs(b, weights);
    auto whole = aggregate_costs(joined, weights);
    ASSERT_LE(rel(sum.functional_costs, whole.functional_costs), 1e-12);
    ASSERT_LE(rel(sum.security_costs, whole.security_costs), 1e-12);
    ASSERT_LE(rel(sum.total_costs, whole.total_costs), 1e-12);
  }
}

TEST(AggregateProperties, ClassificationPartition) {
  std::mt19937_64 rng(3);
  auto weights = uniform_census_weights(kOnePerType);
  for (int trial = 0; trial < 1000; ++trial) {
    auto records = random_records(rng, 1 + rng() % 50);
    auto c = aggregate_costs(records, weights);
    long double all = 0;
    for (const auto& r : records)
      all += (static_cast<long double>(r.raw_value) - r.metric.min_bound) / (r.metric.max_bound - r.metric.min_bound) / 3.0L;
    ASSERT_NEAR(c.functional_costs + c.security_costs, static_cast<double>(all), 1e-9);
    ASSERT_LE(rel(total_costs(c), c.total_costs), 1e-12);
    ASSERT_GE(c.functional_costs, 0.0);
    ASSERT_GE(c.security_costs, 0.0);
  }
}

TEST(AggregateProperties, Homogeneity) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> k_pick(0.1, 10.0);
  auto weights = uniform_census_weights(kOnePerType);
  for (int trial = 0; trial < 1000; ++trial) {
    auto records = random_records(rng, 1 + rng() % 40);
    const double k = k_pick(rng);
    WeightSource scaled = [&](const MeasurementRecord& r) { return k * weights(r); };
    auto base = aggregate_costs(records, weights);
    auto c = aggregate_costs(records, scaled);
    ASSERT_LE(rel(c.functional_costs, k * base.functional_costs), 1e-12);
    ASSERT_LE(rel(c.security_costs, k * base.security_costs), 1e-12);
  }
}

TEST(TotalCosts, FieldSum) {
  CostBreakdown b;
  b.security_costs = 0.0165833333333333;
  EXPECT_DOUBLE_EQ(total_costs(b), 0.0165833333333333);
  EXPECT_EQ(total_costs(CostBreakdown{}), 0.0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    CostBreakdown r{d(rng), d(rng), 0.0, {}};
    EXPECT_EQ(total_costs(r), r.functional_costs + r.security_costs);
  }
}

TEST(PerTaskCensus, MixedMetricSetsUsePerTaskWeights) {
  auto records = worked_example::records();
  // s1 additionally measured by a second MT1 metric: census {MT1:2, MT2:1, MT3:1}.
  auto extra = records[0];
  extra.metric.name = "duration-2";
  records.push_back(extra);
  PerTaskCensus census(records);
  EXPECT_DOUBLE_EQ(census(records[0]), 0.5);   // s1, MT1
  EXPECT_DOUBLE_EQ(census(records[1]), 1.0 / 3.0);  // s2, MT1
  EXPECT_DOUBLE_EQ(census(records[3]), 0.25);  // s1, MT3
  // grouped record: mean of s1 (0.25) and s2 (1/3)
  EXPECT_DOUBLE_EQ(census(records[2]), (0.25 + 1.0 / 3.0) / 2.0);
}

TEST(Statistics, AllZero) {
  std::vector<double> z(4, 0.0);
  auto s = workload_statistics(z);
  EXPECT_EQ(s.min, 0.0);
  EXPECT_EQ(s.max, 0.0);
  EXPECT_EQ(s.median, 0.0);
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_EQ(s.std_dev, 0.0);
  EXPECT_EQ(s.std_err, 0.0);
  EXPECT_EQ(s.sum, 0.0);
}

TEST(Statistics, OneToFour) {
  std::vector<double> v = {4.0, 1.0, 3.0, 2.0};
  auto s = workload_statistics(v);
  EXPECT_EQ(s.median, 2.5);
  EXPECT_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std_dev, 1.2909944487358056, 1e-12);  // sqrt(5/3)
  EXPECT_NEAR(s.std_err, 0.6454972243679028, 1e-12);
  EXPECT_EQ(s.sum, 10.0);
  EXPECT_EQ(s.n, 4u);
}

TEST(Statistics, PopulationDeviationIsSelectable) {
  std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  EXPECT_NEAR(workload_statistics(v, StdDevKind::population).std_dev, std::sqrt(1.25), 1e-12);
}

TEST(Statistics, Singleton) {
  std::vector<double> v = {5.0};
  auto s = workload_statistics(v);
  EXPECT_EQ(s.min, 5.0);
  EXPECT_EQ(s.max, 5.0);
  EXPECT_EQ(s.median, 5.0);
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.sum, 5.0);
  EXPECT_EQ(s.std_dev, 0.0);
}

TEST(Statistics, EmptyThrows) {
  std::vector<double> none;
  EXPECT_THROW(workload_statistics(none), domain_error);
}

TEST(StatisticsProperties, OrderingAndStdErr) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d(0.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(1 + rng() % 30);
    for (auto& x : v) x = d(rng);
    auto s = workload_statistics(v);
    ASSERT_LE(s.min, s.median);
    ASSERT_LE(s.median, s.max);
    ASSERT_NEAR(s.std_err, s.std_dev / std::sqrt(static_cast<double>(s.n)), 1e-15);
  }
}

TEST(SecuritySummary, UseCaseListings) {
  auto uc1 = extract_security_summary(53.92297, 53.51435, 17.61541, ComplexityClass::ON);
  EXPECT_NEAR(uc1.combined, 18.02403, 5e-6);
  EXPECT_NEAR(uc1.protocol_delta, 0.40862, 5e-6);
  auto uc2 = extract_security_summary(36.15943, 31.57160, 10.97640, ComplexityClass::ON);
  EXPECT_NEAR(uc2.combined, 15.56423, 5e-6);
  EXPECT_EQ(uc2.complexity_note, ComplexityClass::ON);
}

TEST(SecuritySummary, ZeroDeltaAndNegativeDelta) {
  auto s = extract_security_summary(3.0, 3.0, 1.25, ComplexityClass::O1);
  EXPECT_EQ(s.combined, 1.25);
  auto neg = extract_security_summary(1.0, 2.0, 0.5, ComplexityClass::O1);
  EXPECT_EQ(neg.protocol_delta, -1.0);
  EXPECT_EQ(neg.combined, -0.5);
}
