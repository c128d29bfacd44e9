#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "floodrisk/error.hpp"
#include "floodrisk/risk.hpp"

using namespace floodrisk;
using namespace floodrisk::risk;

namespace {

TailModel fixture_model() {
  TailModel m;
  m.gpd = {26.740986, -0.3081737, 17.19};
  m.tail_prob = 28.0 / 94.0;
  m.rate = 33.0 / 13.0;
  return m;
}

}  // namespace

// Frozen from scipy.stats.genpareto.isf and quad integration of the survival
// function above VaR.
TEST(Risk, VarCvarOracle) {
  const auto m = fixture_model();
  const std::vector<std::tuple<double, double, double>> table{
      {0.85, 33.72561639527673, 50.27169426990235},  {0.90, 41.975790529794764, 56.57832934023906},
      {0.95, 53.898085232251844, 65.69202326517316}, {0.975, 63.527287849431985, 73.05282146588094},
      {0.99, 73.47475751497662, 80.65691078944518}};
  for (const auto& [q, var, cv] : table) {
    EXPECT_NEAR(value_at_risk(q, m), var, 1e-9) << q;
    EXPECT_NEAR(cvar(q, m), cv, 1e-7) << q;
  }
}

TEST(Risk, VarInvertsExceedProbability) {
  const auto m = fixture_model();
  for (double q : {0.75, 0.8, 0.9, 0.999}) EXPECT_NEAR(exceed_prob(value_at_risk(q, m), m), 1.0 - q, 1e-12);
  EXPECT_NEAR(return_level(100.0, m), value_at_risk(0.99, m), 1e-9);
  EXPECT_THROW(value_at_risk(0.5, m), DomainError);
  EXPECT_NEAR(value_at_risk(1.0 - m.tail_prob, m), m.gpd.threshold, 1e-12);
}

TEST(Risk, CvarGevFormMatchesScaleForm) {
  auto m = fixture_model();
  const double span = 94.0 / 365.25;
  const auto gev = gpd_gev_link(m.gpd, 28.0, span);
  for (double q : {0.85, 0.95, 0.99}) EXPECT_NEAR(cvar(q, m, gev), cvar(q, m), 1e-9);
  EXPECT_NEAR(expected_annual_loss(m, gev), expected_annual_loss(m), 1e-9);
}

TEST(Risk, ExpectedAnnualLossOracle) {
  EXPECT_NEAR(expected_annual_loss(fixture_model()), 95.5260247872517, 1e-8);
}

TEST(Risk, AnnualValueAtRisk) {
  // root of exp(-rate * S(x)) = 0.9 by brentq
  EXPECT_NEAR(annual_value_at_risk(0.9, fixture_model()), 71.41485526094174, 1e-7);
  auto m = fixture_model();
  m.rate = 0.0;
  EXPECT_THROW(annual_value_at_risk(0.9, m), DomainError);
}

TEST(Risk, ContinuousThroughZeroShape) {
  auto m = fixture_model();
  m.gpd.shape = 0.0;
  const double v0 = value_at_risk(0.99, m), c0 = cvar(0.99, m);
  EXPECT_NEAR(c0 - v0, m.gpd.scale, 1e-9);
  for (double eps : {1e-5, -1e-5}) {
    m.gpd.shape = eps;
    EXPECT_NEAR(value_at_risk(0.99, m), v0, 1e-2);
    EXPECT_NEAR(cvar(0.99, m), c0, 1e-2);
  }
}

TEST(Risk, SimulationAgreesWithClosedForms) {
  TailModel m;
  m.gpd = {5.0, 0.2, 10.0};
  m.tail_prob = 1.0;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = 2000000;
  std::vector<double> x(n);
  for (auto& v : x) v = 10.0 + gpd_excess_quantile_sf(1.0 - unif(rng), m.gpd);
  const double var = value_at_risk(0.95, m);
  double sum = 0.0, sum2 = 0.0;
  long above = 0;
  for (double v : x)
    if (v > var) {
      sum += v;
      sum2 += v * v;
      ++above;
    }
  const double mean = sum / above;
  const double se = std::sqrt((sum2 / above - mean * mean) / above);
  EXPECT_NEAR(static_cast<double>(above) / n, 0.05, 4.0 * std::sqrt(0.05 * 0.95 / n));
  EXPECT_NEAR(mean, cvar(0.95, m), 4.0 * se);
}

TEST(Risk, HeavyTailCvarIsUndefined) {
  auto m = fixture_model();
  m.gpd.shape = 1.2;
  EXPECT_THROW(cvar(0.99, m), DomainError);
  EXPECT_THROW(expected_annual_loss(m), DomainError);
}

TEST(Risk, BacktestCounts) {
  std::vector<double> sample{1.0, 2.0, 3.0};
  std::vector<std::pair<double, double>> measures{{0.5, 2.0}, {0.1, 0.0}, {0.01, 3.0}};
  const auto r = backtest_spillover(sample, measures);
  EXPECT_EQ(r[0].count, 1);
  EXPECT_EQ(r[0].theoretical_count, 2);
  EXPECT_EQ(r[1].count, 3);
  EXPECT_EQ(r[2].count, 0);
  EXPECT_NEAR(r[0].rate, 1.0 / 3.0, 1e-15);
}

TEST(Risk, TheoreticalCountsRound) {
  std::vector<double> sample(94, 0.0);
  std::vector<std::pair<double, double>> measures{{0.01, 1}, {0.025, 1}, {0.05, 1}, {0.10, 1}, {0.15, 1}};
  const auto r = backtest_spillover(sample, measures);
  const std::vector<long> expected{1, 2, 5, 9, 14};
  for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i].theoretical_count, expected[i]);
}

TEST(Risk, LayersPartitionTheLine) {
  std::vector<double> bounds{30.0, 55.0, 65.0};
  const auto layers = layers_from_boundaries(bounds);
  ASSERT_EQ(layers.size(), 4u);
  EXPECT_EQ(layers[0].taker, Taker::Insurer);
  EXPECT_EQ(layers[1].taker, Taker::CRFCIF);
  EXPECT_EQ(layers[2].taker, Taker::Reinsurance);
  EXPECT_EQ(layers[3].taker, Taker::CatBond);
  EXPECT_DOUBLE_EQ(layers[0].lower, 0.0);
  for (std::size_t i = 1; i < layers.size(); ++i) EXPECT_DOUBLE_EQ(layers[i].lower, layers[i - 1].upper);
  EXPECT_TRUE(std::isinf(layers.back().upper));

  std::vector<double> two{30.0, 55.0};
  const auto short_stack = layers_from_boundaries(two);
  EXPECT_EQ(short_stack.back().taker, Taker::CatBond);
  EXPECT_EQ(short_stack[1].taker, Taker::CRFCIF);

  std::vector<double> bad{30.0, 20.0};
  EXPECT_THROW(layers_from_boundaries(bad), DomainError);
  std::vector<double> four{1, 2, 3, 4};
  EXPECT_THROW(layers_from_boundaries(four), DomainError);
}

TEST(Risk, CompensationTableBoundaries) {
  const auto m = fixture_model();
  std::vector<double> levels{0.85, 0.90, 0.95, 0.975};
  const auto t = build_compensation_table(m, levels);
  ASSERT_EQ(t.layers.size(), 4u);
  EXPECT_NEAR(t.layers[0].upper, value_at_risk(0.85, m), 1e-12);
  EXPECT_NEAR(t.layers[1].upper, cvar(0.90, m), 1e-12);
  EXPECT_NEAR(t.layers[2].upper, cvar(0.95, m), 1e-12);
  std::vector<double> unsorted{0.9, 0.85};
  EXPECT_THROW(build_compensation_table(m, unsorted), DomainError);
}
